#pragma once

#include "zonocover/linalg.hpp"

#include <vector>

namespace zonocover {

/// Ordered tuple of positive integers identifying a lattice zonotope up to
/// unimodular equivalence (when primitive).
struct VolumeVector {
    IntVec entries;

    std::size_t size() const { return entries.size(); }
    bool is_primitive() const;
    /// All entries pairwise distinct.
    bool is_strong() const;
};

/// Lattice zonotope given by n integer generators spanning R^{n-1}, stored
/// as the columns of an (n-1) x n matrix. The geometric body used
/// throughout is the origin-symmetric translate (1/2) * sum [-u_i, u_i].
struct Zonotope {
    IntMatrix generators;

    std::size_t dim() const { return generators.rows(); }
    std::size_t generator_count() const { return generators.cols(); }
};

/// Rational polytope {x : a*x <= b} with integer data. Instances produced
/// by facet_inequalities are full-dimensional with 0 interior (all b > 0)
/// and centrally symmetric (rows closed under negation).
struct HPolytope {
    IntMatrix a;
    IntVec b;

    std::size_t rows() const { return a.rows(); }
    std::size_t dim() const { return a.cols(); }
    bool is_centrally_symmetric() const;
};

/// v_i = |det of all generators except column i|. Throws if some minor
/// vanishes (generators not in linear general position).
VolumeVector volume_vector(const Zonotope& z);

/// Builds a zonotope with the given primitive volume vector: seed matrix
/// from the vector, lattice basis via column HNF, then LLL conditioning of
/// the rows with the given delta. The result round-trips through
/// volume_vector exactly (verified internally).
Zonotope generators_from_volume_vector(const VolumeVector& v, const Rat& delta);

/// Facet description of the origin-centered zonotope. One +/- row pair per
/// (d-1)-subset of generators, scaled to integer data and reduced by the
/// gcd of each row (including the right-hand side).
HPolytope facet_inequalities(const Zonotope& z);

/// The sign vector s (s_1 = +1) with sum_i s_i * v_i * u_i = 0.
std::vector<int> check_sign_relation(const Zonotope& z);

}  // namespace zonocover
