#pragma once

#include "zonocover/ilp.hpp"
#include "zonocover/zonotope.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace zonocover {

/// Half-open cube disp + vtype/2^level + [0, 1/2^level)^d. The (level,
/// vtype) pair is the node of the infinite 2^d-ary dyadic tree; the
/// displacement selects the lattice translate.
struct DyadicVoxel {
    int level = 0;
    std::vector<std::uint32_t> vtype;
    std::vector<std::int64_t> disp;
};

/// Dyadic point vtype/2^level in [0,1)^d, identifying the coset
/// vtype/2^level + Z^d.
struct CosetPoint {
    int level = 0;
    std::vector<std::uint32_t> vtype;
};

/// Voxel list whose (level, vtype) pairs are the leaves of a full subtree
/// of the dyadic tree (a dyadic fundamental domain).
struct DyadicDomain {
    std::vector<DyadicVoxel> voxels;

    int depth() const;
    Rat total_measure(std::size_t dim) const;
};

/// Structural check: no duplicate types, types form the leaf set of a full
/// subtree containing the root, total measure 1.
bool domain_is_full_subtree(const DyadicDomain& domain, std::size_t dim);

struct CoveringVerdict {
    enum class Kind { Bounded, Unbounded };
    Kind kind = Kind::Unbounded;
    DyadicDomain domain;   // Bounded: fundamental domain inside the dilated body
    CosetPoint witness;    // Unbounded: coset missed by the dilated body
    Rat dilation_used;     // rho +/- 1/(2 s D)
    Int denom_bound;

    bool bounded() const { return kind == Kind::Bounded; }
};

enum class SymmetryMode { Auto, On, Off };

struct SearchOptions {
    SymmetryMode symmetry = SymmetryMode::Auto;
    SolverMode solver = SolverMode::Exact;
};

/// Integer-data polytope dilated by an exact rational factor (and possibly
/// translated): {x : a x <= rhs}.
struct DilatedPolytope {
    IntMatrix a;
    RatVec rhs;
};

DilatedPolytope dilate(const HPolytope& p, const Rat& lambda);

/// Denominator bound for the covering radius: max |det| over all
/// (d+1)-row submatrices of (a|b).
Int denominator_bound(const HPolytope& p);

/// Cheaper, weaker bound: ceil(sqrt(det(M^T M))) for M = (a|b), or M = a
/// alone when include_rhs is false (the b-free variant used by the
/// strict-first pass, where any positive margin is sound).
Int denominator_bound_compact(const HPolytope& p, bool include_rhs = true);

/// Integer placement p with p + vtype/2^level + [0,1/2^level)^d inside
/// pplus, or nullopt. `hint` (optional) is a point the placement should
/// sit near; candidates around it are tried before the solver.
std::optional<std::vector<std::int64_t>> voxel_fits(const DilatedPolytope& pplus, int level,
                                                    const std::vector<std::uint32_t>& vtype,
                                                    SolverMode mode = SolverMode::Exact,
                                                    const RatVec* hint = nullptr);

/// True iff pplus does not intersect c + Z^d (the margin-zero system is
/// exactly infeasible).
bool coset_avoids(const DilatedPolytope& pplus, const CosetPoint& c,
                  SolverMode mode = SolverMode::Exact, const RatVec* hint = nullptr);

/// Decide mu(p) <= rho: breadth-first search of the dyadic tree against
/// (rho + 1/(2 s dbound)) * p. Bounded => mu <= rho, Unbounded => mu > rho.
CoveringVerdict decide_le(const HPolytope& p, const Rat& rho, const Int& dbound,
                          const SearchOptions& opt = {});

/// Decide mu(p) >= rho via the shrunk body (rho - 1/(2 s dbound)) * p.
/// Bounded => mu < rho, Unbounded => mu >= rho (the latter only when
/// dbound is a valid denominator bound).
CoveringVerdict decide_ge(const HPolytope& p, const Rat& rho, const Int& dbound,
                          const SearchOptions& opt = {});

struct ExactMuResult {
    Rat mu;
    DyadicDomain domain;    // certifies mu <= beta
    RatVec witness_center;  // voxel-type center realizing alpha
    Rat alpha, beta;        // final enclosing interval
    Int denom_bound;
};

/// Exact covering radius by adaptive refinement: each leaf type carries
/// bounds alpha_V <= mu <= beta_V; the leaf with maximal beta_V is split
/// until the smallest-denominator rational in [alpha, beta] is the only
/// candidate left with denominator <= denominator_bound(p).
ExactMuResult exact_mu(const HPolytope& p);

/// Smallest-denominator rational in the closed interval [lo, hi]
/// (smallest numerator on ties). Requires 0 <= lo <= hi.
Rat simplest_in_interval(const Rat& lo, const Rat& hi);

}  // namespace zonocover
