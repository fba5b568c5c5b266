#include "zonocover/zonotope.hpp"

#include <algorithm>
#include <stdexcept>

namespace zonocover {

bool VolumeVector::is_primitive() const {
    Int g(0);
    for (const Int& e : entries) g = int_gcd(g, e);
    return g == 1;
}

bool VolumeVector::is_strong() const {
    for (std::size_t i = 0; i < entries.size(); ++i)
        for (std::size_t j = i + 1; j < entries.size(); ++j)
            if (entries[i] == entries[j]) return false;
    return true;
}

bool HPolytope::is_centrally_symmetric() const {
    for (std::size_t i = 0; i < rows(); ++i) {
        bool found = false;
        for (std::size_t k = 0; k < rows() && !found; ++k) {
            if (b[k] != b[i]) continue;
            bool neg = true;
            for (std::size_t j = 0; j < dim(); ++j)
                if (a(k, j) != -a(i, j)) { neg = false; break; }
            found = neg;
        }
        if (!found) return false;
    }
    return true;
}

VolumeVector volume_vector(const Zonotope& z) {
    const std::size_t n = z.generator_count();
    if (n < 2 || z.dim() + 1 != n)
        throw std::invalid_argument("volume_vector: generators must be (n-1) x n");
    VolumeVector v;
    v.entries.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        Int d = det(z.generators.without_col(i));
        if (d == 0) throw std::domain_error("volume_vector: generators not in general position");
        v.entries.push_back(abs(d));
    }
    return v;
}

Zonotope generators_from_volume_vector(const VolumeVector& v, const Rat& delta) {
    const std::size_t n = v.size();
    if (n < 2) throw std::invalid_argument("generators_from_volume_vector: need n >= 2");
    for (const Int& e : v.entries)
        if (e <= 0) throw std::invalid_argument("generators_from_volume_vector: entries must be positive");
    if (!v.is_primitive())
        throw std::invalid_argument("generators_from_volume_vector: gcd of entries must be 1");

    // Seed: columns generate a zonotope whose volume vector is a multiple of v.
    IntMatrix seed(n - 1, n, Int(0));
    for (std::size_t i = 0; i + 1 < n; ++i) {
        seed(i, i) = -v.entries[n - 1];
        seed(i, n - 1) = v.entries[i];
    }

    auto [h, u] = hnf_columns(seed);
    for (std::size_t r = 0; r + 1 < n; ++r)
        if (h(r, n - 1) != 0) throw std::logic_error("generators_from_volume_vector: HNF tail not zero");
    IntMatrix basis(n - 1, n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i)
        for (std::size_t j = 0; j + 1 < n; ++j) basis(i, j) = h(i, j);

    // Rebase the seed columns onto the lattice basis; entries are integral
    // because each column lies in the column lattice of the basis.
    RatMatrix basis_q = to_rational(basis);
    IntMatrix rebased(n - 1, n);
    for (std::size_t c = 0; c < n; ++c) {
        RatVec rhs(n - 1);
        for (std::size_t r = 0; r + 1 < n; ++r) rhs[r] = Rat(seed(r, c));
        RatVec x = solve_square(basis_q, rhs);
        for (std::size_t r = 0; r + 1 < n; ++r) {
            if (!is_integer(x[r])) throw std::logic_error("generators_from_volume_vector: non-lattice column");
            rebased(r, c) = rat_num(x[r]);
        }
    }

    Zonotope z{n == 2 ? rebased : lll_rows(rebased, delta)};
    VolumeVector back = volume_vector(z);
    if (back.entries != v.entries)
        throw std::logic_error("generators_from_volume_vector: round-trip mismatch");
    return z;
}

namespace {

/// Wedge functional of the d-1 columns listed in subset: the vector of
/// signed maximal minors, vanishing on their span.
IntVec wedge_normal(const IntMatrix& gen, const std::vector<std::size_t>& subset) {
    const std::size_t d = gen.rows();
    IntVec normal(d);
    if (d == 1) {
        normal[0] = 1;
        return normal;
    }
    for (std::size_t drop = 0; drop < d; ++drop) {
        IntMatrix minor(d - 1, d - 1);
        std::size_t rr = 0;
        for (std::size_t r = 0; r < d; ++r) {
            if (r == drop) continue;
            for (std::size_t c = 0; c < d - 1; ++c) minor(rr, c) = gen(r, subset[c]);
            ++rr;
        }
        Int m = det(minor);
        normal[drop] = (drop % 2 == 0) ? m : Int(-m);
    }
    return normal;
}

void subsets_rec(std::size_t n, std::size_t k, std::size_t start, std::vector<std::size_t>& cur,
                 std::vector<std::vector<std::size_t>>& out) {
    if (cur.size() == k) {
        out.push_back(cur);
        return;
    }
    for (std::size_t i = start; i < n; ++i) {
        cur.push_back(i);
        subsets_rec(n, k, i + 1, cur, out);
        cur.pop_back();
    }
}

std::vector<std::vector<std::size_t>> subsets(std::size_t n, std::size_t k) {
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> cur;
    subsets_rec(n, k, 0, cur, out);
    return out;
}

}  // namespace

HPolytope facet_inequalities(const Zonotope& z) {
    const std::size_t d = z.dim(), n = z.generator_count();
    std::vector<IntVec> rows;
    IntVec rhs;
    for (const auto& s : subsets(n, d - 1)) {
        IntVec normal = wedge_normal(z.generators, s);
        bool zero = true;
        for (const Int& x : normal)
            if (x != 0) { zero = false; break; }
        if (zero) continue;  // degenerate subset, no facet
        // b_S = 1/2 sum_i |normal . u_i|; scale the pair by 2 for integer data
        Int b2(0);
        for (std::size_t i = 0; i < n; ++i) {
            Int dot(0);
            for (std::size_t r = 0; r < d; ++r) dot += normal[r] * z.generators(r, i);
            b2 += abs(dot);
        }
        IntVec arow(d);
        for (std::size_t r = 0; r < d; ++r) arow[r] = 2 * normal[r];
        Int g = b2;
        for (const Int& x : arow) g = int_gcd(g, x);
        for (Int& x : arow) x /= g;
        Int bb = b2 / g;
        rows.push_back(arow);
        rhs.push_back(bb);
        IntVec neg(d);
        for (std::size_t r = 0; r < d; ++r) neg[r] = -arow[r];
        rows.push_back(neg);
        rhs.push_back(bb);
    }
    if (rows.empty()) throw std::domain_error("facet_inequalities: no facets");
    HPolytope p{IntMatrix(rows.size(), d), rhs};
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < d; ++j) p.a(i, j) = rows[i][j];
    return p;
}

std::vector<int> check_sign_relation(const Zonotope& z) {
    const std::size_t n = z.generator_count();
    // The vector of alternating maximal minors spans the kernel of the
    // generator matrix; its signs are the sign vector up to a global flip.
    std::vector<int> signs(n);
    for (std::size_t i = 0; i < n; ++i) {
        Int m = det(z.generators.without_col(i));
        if (m == 0) throw std::domain_error("check_sign_relation: generators not in general position");
        int s = (m > 0) ? 1 : -1;
        if (i % 2 == 1) s = -s;
        signs[i] = s;
    }
    if (signs[0] < 0)
        for (int& s : signs) s = -s;

    // The relation must hold exactly.
    VolumeVector v = volume_vector(z);
    for (std::size_t r = 0; r < z.dim(); ++r) {
        Int acc(0);
        for (std::size_t i = 0; i < n; ++i) acc += Int(signs[i]) * v.entries[i] * z.generators(r, i);
        if (acc != 0) throw std::logic_error("check_sign_relation: relation failed");
    }
    return signs;
}

}  // namespace zonocover
