#include "zonocover/covering.hpp"

#include "simplex.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <stdexcept>

namespace zonocover {

namespace {

RatVec type_point(int level, const std::vector<std::uint32_t>& vtype) {
    Int den = int_pow2(static_cast<unsigned long>(level));
    RatVec c(vtype.size());
    for (std::size_t j = 0; j < vtype.size(); ++j) c[j] = make_rat(Int(vtype[j]), den);
    return c;
}

std::int64_t to_i64(const Int& v) {
    if (!v.fits_slong_p()) throw std::overflow_error("displacement out of range");
    return v.get_si();
}

/// rhs - a*c for rational point c.
RatVec shifted_rhs(const IntMatrix& a, const RatVec& rhs, const RatVec& c) {
    RatVec out(rhs);
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) out[i] -= Rat(a(i, j)) * c[j];
    return out;
}

/// Subtracts (a_i)_{>=0} * eps from each row's rhs (the tightening that
/// turns point membership into containment of c + [0, eps)^d).
void subtract_eps(const IntMatrix& a, RatVec& rhs, const Rat& eps) {
    for (std::size_t i = 0; i < a.rows(); ++i) {
        Int pos(0);
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (a(i, j) > 0) pos += a(i, j);
        rhs[i] -= Rat(pos) * eps;
    }
}

bool integer_point_satisfies(const IntMatrix& a, const RatVec& rhs, const std::vector<Int>& x) {
    for (std::size_t i = 0; i < a.rows(); ++i) {
        Rat acc(0);
        for (std::size_t j = 0; j < a.cols(); ++j) acc += Rat(a(i, j) * x[j]);
        if (acc > rhs[i]) return false;
    }
    return true;
}

/// Integer candidates near target (componentwise floor/ceil combinations).
std::vector<std::vector<Int>> probe_candidates(const RatVec& target) {
    const std::size_t d = target.size();
    std::vector<Int> fl(d);
    std::vector<bool> exact(d);
    for (std::size_t j = 0; j < d; ++j) {
        fl[j] = rat_floor(target[j]);
        exact[j] = is_integer(target[j]);
    }
    std::vector<std::vector<Int>> out;
    const std::size_t combos = std::size_t(1) << d;
    for (std::size_t mask = 0; mask < combos; ++mask) {
        bool skip = false;
        std::vector<Int> c(d);
        for (std::size_t j = 0; j < d; ++j) {
            bool up = (mask >> j) & 1;
            if (up && exact[j]) { skip = true; break; }
            c[j] = up ? Int(fl[j] + 1) : fl[j];
        }
        if (!skip) out.push_back(std::move(c));
    }
    return out;
}

FeasibilityProblem as_problem(const IntMatrix& a, const RatVec& rhs) {
    return FeasibilityProblem{to_rational(a), rhs, std::vector<char>(a.cols(), 1)};
}

}  // namespace

DilatedPolytope dilate(const HPolytope& p, const Rat& lambda) {
    DilatedPolytope out{p.a, RatVec(p.rows())};
    for (std::size_t i = 0; i < p.rows(); ++i) out.rhs[i] = lambda * Rat(p.b[i]);
    return out;
}

Int denominator_bound(const HPolytope& p) {
    const std::size_t m = p.rows(), d = p.dim();
    if (m < d + 1) throw std::invalid_argument("denominator_bound: too few rows");
    IntMatrix ab(m, d + 1);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < d; ++j) ab(i, j) = p.a(i, j);
        ab(i, d) = p.b[i];
    }
    Int best(0);
    std::vector<std::size_t> idx(d + 1);
    // iterate over all (d+1)-subsets of rows
    for (std::size_t j = 0; j <= d; ++j) idx[j] = j;
    while (true) {
        IntMatrix sub(d + 1, d + 1);
        for (std::size_t r = 0; r <= d; ++r)
            for (std::size_t c = 0; c <= d; ++c) sub(r, c) = ab(idx[r], c);
        Int dd = abs(det(sub));
        if (dd > best) best = dd;
        std::size_t j = d + 1;
        while (j-- > 0) {
            if (idx[j] + (d + 1 - j) < m) {
                ++idx[j];
                for (std::size_t k = j + 1; k <= d; ++k) idx[k] = idx[k - 1] + 1;
                break;
            }
            if (j == 0) return best < 1 ? Int(1) : best;
        }
    }
}

Int denominator_bound_compact(const HPolytope& p, bool include_rhs) {
    const std::size_t m = p.rows(), d = p.dim();
    const std::size_t w = include_rhs ? d + 1 : d;
    IntMatrix mat(m, w);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < d; ++j) mat(i, j) = p.a(i, j);
        if (include_rhs) mat(i, d) = p.b[i];
    }
    IntMatrix gram = mat.transposed() * mat;
    Int g = det(gram);
    if (g < 0) throw std::logic_error("denominator_bound_compact: negative Gram determinant");
    Int r = isqrt_ceil(g);
    return r < 1 ? Int(1) : r;
}

std::optional<std::vector<std::int64_t>> voxel_fits(const DilatedPolytope& pplus, int level,
                                                    const std::vector<std::uint32_t>& vtype,
                                                    SolverMode mode, const RatVec* hint) {
    const std::size_t d = pplus.a.cols();
    const Rat eps = make_rat(Int(1), int_pow2(static_cast<unsigned long>(level)));
    RatVec c = type_point(level, vtype);
    RatVec rhs = shifted_rhs(pplus.a, pplus.rhs, c);
    subtract_eps(pplus.a, rhs, eps);

    RatVec target(d);
    for (std::size_t j = 0; j < d; ++j)
        target[j] = (hint ? (*hint)[j] : Rat(0)) - c[j] - eps / 2;
    for (const auto& cand : probe_candidates(target)) {
        if (integer_point_satisfies(pplus.a, rhs, cand)) {
            std::vector<std::int64_t> out(d);
            for (std::size_t j = 0; j < d; ++j) out[j] = to_i64(cand[j]);
            return out;
        }
    }

    MipResult r = feasible_integer(as_problem(pplus.a, rhs), mode);
    if (!r.feasible()) return std::nullopt;
    std::vector<std::int64_t> out(d);
    for (std::size_t j = 0; j < d; ++j) {
        if (!is_integer(r.witness[j])) throw std::logic_error("voxel_fits: fractional witness");
        out[j] = to_i64(rat_num(r.witness[j]));
    }
    return out;
}

bool coset_avoids(const DilatedPolytope& pplus, const CosetPoint& c, SolverMode mode,
                  const RatVec* hint) {
    const std::size_t d = pplus.a.cols();
    RatVec cp = type_point(c.level, c.vtype);
    RatVec rhs = shifted_rhs(pplus.a, pplus.rhs, cp);

    RatVec target(d);
    for (std::size_t j = 0; j < d; ++j) target[j] = (hint ? (*hint)[j] : Rat(0)) - cp[j];
    for (const auto& cand : probe_candidates(target))
        if (integer_point_satisfies(pplus.a, rhs, cand)) return false;

    return !feasible_integer(as_problem(pplus.a, rhs), mode).feasible();
}

int DyadicDomain::depth() const {
    int m = 0;
    for (const auto& v : voxels) m = std::max(m, v.level);
    return m;
}

Rat DyadicDomain::total_measure(std::size_t dim) const {
    Rat total(0);
    for (const auto& v : voxels)
        total += make_rat(Int(1), int_pow2(static_cast<unsigned long>(v.level) * dim));
    return total;
}

bool domain_is_full_subtree(const DyadicDomain& domain, std::size_t dim) {
    if (domain.voxels.empty()) return false;
    using Key = std::pair<int, std::vector<std::uint32_t>>;
    std::set<Key> leaves;
    for (const auto& v : domain.voxels) {
        if (v.vtype.size() != dim || v.disp.size() != dim) return false;
        if (!leaves.insert({v.level, v.vtype}).second) return false;  // duplicate type
    }
    if (domain.total_measure(dim) != 1) return false;
    // ancestors of every leaf
    std::set<Key> inner;
    for (const auto& [lev, ty] : leaves) {
        std::vector<std::uint32_t> t = ty;
        for (int l = lev; l-- > 0;) {
            for (auto& x : t) x >>= 1;
            if (leaves.count({l, t})) return false;  // leaf above leaf
            if (!inner.insert({l, t}).second) break;
        }
    }
    // walk down from the root: every inner node must have all children
    // accounted for, every reached node must be a leaf or inner
    std::deque<Key> q{{0, std::vector<std::uint32_t>(dim, 0)}};
    while (!q.empty()) {
        Key k = q.front();
        q.pop_front();
        if (leaves.count(k)) continue;
        if (!inner.count(k)) return false;
        const std::size_t kids = std::size_t(1) << dim;
        for (std::size_t mask = 0; mask < kids; ++mask) {
            std::vector<std::uint32_t> child = k.second;
            for (std::size_t j = 0; j < dim; ++j)
                child[j] = (child[j] << 1) | (static_cast<std::uint32_t>(mask >> (dim - 1 - j)) & 1u);
            q.push_back({k.first + 1, child});
        }
    }
    return true;
}

namespace {

bool voxel_inside(const DilatedPolytope& body, const DyadicVoxel& v) {
    const std::size_t d = body.a.cols();
    const Rat eps = make_rat(Int(1), int_pow2(static_cast<unsigned long>(v.level)));
    RatVec base = type_point(v.level, v.vtype);
    for (std::size_t j = 0; j < d; ++j) base[j] += Rat(Int(v.disp[j]));
    const std::size_t corners = std::size_t(1) << d;
    for (std::size_t mask = 0; mask < corners; ++mask) {
        for (std::size_t i = 0; i < body.a.rows(); ++i) {
            Rat acc(0);
            for (std::size_t j = 0; j < d; ++j) {
                Rat x = base[j];
                if ((mask >> j) & 1) x += eps;
                acc += Rat(body.a(i, j)) * x;
            }
            if (acc > body.rhs[i]) return false;
        }
    }
    return true;
}

struct SearchSetup {
    DilatedPolytope body;  // lambda * p translated to the root-voxel center
    RatVec hint;           // the center sigma = (1/2, ..., 1/2)
    bool symmetric = false;
};

SearchSetup make_setup(const HPolytope& p, const Rat& lambda, const SearchOptions& opt) {
    for (const Int& bi : p.b)
        if (bi < 1) throw std::invalid_argument("dyadic search: polytope must have 0 interior (b >= 1)");
    SearchSetup s;
    s.body = dilate(p, lambda);
    // place the body's center at the center of the root voxel
    const Rat half = make_rat(1, 2);
    for (std::size_t i = 0; i < p.rows(); ++i) {
        Int rowsum(0);
        for (std::size_t j = 0; j < p.dim(); ++j) rowsum += p.a(i, j);
        s.body.rhs[i] += Rat(rowsum) * half;
    }
    s.hint.assign(p.dim(), half);
    switch (opt.symmetry) {
        case SymmetryMode::On: s.symmetric = true; break;
        case SymmetryMode::Off: s.symmetric = false; break;
        case SymmetryMode::Auto: s.symmetric = p.is_centrally_symmetric(); break;
    }
    return s;
}

CoveringVerdict dyadic_search(const HPolytope& p, const Rat& lambda, const Int& dbound,
                              const SearchOptions& opt) {
    const std::size_t d = p.dim();
    SearchSetup setup = make_setup(p, lambda, opt);

    CoveringVerdict verdict;
    verdict.dilation_used = lambda;
    verdict.denom_bound = dbound;

    std::deque<std::pair<int, std::vector<std::uint32_t>>> queue;
    queue.push_back({0, std::vector<std::uint32_t>(d, 0)});
    std::vector<DyadicVoxel> out;

    while (!queue.empty()) {
        auto [level, vtype] = queue.front();
        queue.pop_front();

        auto fit = voxel_fits(setup.body, level, vtype, opt.solver, &setup.hint);
        if (fit) {
            DyadicVoxel vox{level, vtype, *fit};
            if (!voxel_inside(setup.body, vox)) throw std::logic_error("dyadic search: emitted voxel fails re-check");
            out.push_back(vox);
            if (setup.symmetric && level > 0) {
                const std::uint32_t top = (1u << level) - 1;
                DyadicVoxel mirror = vox;
                for (std::size_t j = 0; j < d; ++j) {
                    mirror.vtype[j] = top - vox.vtype[j];
                    mirror.disp[j] = -vox.disp[j];
                }
                if (!voxel_inside(setup.body, mirror)) throw std::logic_error("dyadic search: mirror voxel fails re-check");
                out.push_back(mirror);
            }
            continue;
        }
        if (coset_avoids(setup.body, CosetPoint{level, vtype}, opt.solver, &setup.hint)) {
            verdict.kind = CoveringVerdict::Kind::Unbounded;
            verdict.witness = CosetPoint{level, vtype};
            return verdict;
        }
        const std::size_t kids = std::size_t(1) << d;
        for (std::size_t mask = 0; mask < kids; ++mask) {
            std::vector<std::uint32_t> child(d);
            bool upper_first_axis = (mask >> (d - 1)) & 1;
            if (setup.symmetric && level == 0 && upper_first_axis) continue;
            for (std::size_t j = 0; j < d; ++j)
                child[j] = (vtype[j] << 1) | (static_cast<std::uint32_t>(mask >> (d - 1 - j)) & 1u);
            queue.push_back({level + 1, child});
        }
    }

    std::sort(out.begin(), out.end(), [](const DyadicVoxel& a, const DyadicVoxel& b) {
        if (a.level != b.level) return a.level < b.level;
        return a.vtype < b.vtype;
    });
    verdict.kind = CoveringVerdict::Kind::Bounded;
    verdict.domain.voxels = std::move(out);
    return verdict;
}

void validate_decide_input(const HPolytope& p, const Rat& rho, const Int& dbound) {
    if (!(rho > 0)) throw std::invalid_argument("decide: rho must be positive");
    if (dbound < 1) throw std::invalid_argument("decide: denominator bound must be >= 1");
    if (p.rows() != p.b.size()) throw std::invalid_argument("decide: shape mismatch");
}

}  // namespace

CoveringVerdict decide_le(const HPolytope& p, const Rat& rho, const Int& dbound,
                          const SearchOptions& opt) {
    validate_decide_input(p, rho, dbound);
    Rat margin = make_rat(Int(1), 2 * rat_den(rho) * dbound);
    return dyadic_search(p, rho + margin, dbound, opt);
}

CoveringVerdict decide_ge(const HPolytope& p, const Rat& rho, const Int& dbound,
                          const SearchOptions& opt) {
    validate_decide_input(p, rho, dbound);
    Rat margin = make_rat(Int(1), 2 * rat_den(rho) * dbound);
    Rat lambda = rho - margin;
    if (!(lambda > 0)) throw std::invalid_argument("decide_ge: rho - margin must stay positive");
    return dyadic_search(p, lambda, dbound, opt);
}

Rat simplest_in_interval(const Rat& lo, const Rat& hi) {
    if (lo > hi) throw std::invalid_argument("simplest_in_interval: empty interval");
    if (lo < 0) throw std::invalid_argument("simplest_in_interval: negative endpoint");
    Int fl = rat_floor(lo);
    if (lo == Rat(fl)) return lo;
    if (hi >= Rat(fl + 1)) return Rat(fl + 1);
    // both endpoints strictly inside (fl, fl+1): recurse on the reciprocal
    Rat inner = simplest_in_interval(Rat(1) / (hi - Rat(fl)), Rat(1) / (lo - Rat(fl)));
    return Rat(fl) + Rat(1) / inner;
}

namespace {

struct MuLeaf {
    Rat beta;
    int level;
    std::vector<std::uint32_t> vtype;
    Rat alpha;
    std::vector<std::int64_t> disp;
};

struct MuLeafCmp {
    bool operator()(const MuLeaf& a, const MuLeaf& b) const {
        if (a.beta != b.beta) return a.beta > b.beta;
        if (a.level != b.level) return a.level < b.level;
        return a.vtype < b.vtype;
    }
};

/// Exact evaluator for the per-type bounds. Placements are scanned over a
/// box that provably contains every placement at least as good as the
/// rounded initial guess, so the minima are exact; this sidesteps a MIP
/// per tree node.
struct GaugeScan {
    const HPolytope& p;
    RatVec sigma_shift;  // A * (1/2,...,1/2) per row
    RatVec w_pos, w_neg; // axis suprema of x_j and -x_j over p

    explicit GaugeScan(const HPolytope& poly) : p(poly) {
        const std::size_t d = p.dim();
        sigma_shift.resize(p.rows());
        for (std::size_t i = 0; i < p.rows(); ++i) {
            Int rowsum(0);
            for (std::size_t j = 0; j < d; ++j) rowsum += p.a(i, j);
            sigma_shift[i] = make_rat(rowsum, Int(2));
        }
        RatMatrix aQ = to_rational(p.a);
        RatVec bQ = to_rational(p.b);
        w_pos.resize(d);
        w_neg.resize(d);
        for (std::size_t j = 0; j < d; ++j) {
            RatVec c(d, Rat(0));
            detail::Simplex<Rat> lp;
            c[j] = Rat(-1);  // maximize x_j
            auto mx = lp.minimize(aQ, bQ, c);
            c[j] = Rat(1);
            detail::Simplex<Rat> lp2;
            auto mn = lp2.minimize(aQ, bQ, c);
            if (mx.status != detail::LpStatus::Optimal || mn.status != detail::LpStatus::Optimal)
                throw std::invalid_argument("exact_mu: polytope must be bounded");
            w_pos[j] = -mx.objective;  // max of  x_j over p
            w_neg[j] = -mn.objective;  // max of -x_j over p
        }
    }

    /// max_i (a_i q - shift_i)/b_i clamped at 0: the dilation needed to
    /// place the object described by `shift` at integer offset q.
    Rat dilation_at(const RatVec& shift, const std::vector<Int>& q) const {
        Rat best(0);
        for (std::size_t i = 0; i < p.rows(); ++i) {
            Rat acc = -shift[i];
            for (std::size_t j = 0; j < p.dim(); ++j) acc += Rat(p.a(i, j) * q[j]);
            Rat need = acc / Rat(p.b[i]);
            if (need > best) best = need;
        }
        return best;
    }

    /// Minimize dilation_at over all integer placements. `lo_pt`/`hi_pt`
    /// bracket the object's extent relative to the placement (single point:
    /// both equal; voxel: base point and base + eps).
    std::pair<Rat, std::vector<Int>> minimize(const RatVec& shift, const RatVec& lo_pt,
                                              const RatVec& hi_pt) const {
        const std::size_t d = p.dim();
        const Rat half = make_rat(1, 2);
        std::vector<Int> q0(d);
        for (std::size_t j = 0; j < d; ++j) q0[j] = rat_round(half - (lo_pt[j] + hi_pt[j]) / 2);
        Rat f0 = dilation_at(shift, q0);
        std::vector<Int> lo(d), hi(d);
        for (std::size_t j = 0; j < d; ++j) {
            // any q with dilation <= f0 keeps the object inside f0*P + sigma
            lo[j] = rat_ceil(half - f0 * w_neg[j] - hi_pt[j]);
            hi[j] = rat_floor(half + f0 * w_pos[j] - lo_pt[j]);
            if (q0[j] < lo[j]) lo[j] = q0[j];
            if (q0[j] > hi[j]) hi[j] = q0[j];
        }
        Rat best = f0;
        std::vector<Int> best_q = q0;
        std::vector<Int> q = lo;
        while (true) {
            Rat val = dilation_at(shift, q);
            if (val < best || (val == best && q < best_q)) {
                best = val;
                best_q = q;
            }
            std::size_t j = d;
            bool done = true;
            while (j-- > 0) {
                if (q[j] < hi[j]) {
                    q[j] += 1;
                    for (std::size_t k = j + 1; k < d; ++k) q[k] = lo[k];
                    done = false;
                    break;
                }
                if (j == 0) break;
            }
            if (done) return {best, best_q};
        }
    }

    MuLeaf bounds_of(int level, const std::vector<std::uint32_t>& vtype) const {
        const std::size_t d = p.dim();
        const Rat eps = make_rat(Int(1), int_pow2(static_cast<unsigned long>(level)));
        RatVec c = type_point(level, vtype);

        // beta: cheapest placement of the whole voxel c + [0, eps]^d
        RatVec shift = shifted_rhs(p.a, sigma_shift, c);
        subtract_eps(p.a, shift, eps);
        RatVec hi_pt = c;
        for (Rat& x : hi_pt) x += eps;
        auto [beta, q] = minimize(shift, c, hi_pt);

        // alpha: cheapest covering of the center point
        RatVec center = c;
        for (Rat& x : center) x += eps / 2;
        auto [alpha, q2] = minimize(shifted_rhs(p.a, sigma_shift, center), center, center);

        MuLeaf leaf{beta, level, vtype, alpha, {}};
        leaf.disp.resize(d);
        for (std::size_t j = 0; j < d; ++j) leaf.disp[j] = to_i64(q[j]);
        return leaf;
    }
};

}  // namespace

ExactMuResult exact_mu(const HPolytope& p) {
    const std::size_t d = p.dim();
    for (const Int& bi : p.b)
        if (bi < 1) throw std::invalid_argument("exact_mu: polytope must have 0 interior (b >= 1)");
    const Int dbound = denominator_bound(p);
    const bool symmetric = p.is_centrally_symmetric();
    const GaugeScan scan(p);

    // In the symmetric case only the lexicographically smaller type of each
    // mirror pair is tracked; both bounds coincide on the pair.
    std::set<MuLeaf, MuLeafCmp> leaves;
    MuLeaf root = scan.bounds_of(0, std::vector<std::uint32_t>(d, 0));
    Rat alpha = root.alpha;
    RatVec alpha_center = type_point(1, std::vector<std::uint32_t>(d, 1));  // root center
    leaves.insert(std::move(root));

    for (long iter = 0; iter < 10000000; ++iter) {
        const Rat beta = leaves.begin()->beta;
        if (alpha > beta) throw std::logic_error("exact_mu: interval inverted");
        Rat rho = simplest_in_interval(alpha, beta);
        Rat tol = make_rat(Int(1), rat_den(rho) * dbound);
        if (rho - alpha < tol && beta - rho < tol) {
            ExactMuResult res;
            res.mu = rho;
            res.alpha = alpha;
            res.beta = beta;
            res.denom_bound = dbound;
            res.witness_center = alpha_center;
            for (const MuLeaf& l : leaves) {
                res.domain.voxels.push_back({l.level, l.vtype, l.disp});
                if (symmetric && l.level > 0) {
                    const std::uint32_t top = (1u << l.level) - 1;
                    DyadicVoxel mirror{l.level, l.vtype, l.disp};
                    for (std::size_t j = 0; j < d; ++j) {
                        mirror.vtype[j] = top - l.vtype[j];
                        mirror.disp[j] = -l.disp[j];
                    }
                    res.domain.voxels.push_back(std::move(mirror));
                }
            }
            std::sort(res.domain.voxels.begin(), res.domain.voxels.end(),
                      [](const DyadicVoxel& a, const DyadicVoxel& b) {
                          if (a.level != b.level) return a.level < b.level;
                          return a.vtype < b.vtype;
                      });
            return res;
        }
        MuLeaf split = *leaves.begin();
        leaves.erase(leaves.begin());
        const std::size_t kids = std::size_t(1) << d;
        for (std::size_t mask = 0; mask < kids; ++mask) {
            bool upper_first_axis = (mask >> (d - 1)) & 1;
            if (symmetric && split.level == 0 && upper_first_axis) continue;
            std::vector<std::uint32_t> child(d);
            for (std::size_t j = 0; j < d; ++j)
                child[j] = (split.vtype[j] << 1) | (static_cast<std::uint32_t>(mask >> (d - 1 - j)) & 1u);
            MuLeaf leaf = scan.bounds_of(split.level + 1, child);
            if (leaf.alpha > alpha) {
                alpha = leaf.alpha;
                alpha_center = type_point(leaf.level, leaf.vtype);
                for (Rat& x : alpha_center)
                    x += make_rat(Int(1), int_pow2(static_cast<unsigned long>(leaf.level) + 1));
            }
            leaves.insert(std::move(leaf));
        }
    }
    throw std::logic_error("exact_mu: iteration limit hit");
}

}  // namespace zonocover
