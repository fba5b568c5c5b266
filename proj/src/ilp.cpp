#include "zonocover/ilp.hpp"

#include "simplex.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace zonocover {

namespace {

using detail::LpResult;
using detail::LpStatus;
using detail::Simplex;

constexpr long kNodeCap = 1000000;

/// LP over the base system plus branching bounds on single variables.
struct NodeLp {
    const RatMatrix& a;
    const RatVec& rhs;
    std::vector<std::pair<std::size_t, Int>> upper;  // x_j <= k
    std::vector<std::pair<std::size_t, Int>> lower;  // x_j >= k

    LpResult<Rat> solve(const RatVec& c) const {
        const std::size_t m = a.rows(), d = a.cols();
        const std::size_t total = m + upper.size() + lower.size();
        RatMatrix full(total, d, Rat(0));
        RatVec b(total);
        for (std::size_t i = 0; i < m; ++i) {
            for (std::size_t j = 0; j < d; ++j) full(i, j) = a(i, j);
            b[i] = rhs[i];
        }
        std::size_t r = m;
        for (const auto& [j, k] : upper) {
            full(r, j) = Rat(1);
            b[r] = Rat(k);
            ++r;
        }
        for (const auto& [j, k] : lower) {
            full(r, j) = Rat(-1);
            b[r] = Rat(-Int(k));
            ++r;
        }
        Simplex<Rat> lp;
        return lp.minimize(full, b, c);
    }
};

bool satisfies(const RatMatrix& a, const RatVec& rhs, const RatVec& x) {
    for (std::size_t i = 0; i < a.rows(); ++i) {
        Rat acc(0);
        for (std::size_t j = 0; j < a.cols(); ++j) acc += a(i, j) * x[j];
        if (acc > rhs[i]) return false;
    }
    return true;
}

/// Most-fractional flagged variable: maximal distance to the nearest
/// integer, ties by lowest index. Returns a.cols() when all integral.
std::size_t pick_branch_var(const RatVec& x, const std::vector<char>& integral) {
    std::size_t best = x.size();
    Rat best_score(0);
    for (std::size_t j = 0; j < x.size(); ++j) {
        if (!integral[j] || is_integer(x[j])) continue;
        Rat frac = x[j] - Rat(rat_floor(x[j]));
        Rat inv = Rat(1) - frac;
        Rat score = frac < inv ? frac : inv;
        if (best == x.size() || score > best_score) {
            best = j;
            best_score = score;
        }
    }
    return best;
}

RatVec rounded(const RatVec& x, const std::vector<char>& integral) {
    RatVec r = x;
    for (std::size_t j = 0; j < x.size(); ++j)
        if (integral[j]) r[j] = Rat(rat_round(x[j]));
    return r;
}

bool bb_feasible(NodeLp& node, const FeasibilityProblem& p, long& nodes, RatVec& out) {
    if (++nodes > kNodeCap)
        throw std::logic_error("feasible_integer: node limit hit (unbounded relaxation?)");
    RatVec zero(p.a.cols(), Rat(0));
    LpResult<Rat> lp = node.solve(zero);
    if (lp.status == LpStatus::Infeasible) return false;
    if (lp.status != LpStatus::Optimal)
        throw std::logic_error("feasible_integer: relaxation unbounded or stalled");

    bool all_flagged = std::all_of(p.integral.begin(), p.integral.end(), [](char f) { return f != 0; });
    if (all_flagged) {
        RatVec cand = rounded(lp.x, p.integral);
        if (satisfies(p.a, p.rhs, cand)) {
            out = cand;
            return true;
        }
    }
    std::size_t j = pick_branch_var(lp.x, p.integral);
    if (j == lp.x.size()) {
        out = lp.x;
        return true;
    }
    Int fl = rat_floor(lp.x[j]);
    node.upper.emplace_back(j, fl);
    bool ok = bb_feasible(node, p, nodes, out);
    node.upper.pop_back();
    if (ok) return true;
    node.lower.emplace_back(j, fl + 1);
    ok = bb_feasible(node, p, nodes, out);
    node.lower.pop_back();
    return ok;
}

MipResult feasible_exact(const FeasibilityProblem& p) {
    NodeLp node{p.a, p.rhs, {}, {}};
    long nodes = 0;
    RatVec out;
    MipResult r;
    if (bb_feasible(node, p, nodes, out)) {
        r.status = MipResult::Status::Feasible;
        r.witness = out;
    }
    return r;
}

MipResult feasible_bbox(const FeasibilityProblem& p) {
    const std::size_t d = p.a.cols();
    for (char f : p.integral)
        if (!f) throw std::invalid_argument("bounding-box mode requires all-integer variables");
    NodeLp node{p.a, p.rhs, {}, {}};
    std::vector<Int> lo(d), hi(d);
    for (std::size_t j = 0; j < d; ++j) {
        RatVec c(d, Rat(0));
        c[j] = Rat(1);
        LpResult<Rat> mn = node.solve(c);
        if (mn.status == LpStatus::Infeasible) return {};
        c[j] = Rat(-1);
        LpResult<Rat> mx = node.solve(c);
        if (mn.status != LpStatus::Optimal || mx.status != LpStatus::Optimal)
            throw std::logic_error("bounding-box mode: unbounded relaxation");
        lo[j] = rat_ceil(mn.x[j]);
        hi[j] = rat_floor(mx.x[j]);
        if (lo[j] > hi[j]) return {};
    }
    // odometer scan in lexicographic order
    std::vector<Int> cur = lo;
    RatVec x(d);
    while (true) {
        for (std::size_t j = 0; j < d; ++j) x[j] = Rat(cur[j]);
        if (satisfies(p.a, p.rhs, x)) {
            MipResult r;
            r.status = MipResult::Status::Feasible;
            r.witness = x;
            return r;
        }
        std::size_t j = d;
        while (j-- > 0) {
            if (cur[j] < hi[j]) {
                cur[j] += 1;
                for (std::size_t k = j + 1; k < d; ++k) cur[k] = lo[k];
                break;
            }
            if (j == 0) return {};
        }
    }
}

MipResult feasible_hybrid(const FeasibilityProblem& p) {
    const std::size_t m = p.a.rows(), d = p.a.cols();
    bool all_flagged = std::all_of(p.integral.begin(), p.integral.end(), [](char f) { return f != 0; });
    if (all_flagged) {
        Matrix<double> a(m, d);
        std::vector<double> b(m), c(d, 0.0);
        for (std::size_t i = 0; i < m; ++i) {
            for (std::size_t j = 0; j < d; ++j) a(i, j) = p.a(i, j).get_d();
            b[i] = p.rhs[i].get_d();
        }
        Simplex<double> lp;
        LpResult<double> res = lp.minimize(a, b, c);
        if (res.status == LpStatus::Optimal && d <= 6) {
            // try all floor/ceil combinations around the float vertex
            std::vector<long> fl(d);
            for (std::size_t j = 0; j < d; ++j) fl[j] = static_cast<long>(std::floor(res.x[j]));
            const std::size_t combos = std::size_t(1) << d;
            RatVec x(d);
            for (std::size_t mask = 0; mask < combos; ++mask) {
                for (std::size_t j = 0; j < d; ++j)
                    x[j] = Rat(fl[j] + ((mask >> j) & 1 ? 1 : 0));
                if (satisfies(p.a, p.rhs, x)) {
                    MipResult r;
                    r.status = MipResult::Status::Feasible;
                    r.witness = x;
                    return r;
                }
            }
        }
    }
    // float proposal failed: the exact solver settles it
    return feasible_exact(p);
}

}  // namespace

MipResult feasible_integer(const FeasibilityProblem& p, SolverMode mode) {
    if (p.a.rows() != p.rhs.size() || p.a.cols() != p.integral.size())
        throw std::invalid_argument("feasible_integer: shape mismatch");
    switch (mode) {
        case SolverMode::BoundingBox: return feasible_bbox(p);
        case SolverMode::Hybrid: return feasible_hybrid(p);
        case SolverMode::Exact: default: return feasible_exact(p);
    }
}

namespace {

/// Smallest dilation placing x: max over rows of (a_i x - shift_i)/b_i,
/// clamped at zero.
Rat dilation_of(const RatMatrix& a, const RatVec& b, const RatVec& shift, const RatVec& x) {
    Rat best(0);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        Rat acc(0);
        for (std::size_t j = 0; j < a.cols(); ++j) acc += a(i, j) * x[j];
        Rat need = (acc - shift[i]) / b[i];
        if (need > best) best = need;
    }
    return best;
}

struct DilationBb {
    const RatMatrix& a;
    const RatVec& b;
    const RatVec& shift;
    std::vector<char> integral;  // d ints + continuous rho
    RatVec cost;
    long nodes = 0;

    Rat best;
    RatVec best_x;  // integer part only

    void consider(const RatVec& xint) {
        Rat val = dilation_of(a, b, shift, xint);
        if (best_x.empty() || val < best) {
            best = val;
            best_x = xint;
        }
    }

    void run(NodeLp& node) {
        if (++nodes > kNodeCap) throw std::logic_error("minimize_dilation: node limit hit");
        LpResult<Rat> lp = node.solve(cost);
        if (lp.status == LpStatus::Infeasible) return;
        if (lp.status != LpStatus::Optimal)
            throw std::logic_error("minimize_dilation: relaxation unbounded");
        if (!best_x.empty() && lp.objective >= best) return;  // bound cannot improve

        const std::size_t d = a.cols();
        RatVec xint(d);
        for (std::size_t j = 0; j < d; ++j) xint[j] = Rat(rat_round(lp.x[j]));
        consider(xint);
        if (lp.objective >= best) return;

        std::size_t j = pick_branch_var(lp.x, integral);
        if (j == lp.x.size()) {
            // LP vertex already integral in x; its objective equals the
            // exact dilation for that x
            RatVec xi(d);
            for (std::size_t t = 0; t < d; ++t) xi[t] = lp.x[t];
            consider(xi);
            return;
        }
        Int fl = rat_floor(lp.x[j]);
        node.upper.emplace_back(j, fl);
        run(node);
        node.upper.pop_back();
        node.lower.emplace_back(j, fl + 1);
        run(node);
        node.lower.pop_back();
    }
};

}  // namespace

MipResult minimize_dilation(const RatMatrix& a, const RatVec& b, const RatVec& rhs_shift) {
    const std::size_t m = a.rows(), d = a.cols();
    if (b.size() != m || rhs_shift.size() != m)
        throw std::invalid_argument("minimize_dilation: shape mismatch");
    for (const Rat& bi : b)
        if (!(bi > 0)) throw std::invalid_argument("minimize_dilation: b must be positive");

    // Extended system over (x, rho): a x - b rho <= shift, -rho <= 0.
    RatMatrix ext(m + 1, d + 1, Rat(0));
    RatVec ext_rhs(m + 1, Rat(0));
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < d; ++j) ext(i, j) = a(i, j);
        ext(i, d) = -b[i];
        ext_rhs[i] = rhs_shift[i];
    }
    ext(m, d) = Rat(-1);

    DilationBb bb{a, b, rhs_shift, std::vector<char>(d + 1, 1), RatVec(d + 1, Rat(0)), 0, Rat(0), {}};
    bb.integral[d] = 0;
    bb.cost[d] = Rat(1);
    NodeLp node{ext, ext_rhs, {}, {}};
    bb.run(node);
    if (bb.best_x.empty()) throw std::logic_error("minimize_dilation: no incumbent");

    MipResult r;
    r.status = MipResult::Status::Feasible;
    r.witness = bb.best_x;
    r.objective = bb.best;
    return r;
}

}  // namespace zonocover
