#include "zonocover/linalg.hpp"

#include <algorithm>
#include <cstddef>
#include <stdexcept>

namespace zonocover {

Int det(const IntMatrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("det: matrix not square");
    const std::size_t n = m.rows();
    IntMatrix a = m;
    Int prev(1);
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a(k, k) == 0) {
            std::size_t piv = k + 1;
            while (piv < n && a(piv, k) == 0) ++piv;
            if (piv == n) return Int(0);
            for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(piv, j));
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                Int num = a(i, j) * a(k, k) - a(i, k) * a(k, j);
                // Bareiss: division by the previous pivot is exact
                a(i, j) = num / prev;
            }
            a(i, k) = 0;
        }
        prev = a(k, k);
    }
    return sign > 0 ? a(n - 1, n - 1) : Int(-a(n - 1, n - 1));
}

Rat det(const RatMatrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("det: matrix not square");
    const std::size_t n = m.rows();
    // Clear denominators row by row, then run the integer path.
    IntMatrix a(n, n);
    Rat scale(1);
    for (std::size_t i = 0; i < n; ++i) {
        Int l(1);
        for (std::size_t j = 0; j < n; ++j) {
            Int d = rat_den(m(i, j));
            l = l / int_gcd(l, d) * d;
        }
        for (std::size_t j = 0; j < n; ++j) {
            Rat v = m(i, j) * Rat(l);
            a(i, j) = rat_num(v);
        }
        scale *= make_rat(Int(1), l);
    }
    return Rat(det(a)) * scale;
}

std::pair<IntMatrix, IntMatrix> hnf_columns(const IntMatrix& m) {
    const std::size_t rows = m.rows(), cols = m.cols();
    IntMatrix h = m;
    IntMatrix u = IntMatrix::identity(cols);

    auto swap_cols = [&](std::size_t a, std::size_t b) {
        for (std::size_t r = 0; r < rows; ++r) std::swap(h(r, a), h(r, b));
        for (std::size_t r = 0; r < cols; ++r) std::swap(u(r, a), u(r, b));
    };
    auto addmul_col = [&](std::size_t dst, std::size_t src, const Int& k) {
        for (std::size_t r = 0; r < rows; ++r) h(r, dst) += k * h(r, src);
        for (std::size_t r = 0; r < cols; ++r) u(r, dst) += k * u(r, src);
    };
    auto negate_col = [&](std::size_t a) {
        for (std::size_t r = 0; r < rows; ++r) h(r, a) = -h(r, a);
        for (std::size_t r = 0; r < cols; ++r) u(r, a) = -u(r, a);
    };

    std::size_t p = 0;
    for (std::size_t i = 0; i < rows && p < cols; ++i) {
        // Euclidean elimination across columns p..cols-1 on row i.
        while (true) {
            std::size_t best = cols;
            for (std::size_t j = p; j < cols; ++j) {
                if (h(i, j) == 0) continue;
                if (best == cols || abs(h(i, j)) < abs(h(i, best))) best = j;
            }
            if (best == cols) break;  // row has no pivot among remaining columns
            if (best != p) swap_cols(p, best);
            if (h(i, p) < 0) negate_col(p);
            bool clean = true;
            for (std::size_t j = p + 1; j < cols; ++j) {
                if (h(i, j) == 0) continue;
                Int q = int_floor_div(h(i, j), h(i, p));
                addmul_col(j, p, -q);
                if (h(i, j) != 0) clean = false;
            }
            if (clean) break;
        }
        if (h(i, p) != 0) {
            for (std::size_t j = 0; j < p; ++j) {
                Int q = int_floor_div(h(i, j), h(i, p));
                if (q != 0) addmul_col(j, p, -q);
            }
            ++p;
        }
    }
    return {h, u};
}

namespace {

struct GramSchmidt {
    std::vector<RatVec> mu;   // mu[i][j], j < i
    RatVec norms;             // |b*_i|^2

    static GramSchmidt of(const std::vector<RatVec>& b) {
        const std::size_t k = b.size(), n = b[0].size();
        GramSchmidt g;
        g.mu.assign(k, RatVec(k, Rat(0)));
        g.norms.assign(k, Rat(0));
        std::vector<RatVec> star(k, RatVec(n, Rat(0)));
        for (std::size_t i = 0; i < k; ++i) {
            RatVec v = b[i];
            for (std::size_t j = 0; j < i; ++j) {
                Rat dot(0);
                for (std::size_t t = 0; t < n; ++t) dot += b[i][t] * star[j][t];
                if (g.norms[j] == 0) throw std::invalid_argument("lll_rows: dependent rows");
                g.mu[i][j] = dot / g.norms[j];
                for (std::size_t t = 0; t < n; ++t) v[t] -= g.mu[i][j] * star[j][t];
            }
            star[i] = v;
            Rat nn(0);
            for (std::size_t t = 0; t < n; ++t) nn += v[t] * v[t];
            g.norms[i] = nn;
        }
        return g;
    }
};

}  // namespace

IntMatrix lll_rows(const IntMatrix& m, const Rat& delta) {
    if (!(delta > make_rat(1, 4) && delta < Rat(1)))
        throw std::invalid_argument("lll_rows: delta must lie in (1/4, 1)");
    const std::size_t k = m.rows(), n = m.cols();
    std::vector<RatVec> b(k, RatVec(n));
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < n; ++j) b[i][j] = Rat(m(i, j));

    GramSchmidt g = GramSchmidt::of(b);
    for (const Rat& nn : g.norms)
        if (nn == 0) throw std::invalid_argument("lll_rows: dependent rows");

    std::size_t kk = 1;
    while (kk < k) {
        for (std::size_t j = kk; j-- > 0;) {
            Int r = rat_round(g.mu[kk][j]);
            if (r != 0) {
                for (std::size_t t = 0; t < n; ++t) b[kk][t] -= Rat(r) * b[j][t];
                g = GramSchmidt::of(b);
            }
        }
        if (g.norms[kk] >= (delta - g.mu[kk][kk - 1] * g.mu[kk][kk - 1]) * g.norms[kk - 1]) {
            ++kk;
        } else {
            std::swap(b[kk], b[kk - 1]);
            g = GramSchmidt::of(b);
            kk = std::max<std::size_t>(kk - 1, 1);
        }
    }

    IntMatrix out(k, n);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (!is_integer(b[i][j])) throw std::logic_error("lll_rows: non-integer basis");
            out(i, j) = rat_num(b[i][j]);
        }
    return out;
}

RatVec solve_square(const RatMatrix& a, const RatVec& b) {
    if (a.rows() != a.cols()) throw std::invalid_argument("solve_square: matrix not square");
    const std::size_t n = a.rows();
    if (b.size() != n) throw std::invalid_argument("solve_square: rhs size mismatch");
    RatMatrix w = a;
    RatVec x = b;
    for (std::size_t kcol = 0; kcol < n; ++kcol) {
        std::size_t piv = kcol;
        while (piv < n && w(piv, kcol) == 0) ++piv;
        if (piv == n) throw std::domain_error("solve_square: singular matrix");
        if (piv != kcol) {
            for (std::size_t j = 0; j < n; ++j) std::swap(w(kcol, j), w(piv, j));
            std::swap(x[kcol], x[piv]);
        }
        Rat inv = Rat(1) / w(kcol, kcol);
        for (std::size_t j = kcol; j < n; ++j) w(kcol, j) *= inv;
        x[kcol] *= inv;
        for (std::size_t i = 0; i < n; ++i) {
            if (i == kcol || w(i, kcol) == 0) continue;
            Rat f = w(i, kcol);
            for (std::size_t j = kcol; j < n; ++j) w(i, j) -= f * w(kcol, j);
            x[i] -= f * x[kcol];
        }
    }
    return x;
}

}  // namespace zonocover
