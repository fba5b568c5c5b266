#pragma once

#include "zonocover/matrix.hpp"

#include <cstddef>
#include <limits>
#include <vector>

namespace zonocover::detail {

enum class LpStatus { Optimal, Infeasible, Unbounded, IterLimit };

template <class T>
struct LpResult {
    LpStatus status = LpStatus::IterLimit;
    std::vector<T> x;  // solution of the original free variables
    T objective{};
};

template <class T>
struct ScalarTraits;

template <>
struct ScalarTraits<Rat> {
    static bool neg(const Rat& v) { return v < 0; }
    static bool pos(const Rat& v) { return v > 0; }
    static constexpr long iter_limit = 100000;
};

template <>
struct ScalarTraits<double> {
    static constexpr double eps = 1e-9;
    static bool neg(double v) { return v < -eps; }
    static bool pos(double v) { return v > eps; }
    static constexpr long iter_limit = 2000;
};

/// Two-phase primal simplex with Bland's rule on a dense tableau.
/// Minimizes c^T y subject to A y <= b with y free (split internally into
/// nonnegative pairs). Exact when T = Rat; the double instantiation is a
/// best-effort proposer capped by iter_limit.
template <class T>
class Simplex {
public:
    LpResult<T> minimize(const Matrix<T>& a, const std::vector<T>& b, const std::vector<T>& c) {
        using Tr = ScalarTraits<T>;
        const std::size_t m = a.rows(), d = a.cols();
        nstruct_ = 2 * d;
        nslack_ = m;
        // Count artificials: rows whose rhs is negative need one after negation.
        std::vector<int> art_of_row(m, -1);
        std::size_t nart = 0;
        for (std::size_t i = 0; i < m; ++i)
            if (Tr::neg(b[i])) art_of_row[i] = static_cast<int>(nart++);
        ncols_ = nstruct_ + nslack_ + nart;

        tab_.assign(m, std::vector<T>(ncols_ + 1, T(0)));
        basis_.assign(m, 0);
        active_.assign(m, true);
        for (std::size_t i = 0; i < m; ++i) {
            const bool flip = art_of_row[i] >= 0;
            for (std::size_t j = 0; j < d; ++j) {
                T v = flip ? T(-a(i, j)) : a(i, j);
                tab_[i][j] = v;
                tab_[i][d + j] = -v;
            }
            tab_[i][nstruct_ + i] = flip ? T(-1) : T(1);
            tab_[i][ncols_] = flip ? T(-b[i]) : b[i];
            if (flip) {
                std::size_t acol = nstruct_ + nslack_ + static_cast<std::size_t>(art_of_row[i]);
                tab_[i][acol] = T(1);
                basis_[i] = acol;
            } else {
                basis_[i] = nstruct_ + i;
            }
        }

        if (nart > 0) {
            std::vector<T> phase1(ncols_, T(0));
            for (std::size_t j = nstruct_ + nslack_; j < ncols_; ++j) phase1[j] = T(1);
            set_cost(phase1);
            LpStatus st = iterate(/*allow_artificial=*/true);
            if (st != LpStatus::Optimal) return {st, {}, T(0)};
            if (Tr::pos(obj_value())) return {LpStatus::Infeasible, {}, T(0)};
            purge_artificials();
        }

        std::vector<T> cost(ncols_, T(0));
        for (std::size_t j = 0; j < d; ++j) {
            cost[j] = c[j];
            cost[d + j] = -c[j];
        }
        set_cost(cost);
        LpStatus st = iterate(/*allow_artificial=*/false);
        if (st != LpStatus::Optimal) return {st, {}, T(0)};

        std::vector<T> y(d, T(0));
        for (std::size_t i = 0; i < m; ++i) {
            if (!active_[i]) continue;
            if (basis_[i] < d)
                y[basis_[i]] += tab_[i][ncols_];
            else if (basis_[i] < 2 * d)
                y[basis_[i] - d] -= tab_[i][ncols_];
        }
        T obj(0);
        for (std::size_t j = 0; j < d; ++j) obj += c[j] * y[j];
        return {LpStatus::Optimal, y, obj};
    }

private:
    std::vector<std::vector<T>> tab_;
    std::vector<T> cost_;  // reduced-cost row
    T costrhs_{};
    std::vector<std::size_t> basis_;
    std::vector<bool> active_;
    std::size_t nstruct_ = 0, nslack_ = 0, ncols_ = 0;

    T obj_value() const { return -costrhs_; }

    void set_cost(const std::vector<T>& c) {
        cost_ = c;
        cost_.resize(ncols_, T(0));
        costrhs_ = T(0);
        for (std::size_t i = 0; i < tab_.size(); ++i) {
            if (!active_[i]) continue;
            const T f = cost_[basis_[i]];
            if (f == T(0)) continue;
            for (std::size_t j = 0; j < ncols_; ++j) cost_[j] -= f * tab_[i][j];
            costrhs_ -= f * tab_[i][ncols_];
        }
    }

    void pivot(std::size_t row, std::size_t col) {
        T p = tab_[row][col];
        for (std::size_t j = 0; j <= ncols_; ++j) tab_[row][j] /= p;
        for (std::size_t i = 0; i < tab_.size(); ++i) {
            if (i == row || !active_[i]) continue;
            T f = tab_[i][col];
            if (f == T(0)) continue;
            for (std::size_t j = 0; j <= ncols_; ++j) tab_[i][j] -= f * tab_[row][j];
        }
        T f = cost_[col];
        if (f != T(0)) {
            for (std::size_t j = 0; j < ncols_; ++j) cost_[j] -= f * tab_[row][j];
            costrhs_ -= f * tab_[row][ncols_];
        }
        basis_[row] = col;
    }

    LpStatus iterate(bool allow_artificial) {
        using Tr = ScalarTraits<T>;
        const std::size_t limit_col = allow_artificial ? ncols_ : nstruct_ + nslack_;
        for (long it = 0; it < Tr::iter_limit; ++it) {
            // Bland: entering = lowest-index column with negative reduced cost
            std::size_t enter = ncols_;
            for (std::size_t j = 0; j < limit_col; ++j)
                if (Tr::neg(cost_[j])) { enter = j; break; }
            if (enter == ncols_) return LpStatus::Optimal;

            std::size_t leave = tab_.size();
            for (std::size_t i = 0; i < tab_.size(); ++i) {
                if (!active_[i] || !Tr::pos(tab_[i][enter])) continue;
                if (leave == tab_.size()) { leave = i; continue; }
                T lhs = tab_[i][ncols_] * tab_[leave][enter];
                T rhs = tab_[leave][ncols_] * tab_[i][enter];
                if (lhs < rhs || (lhs == rhs && basis_[i] < basis_[leave])) leave = i;
            }
            if (leave == tab_.size()) return LpStatus::Unbounded;
            pivot(leave, enter);
        }
        return LpStatus::IterLimit;
    }

    /// Pivot zero-level artificials out of the basis; rows that cannot be
    /// pivoted are redundant and get deactivated.
    void purge_artificials() {
        for (std::size_t i = 0; i < tab_.size(); ++i) {
            if (!active_[i] || basis_[i] < nstruct_ + nslack_) continue;
            std::size_t col = ncols_;
            for (std::size_t j = 0; j < nstruct_ + nslack_; ++j)
                if (tab_[i][j] != T(0)) { col = j; break; }
            if (col == ncols_)
                active_[i] = false;
            else
                pivot(i, col);
        }
    }
};

}  // namespace zonocover::detail
