#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "zonocover/linalg.hpp"

#include <random>

using namespace zonocover;

namespace {

IntMatrix random_square(std::mt19937& rng, std::size_t n, long lo, long hi) {
    std::uniform_int_distribution<long> d(lo, hi);
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m(i, j) = Int(d(rng));
    return m;
}

/// Expansion by minors, the slow reference.
Int det_cofactor(const IntMatrix& m) {
    if (m.rows() == 1) return m(0, 0);
    Int acc(0);
    for (std::size_t j = 0; j < m.cols(); ++j) {
        IntMatrix sub(m.rows() - 1, m.cols() - 1);
        for (std::size_t r = 1; r < m.rows(); ++r) {
            std::size_t cc = 0;
            for (std::size_t c = 0; c < m.cols(); ++c) {
                if (c == j) continue;
                sub(r - 1, cc++) = m(r, c);
            }
        }
        Int term = m(0, j) * det_cofactor(sub);
        acc += (j % 2 == 0) ? term : Int(-term);
    }
    return acc;
}

bool is_column_hnf(const IntMatrix& h) {
    // one pivot column per nonzero row, advancing left to right; pivots
    // positive with zeros to their right; entries left of a pivot reduced
    // into [0, pivot); rows without a pivot are zero from the current
    // pivot column on
    std::size_t p = 0;
    for (std::size_t i = 0; i < h.rows(); ++i) {
        bool tail_zero = true;
        for (std::size_t j = p; j < h.cols(); ++j)
            if (h(i, j) != 0) { tail_zero = false; break; }
        if (tail_zero) continue;  // no pivot in this row
        if (p >= h.cols() || h(i, p) <= 0) return false;
        for (std::size_t j = p + 1; j < h.cols(); ++j)
            if (h(i, j) != 0) return false;
        for (std::size_t j = 0; j < p; ++j)
            if (h(i, j) < 0 || h(i, j) >= h(i, p)) return false;
        ++p;
    }
    return true;
}

}  // namespace

TEST_CASE("det: pinned examples") {
    CHECK(det(IntMatrix::identity(3)) == 1);
    CHECK(det(IntMatrix{{Int(2), Int(0)}, {Int(0), Int(3)}}) == 6);
    // columns (0,1,1), (1,1,-1), (-1,-1,0)
    IntMatrix m{{Int(0), Int(1), Int(-1)}, {Int(1), Int(1), Int(-1)}, {Int(1), Int(-1), Int(0)}};
    CHECK(det(m) == 1);
}

TEST_CASE("det: rational overload") {
    RatMatrix m(2, 2);
    m(0, 0) = make_rat(1, 2);
    m(0, 1) = make_rat(1, 3);
    m(1, 0) = make_rat(1, 5);
    m(1, 1) = make_rat(1, 7);
    CHECK(det(m) == make_rat(1, 14) - make_rat(1, 15));
    CHECK(det(to_rational(IntMatrix::identity(4))) == 1);
}

TEST_CASE("det: non-square input throws") {
    IntMatrix m(2, 3, Int(1));
    CHECK_THROWS_AS(det(m), std::invalid_argument);
}

TEST_CASE("det: agrees with cofactor expansion, alternating under row swap") {
    std::mt19937 rng(12345);
    for (int trial = 0; trial < 60; ++trial) {
        IntMatrix m = random_square(rng, 4, -9, 9);
        Int d = det(m);
        CHECK(d == det_cofactor(m));
        IntMatrix swapped = m;
        for (std::size_t j = 0; j < 4; ++j) std::swap(swapped(1, j), swapped(3, j));
        CHECK(det(swapped) == -d);
    }
}

TEST_CASE("hnf_columns: identity fixed point") {
    auto [h, u] = hnf_columns(IntMatrix::identity(3));
    CHECK(h == IntMatrix::identity(3));
    CHECK(u == IntMatrix::identity(3));
}

TEST_CASE("hnf_columns: seed matrix of the (1,2,3,4) construction") {
    IntMatrix m{{Int(-4), Int(0), Int(0), Int(1)},
                {Int(0), Int(-4), Int(0), Int(2)},
                {Int(0), Int(0), Int(-4), Int(3)}};
    auto [h, u] = hnf_columns(m);
    CHECK(m * u == h);
    CHECK(abs(det(u)) == 1);
    CHECK(is_column_hnf(h));
    for (std::size_t r = 0; r < 3; ++r) CHECK(h(r, 3) == 0);  // rank 3 pushes a zero column
    auto [h2, u2] = hnf_columns(h);
    CHECK(h2 == h);  // idempotent
}

TEST_CASE("hnf_columns: single positive pivot") {
    IntMatrix m(1, 1);
    m(0, 0) = 6;
    auto [h, u] = hnf_columns(m);
    CHECK(h(0, 0) == 6);
    CHECK(u(0, 0) == 1);
    IntMatrix neg(1, 1);
    neg(0, 0) = -6;
    auto [h2, u2] = hnf_columns(neg);
    CHECK(h2(0, 0) == 6);
    CHECK(u2(0, 0) == -1);
}

TEST_CASE("hnf_columns: random h = m*u with unimodular u") {
    std::mt19937 rng(777);
    for (int trial = 0; trial < 40; ++trial) {
        IntMatrix m = random_square(rng, 3, -12, 12);
        auto [h, u] = hnf_columns(m);
        CHECK(m * u == h);
        CHECK(abs(det(u)) == 1);
        CHECK(is_column_hnf(h));
    }
}

TEST_CASE("lll_rows: already reduced basis unchanged") {
    IntMatrix id = IntMatrix::identity(3);
    CHECK(lll_rows(id, make_rat(3, 4)) == id);
}

TEST_CASE("lll_rows: shears a skewed basis") {
    IntMatrix m{{Int(1), Int(0)}, {Int(10), Int(1)}};
    IntMatrix r = lll_rows(m, make_rat(3, 4));
    // same row lattice: column HNF of the transpose is invariant
    CHECK(hnf_columns(m.transposed()).first == hnf_columns(r.transposed()).first);
    // max-norm did not grow
    Int before(0), after(0);
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) {
            Int bm = abs(m(i, j)), am = abs(r(i, j));
            if (bm > before) before = bm;
            if (am > after) after = am;
        }
    CHECK(after <= before);
    CHECK(after == 1);
}

TEST_CASE("lll_rows: lattice invariance and Lovasz condition on random input") {
    std::mt19937 rng(31337);
    const Rat delta = make_rat(3, 4);
    for (int trial = 0; trial < 25; ++trial) {
        IntMatrix m = random_square(rng, 3, -20, 20);
        if (det(m) == 0) continue;
        IntMatrix r = lll_rows(m, delta);
        CHECK(hnf_columns(m.transposed()).first == hnf_columns(r.transposed()).first);
        // Lovasz condition via exact Gram-Schmidt
        RatMatrix b = to_rational(r);
        std::vector<RatVec> star;
        std::vector<RatVec> mu(3, RatVec(3, Rat(0)));
        RatVec norms;
        for (std::size_t i = 0; i < 3; ++i) {
            RatVec v = b.row(i);
            for (std::size_t j = 0; j < i; ++j) {
                Rat dot(0);
                for (std::size_t t = 0; t < 3; ++t) dot += b(i, t) * star[j][t];
                mu[i][j] = dot / norms[j];
                for (std::size_t t = 0; t < 3; ++t) v[t] -= mu[i][j] * star[j][t];
            }
            star.push_back(v);
            Rat nn(0);
            for (const Rat& x : v) nn += x * x;
            norms.push_back(nn);
        }
        for (std::size_t i = 1; i < 3; ++i)
            CHECK(norms[i] >= (delta - mu[i][i - 1] * mu[i][i - 1]) * norms[i - 1]);
    }
}

TEST_CASE("lll_rows: dependent rows rejected") {
    IntMatrix m{{Int(1), Int(2)}, {Int(2), Int(4)}};
    CHECK_THROWS_AS(lll_rows(m, make_rat(3, 4)), std::invalid_argument);
}

TEST_CASE("solve_square: pinned examples") {
    RatMatrix id = to_rational(IntMatrix::identity(3));
    RatVec b{Rat(3), Rat(-1), make_rat(1, 2)};
    CHECK(solve_square(id, b) == b);

    RatMatrix diag(2, 2, Rat(0));
    diag(0, 0) = Rat(2);
    diag(1, 1) = Rat(2);
    RatVec ones{Rat(1), Rat(1)};
    RatVec x = solve_square(diag, ones);
    CHECK(x[0] == make_rat(1, 2));
    CHECK(x[1] == make_rat(1, 2));
}

TEST_CASE("solve_square: residual is exactly zero on random systems") {
    std::mt19937 rng(99);
    for (int trial = 0; trial < 40; ++trial) {
        IntMatrix a = random_square(rng, 3, -10, 10);
        if (det(a) == 0) continue;
        RatMatrix aq = to_rational(a);
        std::uniform_int_distribution<long> d(-10, 10);
        RatVec b(3);
        for (auto& x : b) x = Rat(Int(d(rng)));
        RatVec x = solve_square(aq, b);
        for (std::size_t i = 0; i < 3; ++i) {
            Rat acc(0);
            for (std::size_t j = 0; j < 3; ++j) acc += aq(i, j) * x[j];
            CHECK(acc == b[i]);
        }
    }
}

TEST_CASE("solve_square: singular matrix throws") {
    RatMatrix a(2, 2, Rat(1));
    RatVec b{Rat(1), Rat(2)};
    CHECK_THROWS_AS(solve_square(a, b), std::domain_error);
}
