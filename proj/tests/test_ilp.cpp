#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "zonocover/ilp.hpp"

#include <random>

using namespace zonocover;

namespace {

FeasibilityProblem make_problem(const std::vector<std::vector<long>>& rows,
                                const std::vector<Rat>& rhs) {
    const std::size_t m = rows.size(), d = rows[0].size();
    FeasibilityProblem p{RatMatrix(m, d), rhs, std::vector<char>(d, 1)};
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < d; ++j) p.a(i, j) = Rat(Int(rows[i][j]));
    return p;
}

void check_witness(const FeasibilityProblem& p, const MipResult& r) {
    REQUIRE(r.feasible());
    for (std::size_t j = 0; j < p.integral.size(); ++j)
        if (p.integral[j]) CHECK(is_integer(r.witness[j]));
    for (std::size_t i = 0; i < p.a.rows(); ++i) {
        Rat acc(0);
        for (std::size_t j = 0; j < p.a.cols(); ++j) acc += p.a(i, j) * r.witness[j];
        CHECK(acc <= p.rhs[i]);
    }
}

}  // namespace

TEST_CASE("feasible_integer: unit slab") {
    FeasibilityProblem p = make_problem({{1}, {-1}}, {Rat(1), Rat(0)});  // 0 <= x <= 1
    MipResult r = feasible_integer(p);
    check_witness(p, r);
    CHECK((r.witness[0] == 0 || r.witness[0] == 1));
}

TEST_CASE("feasible_integer: empty integer slab") {
    // 1/3 <= x <= 2/3
    FeasibilityProblem p = make_problem({{1}, {-1}}, {make_rat(2, 3), make_rat(-1, 3)});
    CHECK(!feasible_integer(p).feasible());
    CHECK(!feasible_integer(p, SolverMode::BoundingBox).feasible());
    CHECK(!feasible_integer(p, SolverMode::Hybrid).feasible());
}

TEST_CASE("feasible_integer: level-1 voxel inside the 3/2 square") {
    // P+ = [-3/4,3/4]^2 as 2x <= 3/2 rows; voxel c=(0,0), eps=1/2 shifts the
    // rhs by (A_i)+ * eps
    RatMatrix a(4, 2, Rat(0));
    a(0, 0) = Rat(2);
    a(1, 0) = Rat(-2);
    a(2, 1) = Rat(2);
    a(3, 1) = Rat(-2);
    Rat eps = make_rat(1, 2);
    RatVec rhs(4);
    for (int i = 0; i < 4; ++i) rhs[i] = make_rat(3, 2) - Rat(2) * eps * (i % 2 == 0 ? 1 : 0);
    FeasibilityProblem p{a, rhs, {1, 1}};
    MipResult r = feasible_integer(p);
    check_witness(p, r);
    CHECK(r.witness[0] == 0);
    CHECK(r.witness[1] == 0);
}

TEST_CASE("feasible_integer: agreement with box enumeration on random systems") {
    std::mt19937 rng(60601);
    std::uniform_int_distribution<int> dim(1, 3);
    std::uniform_int_distribution<long> wdist(1, 4);
    std::uniform_int_distribution<long> coef(-6, 6);
    std::uniform_int_distribution<long> num(-12, 20);
    std::uniform_int_distribution<long> den(1, 4);
    std::uniform_int_distribution<int> extra_rows(2, 6);

    for (int trial = 0; trial < 350; ++trial) {
        const int d = dim(rng);
        const long w = wdist(rng);
        std::vector<std::vector<long>> rows;
        std::vector<Rat> rhs;
        for (int j = 0; j < d; ++j) {
            std::vector<long> r1(d, 0), r2(d, 0);
            r1[j] = 1;
            r2[j] = -1;
            rows.push_back(r1);
            rhs.push_back(Rat(Int(w)));
            rows.push_back(r2);
            rhs.push_back(Rat(Int(w)));
        }
        const int extra = extra_rows(rng);
        for (int e = 0; e < extra; ++e) {
            std::vector<long> r(d);
            for (int j = 0; j < d; ++j) r[j] = coef(rng);
            rows.push_back(r);
            rhs.push_back(make_rat(num(rng), den(rng)));
        }
        FeasibilityProblem p = make_problem(rows, rhs);
        auto oracle = oracles::box_feasible(p.a, p.rhs, w);
        for (SolverMode mode : {SolverMode::Exact, SolverMode::Hybrid, SolverMode::BoundingBox}) {
            MipResult r = feasible_integer(p, mode);
            CHECK(r.feasible() == oracle.has_value());
            if (r.feasible()) check_witness(p, r);
        }
    }
}

TEST_CASE("minimize_dilation: unit voxel in the centered unit square needs dilation 2") {
    RatMatrix a(4, 2, Rat(0));
    a(0, 0) = Rat(2);
    a(1, 0) = Rat(-2);
    a(2, 1) = Rat(2);
    a(3, 1) = Rat(-2);
    RatVec b(4, Rat(1));
    // c = 0, eps = 1: shift = -A_{>=0} * 1
    RatVec shift{Rat(-2), Rat(0), Rat(-2), Rat(0)};
    MipResult r = minimize_dilation(a, b, shift);
    CHECK(*r.objective == 2);
    // witness places the cell inside 2P: x in {-1, 0} per axis
    for (const Rat& x : r.witness) CHECK((x == 0 || x == -1));
}

TEST_CASE("minimize_dilation: covering the cell center needs dilation 1") {
    RatMatrix a(4, 2, Rat(0));
    a(0, 0) = Rat(2);
    a(1, 0) = Rat(-2);
    a(2, 1) = Rat(2);
    a(3, 1) = Rat(-2);
    RatVec b(4, Rat(1));
    // point (1/2, 1/2): shift = -A * c
    RatVec shift{Rat(-1), Rat(1), Rat(-1), Rat(1)};
    MipResult r = minimize_dilation(a, b, shift);
    CHECK(*r.objective == 1);
}

TEST_CASE("minimize_dilation: optimum stays finite when the origin placement is infeasible") {
    RatMatrix a(2, 1, Rat(0));
    a(0, 0) = Rat(1);
    a(1, 0) = Rat(-1);
    RatVec b{Rat(1), Rat(1)};
    RatVec shift{Rat(-5), Rat(3)};  // x - rho <= -5, -x - rho <= 3
    MipResult r = minimize_dilation(a, b, shift);
    CHECK(r.feasible());
    CHECK(*r.objective >= 0);
}

TEST_CASE("minimize_dilation: monotone in the shift, agrees with box scan") {
    std::mt19937 rng(808);
    std::uniform_int_distribution<long> coef(-4, 4);
    std::uniform_int_distribution<long> sdist(-3, 3);
    for (int trial = 0; trial < 40; ++trial) {
        const int d = 2;
        // random bounded system with 0 interior: box rows plus one random row
        RatMatrix a(2 * d + 1, d, Rat(0));
        RatVec b(2 * d + 1, Rat(1));
        for (int j = 0; j < d; ++j) {
            a(2 * j, j) = Rat(1);
            a(2 * j + 1, j) = Rat(-1);
            b[2 * j] = Rat(2);
            b[2 * j + 1] = Rat(2);
        }
        long c0 = coef(rng), c1 = coef(rng);
        if (c0 == 0 && c1 == 0) c0 = 1;
        a(2 * d, 0) = Rat(Int(c0));
        a(2 * d, 1) = Rat(Int(c1));
        b[2 * d] = Rat(3);
        RatVec shift(2 * d + 1);
        for (auto& s : shift) s = Rat(Int(sdist(rng)));
        MipResult r = minimize_dilation(a, b, shift);
        CHECK(r.feasible());
        Rat oracle = oracles::box_min_dilation(a, b, shift, RatVec(d, Rat(0)), 12);
        CHECK(*r.objective == oracle);
        // loosening every row can only shrink the optimum
        RatVec looser = shift;
        for (auto& s : looser) s += Rat(1);
        MipResult r2 = minimize_dilation(a, b, looser);
        CHECK(*r2.objective <= *r.objective);
    }
}

TEST_CASE("minimize_dilation: rejects nonpositive scaling column") {
    RatMatrix a(1, 1, Rat(1));
    RatVec b{Rat(0)};
    CHECK_THROWS_AS(minimize_dilation(a, b, RatVec{Rat(0)}), std::invalid_argument);
}
