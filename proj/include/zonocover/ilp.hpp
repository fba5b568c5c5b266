#pragma once

#include "zonocover/matrix.hpp"

#include <optional>
#include <vector>

namespace zonocover {

/// How integer feasibility queries are answered.
///  - Exact: branch-and-bound over an exact rational simplex relaxation.
///  - BoundingBox: exhaustive scan of all integer points in the LP-derived
///    bounding box of the relaxation.
///  - Hybrid: a floating-point proposal is verified in exact arithmetic;
///    any failure falls through to the exact solver.
enum class SolverMode { Exact, BoundingBox, Hybrid };

/// Find x with a*x <= rhs, where the variables flagged in `integral` must
/// take integer values. The relaxation must be bounded.
struct FeasibilityProblem {
    RatMatrix a;
    RatVec rhs;
    std::vector<char> integral;  // per-variable flag
};

struct MipResult {
    enum class Status { Feasible, Infeasible };
    Status status = Status::Infeasible;
    RatVec witness;               // exact, satisfies every row when feasible
    std::optional<Rat> objective; // set by optimizing calls

    bool feasible() const { return status == Status::Feasible; }
};

MipResult feasible_integer(const FeasibilityProblem& p, SolverMode mode = SolverMode::Exact);

/// minimize rho subject to a*x - b*rho <= rhs_shift, rho >= 0, x integer.
/// Requires b > 0 componentwise, which makes the problem feasible for
/// large rho and the optimum attained. Returns the exact optimum in
/// `objective` and the integer witness x in `witness`.
MipResult minimize_dilation(const RatMatrix& a, const RatVec& b, const RatVec& rhs_shift);

}  // namespace zonocover
