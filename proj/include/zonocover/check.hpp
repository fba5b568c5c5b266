#pragma once

#include "zonocover/rational.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace zonocover {

/// Independent certificate verification. This module re-derives everything
/// it needs (facet systems, denominator bounds, subtree structure, coset
/// exclusion by exhaustive scan) from the record contents, sharing only the
/// exact integer/rational primitives with the producing pipeline.
///
/// Steps, reported per record by id:
///   "1"   enumeration completeness of the whole file
///   "2a"  stated volume vector matches the generators
///   "2b"  margin validity (positive: eps < 1/(s D); negative: the
///         standardized -1/(2 s D_cheap))
///   "2c"  domain is a dyadic fundamental domain contained in the margin
///         dilate (or, for coset records, the coset is really avoided)
struct CheckFailure {
    long record = 0;  // 1-based line number
    std::string vec;
    std::string step;
    std::string message;
};

struct CheckReport {
    long records = 0;
    std::vector<CheckFailure> failures;

    bool ok() const { return failures.empty(); }
};

struct CheckOptions {
    std::optional<long> expected_max_sum;  // default: inferred from the file
    bool skip_enumeration = false;
};

CheckReport check_certificates(std::istream& in, const CheckOptions& opt = {});
CheckReport check_certificates_file(const std::string& path, const CheckOptions& opt = {});

void print_check_report(std::ostream& os, const CheckReport& r);

}  // namespace zonocover
