#pragma once

#include "zonocover/covering.hpp"

#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace zonocover {

/// Streams all (v1 < v2 < v3 < v4), v_i >= 1, gcd = 1, sum <= max_sum in
/// lexicographic order. Returning false from the callback stops early.
void enumerate_volume_vectors(long max_sum, const std::function<bool(const VolumeVector&)>& fn);
long count_volume_vectors(long max_sum);

/// One self-contained proof record. Positive eps certifies mu <= rho,
/// negative eps certifies mu < rho; the coset kind disproves mu <= rho.
struct Certificate {
    IntVec v;
    IntMatrix gen;
    Rat eps;
    std::optional<Int> dbound;  // present iff eps > 0
    enum class Kind { Domain, Coset } kind = Kind::Domain;
    DyadicDomain domain;
    CosetPoint coset;
    std::optional<Rat> rho;  // present iff the bound differs from 3/5
};

std::string certificate_to_line(const Certificate& c);
Certificate certificate_from_line(const std::string& line);

/// Raised when an instance disproves the 3/5 bound; carries the coset
/// certificate so the failure is auditable.
struct CounterexampleError : std::runtime_error {
    Certificate cert;
    explicit CounterexampleError(Certificate c);
};

struct CertifyOptions {
    Rat lll_delta = make_rat(3, 4);
    SolverMode solver = SolverMode::Exact;
    SymmetryMode symmetry = SymmetryMode::Auto;
};

struct CertifyOutcome {
    Certificate cert;
    bool tight_candidate = false;
    int depth = 0;
};

/// Strict-first certification at an arbitrary bound: decide_ge with the
/// cheap b-free Gram bound first (bounded => strict certificate), then
/// decide_le with the full subdeterminant bound. A coset outcome is
/// returned as a Kind::Coset certificate, not thrown.
CertifyOutcome certify_instance_at(const VolumeVector& v, const Rat& rho, const CertifyOptions& opt = {});

/// Campaign semantics at rho = 3/5; a coset outcome throws CounterexampleError.
CertifyOutcome certify_instance(const VolumeVector& v, const CertifyOptions& opt = {});

struct CampaignOptions {
    long max_sum = 195;
    int jobs = 1;  // 0 = library default thread count
    std::string out_path;  // empty = discard certificate lines
    CertifyOptions certify;
};

struct CampaignReport {
    long total = 0;
    long certified_strict = 0;
    std::vector<IntVec> tight;
    std::map<int, long> depth_histogram;
    std::vector<std::string> failures;

    bool ok() const { return failures.empty(); }
};

/// Reference implementation: one instance at a time, in enumeration order.
CampaignReport run_campaign_serial(const CampaignOptions& opt);

/// OpenMP implementation: block-parallel over instances, output flushed in
/// enumeration order. Byte-identical to the serial run.
CampaignReport run_campaign_openmp(const CampaignOptions& opt);

/// Dispatches on jobs (1 = serial reference).
CampaignReport run_campaign(const CampaignOptions& opt);

void print_report(std::ostream& os, const CampaignReport& r);

}  // namespace zonocover
