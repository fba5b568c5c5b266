#include "zonocover/pipeline.hpp"

#include <json.hpp>
#include <omp.h>

#include <array>
#include <fstream>
#include <iostream>
#include <numeric>
#include <ostream>

namespace zonocover {

void enumerate_volume_vectors(long max_sum, const std::function<bool(const VolumeVector&)>& fn) {
    for (long v1 = 1; 4 * v1 + 6 <= max_sum; ++v1) {
        for (long v2 = v1 + 1; v1 + 3 * v2 + 3 <= max_sum; ++v2) {
            long g2 = std::gcd(v1, v2);
            for (long v3 = v2 + 1; v1 + v2 + 2 * v3 + 1 <= max_sum; ++v3) {
                long g3 = std::gcd(g2, v3);
                for (long v4 = v3 + 1; v1 + v2 + v3 + v4 <= max_sum; ++v4) {
                    if (std::gcd(g3, v4) != 1) continue;
                    VolumeVector v{{Int(v1), Int(v2), Int(v3), Int(v4)}};
                    if (!fn(v)) return;
                }
            }
        }
    }
}

long count_volume_vectors(long max_sum) {
    long n = 0;
    enumerate_volume_vectors(max_sum, [&](const VolumeVector&) {
        ++n;
        return true;
    });
    return n;
}

CounterexampleError::CounterexampleError(Certificate c)
    : std::runtime_error("covering radius bound disproved; coset witness dumped"), cert(std::move(c)) {}

namespace {

const Rat kThreeFifths = make_rat(3, 5);

void append_int(std::string& s, const Int& v) { s += v.get_str(); }

}  // namespace

std::string certificate_to_line(const Certificate& c) {
    std::string s;
    s.reserve(256);
    s += "{\"v\":[";
    for (std::size_t i = 0; i < c.v.size(); ++i) {
        if (i) s += ',';
        append_int(s, c.v[i]);
    }
    s += "],\"gen\":[";
    for (std::size_t i = 0; i < c.gen.rows(); ++i)
        for (std::size_t j = 0; j < c.gen.cols(); ++j) {
            if (i || j) s += ',';
            append_int(s, c.gen(i, j));
        }
    s += "],\"eps\":\"";
    s += rat_to_string(c.eps);
    s += '"';
    if (c.dbound) {
        s += ",\"D\":";
        append_int(s, *c.dbound);
    }
    if (c.rho) {
        s += ",\"rho\":\"";
        s += rat_to_string(*c.rho);
        s += '"';
    }
    if (c.kind == Certificate::Kind::Domain) {
        s += ",\"kind\":\"domain\",\"voxels\":[";
        for (std::size_t k = 0; k < c.domain.voxels.size(); ++k) {
            const DyadicVoxel& vox = c.domain.voxels[k];
            if (k) s += ',';
            s += '[';
            s += std::to_string(vox.level);
            s += ",[";
            for (std::size_t j = 0; j < vox.vtype.size(); ++j) {
                if (j) s += ',';
                s += std::to_string(vox.vtype[j]);
            }
            s += "],[";
            for (std::size_t j = 0; j < vox.disp.size(); ++j) {
                if (j) s += ',';
                s += std::to_string(vox.disp[j]);
            }
            s += "]]";
        }
        s += "]}";
    } else {
        s += ",\"kind\":\"coset\",\"coset\":[";
        s += std::to_string(c.coset.level);
        s += ",[";
        for (std::size_t j = 0; j < c.coset.vtype.size(); ++j) {
            if (j) s += ',';
            s += std::to_string(c.coset.vtype[j]);
        }
        s += "]]}";
    }
    return s;
}

Certificate certificate_from_line(const std::string& line) {
    nlohmann::json j = nlohmann::json::parse(line);
    Certificate c;
    for (const auto& x : j.at("v")) c.v.push_back(Int(x.dump()));
    const std::size_t n = c.v.size();
    if (n < 2) throw std::invalid_argument("certificate: need at least two volumes");
    const auto& gen = j.at("gen");
    if (gen.size() != (n - 1) * n) throw std::invalid_argument("certificate: generator shape mismatch");
    c.gen = IntMatrix(n - 1, n);
    std::size_t t = 0;
    for (const auto& x : gen) c.gen(t / n, t % n) = Int(x.dump()), ++t;
    c.eps = rat_from_string(j.at("eps").get<std::string>());
    if (j.contains("D")) c.dbound = Int(j.at("D").dump());
    if (j.contains("rho")) c.rho = rat_from_string(j.at("rho").get<std::string>());
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "domain") {
        c.kind = Certificate::Kind::Domain;
        for (const auto& vx : j.at("voxels")) {
            DyadicVoxel vox;
            vox.level = vx.at(0).get<int>();
            for (const auto& x : vx.at(1)) vox.vtype.push_back(x.get<std::uint32_t>());
            for (const auto& x : vx.at(2)) vox.disp.push_back(x.get<std::int64_t>());
            c.domain.voxels.push_back(std::move(vox));
        }
    } else if (kind == "coset") {
        c.kind = Certificate::Kind::Coset;
        const auto& cs = j.at("coset");
        c.coset.level = cs.at(0).get<int>();
        for (const auto& x : cs.at(1)) c.coset.vtype.push_back(x.get<std::uint32_t>());
    } else {
        throw std::invalid_argument("certificate: unknown kind '" + kind + "'");
    }
    return c;
}

CertifyOutcome certify_instance_at(const VolumeVector& v, const Rat& rho, const CertifyOptions& opt) {
    Zonotope z = generators_from_volume_vector(v, opt.lll_delta);
    HPolytope poly = facet_inequalities(z);

    SearchOptions search{opt.symmetry, opt.solver};
    Certificate cert;
    cert.v = v.entries;
    cert.gen = z.generators;
    if (rho != kThreeFifths) cert.rho = rho;

    // Strict pass with the cheap b-free bound: any positive margin proves
    // strictness when a domain exists, so validity of the bound is not needed.
    Int d_cheap = denominator_bound_compact(poly, /*include_rhs=*/false);
    CoveringVerdict strict = decide_ge(poly, rho, d_cheap, search);
    if (strict.bounded()) {
        cert.eps = strict.dilation_used - rho;  // -1/(2 s d_cheap)
        cert.kind = Certificate::Kind::Domain;
        cert.domain = strict.domain;
        return {std::move(cert), false, strict.domain.depth()};
    }

    Int d_full = denominator_bound(poly);
    CoveringVerdict le = decide_le(poly, rho, d_full, search);
    cert.eps = le.dilation_used - rho;  // +1/(2 s d_full)
    cert.dbound = d_full;
    if (le.bounded()) {
        cert.kind = Certificate::Kind::Domain;
        cert.domain = le.domain;
        return {std::move(cert), true, le.domain.depth()};
    }
    cert.kind = Certificate::Kind::Coset;
    cert.coset = le.witness;
    return {std::move(cert), false, 0};
}

CertifyOutcome certify_instance(const VolumeVector& v, const CertifyOptions& opt) {
    CertifyOutcome out = certify_instance_at(v, kThreeFifths, opt);
    if (out.cert.kind == Certificate::Kind::Coset) throw CounterexampleError(out.cert);
    return out;
}

namespace {

struct InstanceResult {
    std::string line;
    bool tight = false;
    int depth = 0;
    std::string error;
    IntVec v;
};

InstanceResult process_one(const VolumeVector& v, const CertifyOptions& copt) {
    InstanceResult r;
    r.v = v.entries;
    try {
        CertifyOutcome out = certify_instance(v, copt);
        r.line = certificate_to_line(out.cert);
        r.tight = out.tight_candidate;
        r.depth = out.depth;
    } catch (const CounterexampleError& e) {
        r.error = "counterexample at " + certificate_to_line(e.cert);
    } catch (const std::exception& e) {
        r.error = e.what();
    }
    return r;
}

std::string vec_str(const IntVec& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ',';
        s += v[i].get_str();
    }
    return s + ")";
}

CampaignReport run_campaign_impl(const CampaignOptions& opt, bool parallel) {
    // compact staging: 2.1M vectors at full scale would be heavy as mpz
    std::vector<std::array<long, 4>> all;
    enumerate_volume_vectors(opt.max_sum, [&](const VolumeVector& v) {
        all.push_back({v.entries[0].get_si(), v.entries[1].get_si(), v.entries[2].get_si(),
                       v.entries[3].get_si()});
        return true;
    });

    std::ofstream out;
    if (!opt.out_path.empty()) {
        out.open(opt.out_path, std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open output file: " + opt.out_path);
    }

    CampaignReport report;
    report.total = static_cast<long>(all.size());

    const std::size_t block_size = 1024;
    std::vector<InstanceResult> results;
    for (std::size_t base = 0; base < all.size(); base += block_size) {
        const std::size_t count = std::min(block_size, all.size() - base);
        results.assign(count, {});
        auto instance = [&](std::size_t k) {
            const auto& e = all[base + k];
            return VolumeVector{{Int(e[0]), Int(e[1]), Int(e[2]), Int(e[3])}};
        };
        if (parallel) {
            const int threads = opt.jobs > 0 ? opt.jobs : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(threads)
            for (std::size_t k = 0; k < count; ++k)
                results[k] = process_one(instance(k), opt.certify);
        } else {
            for (std::size_t k = 0; k < count; ++k)
                results[k] = process_one(instance(k), opt.certify);
        }
        for (std::size_t k = 0; k < count; ++k) {
            InstanceResult& r = results[k];
            if (!r.error.empty()) {
                report.failures.push_back(vec_str(r.v) + ": " + r.error);
                print_report(std::cerr, report);
                throw std::runtime_error("campaign aborted at " + vec_str(r.v) + ": " + r.error);
            }
            if (r.tight)
                report.tight.push_back(r.v);
            else
                ++report.certified_strict;
            ++report.depth_histogram[r.depth];
            if (out.is_open()) {
                out << r.line << '\n';
                if (!out) throw std::runtime_error("write failed: " + opt.out_path);
            }
        }
    }
    return report;
}

}  // namespace

CampaignReport run_campaign_serial(const CampaignOptions& opt) { return run_campaign_impl(opt, false); }

CampaignReport run_campaign_openmp(const CampaignOptions& opt) { return run_campaign_impl(opt, true); }

CampaignReport run_campaign(const CampaignOptions& opt) {
    return opt.jobs == 1 ? run_campaign_serial(opt) : run_campaign_openmp(opt);
}

void print_report(std::ostream& os, const CampaignReport& r) {
    os << "instances: " << r.total << "\n";
    os << "strict (mu < 3/5): " << r.certified_strict << "\n";
    os << "tight candidates (mu = 3/5): " << r.tight.size();
    for (const auto& v : r.tight) os << " " << vec_str(v);
    os << "\n";
    os << "certificate depth histogram:";
    for (const auto& [depth, n] : r.depth_histogram) os << " " << depth << ":" << n;
    os << "\n";
    if (!r.failures.empty()) {
        os << "failures:\n";
        for (const auto& f : r.failures) os << "  " << f << "\n";
    }
    // machine-readable summary
    nlohmann::ordered_json j;
    j["total"] = r.total;
    j["strict"] = r.certified_strict;
    auto tl = nlohmann::ordered_json::array();
    for (const auto& v : r.tight) {
        auto one = nlohmann::ordered_json::array();
        for (const auto& x : v) one.push_back(x.get_si());
        tl.push_back(one);
    }
    j["tight"] = tl;
    nlohmann::ordered_json hist;
    for (const auto& [depth, n] : r.depth_histogram) hist[std::to_string(depth)] = n;
    j["depth_histogram"] = hist;
    j["failures"] = r.failures.size();
    os << "summary " << j.dump() << "\n";
}

}  // namespace zonocover
