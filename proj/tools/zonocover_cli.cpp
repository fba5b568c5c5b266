#include "zonocover/check.hpp"
#include "zonocover/pipeline.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace zonocover;

VolumeVector parse_volumes(const std::vector<std::string>& args) {
    IntVec entries;
    for (const std::string& a : args) {
        std::stringstream ss(a);
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            if (tok.empty()) continue;
            try {
                entries.emplace_back(tok);
            } catch (const std::invalid_argument&) {
                throw std::invalid_argument("not an integer: '" + tok + "'");
            }
        }
    }
    if (entries.size() < 2) throw std::invalid_argument("need at least two volume entries");
    for (const Int& e : entries)
        if (e <= 0) throw std::invalid_argument("volume entries must be positive");
    return VolumeVector{entries};
}

SolverMode parse_solver(const std::string& s) {
    if (s == "exact") return SolverMode::Exact;
    if (s == "bbox") return SolverMode::BoundingBox;
    if (s == "hybrid") return SolverMode::Hybrid;
    throw std::invalid_argument("unknown solver '" + s + "' (expected exact|bbox|hybrid)");
}

HPolytope read_hpolytope(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open H-polytope file: " + path);
    std::size_t m = 0, d = 0;
    if (!(in >> m >> d) || m == 0 || d == 0)
        throw std::invalid_argument("H-polytope file must start with 'm d'");
    HPolytope p{IntMatrix(m, d), IntVec(m)};
    for (std::size_t i = 0; i < m; ++i) {
        std::string tok;
        for (std::size_t j = 0; j < d; ++j) {
            if (!(in >> tok)) throw std::invalid_argument("H-polytope file truncated");
            p.a(i, j) = Int(tok);
        }
        if (!(in >> tok)) throw std::invalid_argument("H-polytope file truncated");
        p.b[i] = Int(tok);
    }
    return p;
}

int cmd_enumerate(long max_sum) {
    std::ostringstream buf;
    long flushed = 0;
    enumerate_volume_vectors(max_sum, [&](const VolumeVector& v) {
        buf << v.entries[0] << ' ' << v.entries[1] << ' ' << v.entries[2] << ' ' << v.entries[3] << '\n';
        if (++flushed % 4096 == 0) {
            std::cout << buf.str();
            buf.str("");
        }
        return true;
    });
    std::cout << buf.str();
    return 0;
}

int cmd_build(const std::vector<std::string>& volumes, const std::string& delta_str) {
    VolumeVector v = parse_volumes(volumes);
    Zonotope z = generators_from_volume_vector(v, rat_from_string(delta_str));
    for (std::size_t i = 0; i < z.generators.rows(); ++i) {
        for (std::size_t j = 0; j < z.generators.cols(); ++j) {
            if (j) std::cout << ' ';
            std::cout << z.generators(i, j);
        }
        std::cout << '\n';
    }
    return 0;
}

int cmd_certify(const std::vector<std::string>& volumes, const std::string& rho_str,
                const CertifyOptions& copt, const std::string& out_path) {
    VolumeVector v = parse_volumes(volumes);
    Rat rho = rat_from_string(rho_str);
    CertifyOutcome out = certify_instance_at(v, rho, copt);
    std::string line = certificate_to_line(out.cert);
    if (out_path.empty()) {
        std::cout << line << '\n';
    } else {
        std::ofstream f(out_path, std::ios::trunc);
        if (!f) throw std::runtime_error("cannot open output file: " + out_path);
        f << line << '\n';
    }
    if (out.cert.kind == Certificate::Kind::Coset) {
        std::cerr << "bound " << rat_to_string(rho) << " disproved; coset witness emitted\n";
        if (!out.cert.rho) return 1;  // the campaign bound must never fail
    }
    return 0;
}

int cmd_certify_all(const CampaignOptions& opt, bool quiet_file) {
    CampaignReport report = run_campaign(opt);
    print_report(std::cout, report);
    if (!quiet_file && !opt.out_path.empty())
        std::cout << "certificates written to " << opt.out_path << "\n";
    return report.ok() ? 0 : 1;
}

int cmd_check(const std::string& path, const CheckOptions& opt) {
    CheckReport report = check_certificates_file(path, opt);
    print_check_report(std::cout, report);
    return report.ok() ? 0 : 1;
}

int cmd_mu(const std::vector<std::string>& volumes, const std::string& hpoly_path,
           const Rat& delta) {
    HPolytope p;
    if (!hpoly_path.empty()) {
        p = read_hpolytope(hpoly_path);
    } else {
        VolumeVector v = parse_volumes(volumes);
        p = facet_inequalities(generators_from_volume_vector(v, delta));
    }
    ExactMuResult res = exact_mu(p);
    std::cout << rat_to_string(res.mu) << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact covering-radius certification for lattice zonotopes"};
    app.require_subcommand(1);

    long max_sum = 195;
    int jobs = 1;
    std::string out_path, rho_str = "3/5", delta_str = "3/4", solver_str = "exact", path;
    std::vector<std::string> volumes;
    bool no_symmetric = false, skip_enumeration = false;
    long check_max_sum = -1;

    auto* enumerate = app.add_subcommand("enumerate", "list primitive increasing volume vectors");
    enumerate->add_option("--max-sum", max_sum, "maximum volume (sum of entries)")->required();

    auto* build = app.add_subcommand("build", "construct generators from a volume vector");
    build->add_option("volumes", volumes, "volume vector, e.g. 1,2,3,4")->required()->expected(-1);
    build->add_option("--lll-delta", delta_str, "LLL reduction parameter");

    auto* certify = app.add_subcommand("certify", "certify one instance");
    certify->add_option("volumes", volumes, "volume vector")->required()->expected(-1);
    certify->add_option("--rho", rho_str, "covering radius bound to certify");
    certify->add_option("--lll-delta", delta_str, "LLL reduction parameter");
    certify->add_option("--solver", solver_str, "exact|bbox|hybrid");
    certify->add_flag("--no-symmetric", no_symmetric, "disable the half-tree symmetry mode");
    certify->add_option("--out", out_path, "write the certificate line to a file");

    auto* certify_all = app.add_subcommand("certify-all", "run the campaign up to a volume bound");
    certify_all->add_option("--max-sum", max_sum, "maximum volume")->required();
    certify_all->add_option("--jobs", jobs, "worker threads (1 = serial reference, 0 = default)");
    certify_all->add_option("--out", out_path, "certificate output file");
    certify_all->add_option("--solver", solver_str, "exact|bbox|hybrid");
    certify_all->add_flag("--no-symmetric", no_symmetric, "disable the half-tree symmetry mode");

    auto* check = app.add_subcommand("check", "verify a certificate file");
    check->add_option("path", path, "certificate file")->required();
    check->add_option("--max-sum", check_max_sum, "expected enumeration bound (default: inferred)");
    check->add_flag("--skip-enumeration", skip_enumeration, "skip the completeness step");

    auto* mu = app.add_subcommand("mu", "exact covering radius");
    mu->add_option("volumes", volumes, "volume vector")->expected(-1);
    mu->add_option("--hpoly", path, "H-polytope file ('m d' header, then rows 'a_1 .. a_d b')");
    mu->add_option("--lll-delta", delta_str, "LLL reduction parameter");

    auto* tight_scan = app.add_subcommand("tight-scan", "report tight candidates up to a volume bound");
    tight_scan->add_option("--max-sum", max_sum, "maximum volume")->required();
    tight_scan->add_option("--jobs", jobs, "worker threads");
    tight_scan->add_option("--solver", solver_str, "exact|bbox|hybrid");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        CertifyOptions copt;
        copt.lll_delta = rat_from_string(delta_str);
        copt.solver = parse_solver(solver_str);
        copt.symmetry = no_symmetric ? SymmetryMode::Off : SymmetryMode::Auto;

        if (enumerate->parsed()) return cmd_enumerate(max_sum);
        if (build->parsed()) return cmd_build(volumes, delta_str);
        if (certify->parsed()) return cmd_certify(volumes, rho_str, copt, out_path);
        if (certify_all->parsed() || tight_scan->parsed()) {
            CampaignOptions opt;
            opt.max_sum = max_sum;
            opt.jobs = jobs;
            opt.out_path = tight_scan->parsed() ? std::string() : out_path;
            opt.certify = copt;
            return cmd_certify_all(opt, tight_scan->parsed());
        }
        if (check->parsed()) {
            CheckOptions opt;
            if (check_max_sum >= 0) opt.expected_max_sum = check_max_sum;
            opt.skip_enumeration = skip_enumeration;
            return cmd_check(path, opt);
        }
        if (mu->parsed()) {
            if (volumes.empty() && path.empty())
                throw std::invalid_argument("mu needs a volume vector or --hpoly FILE");
            return cmd_mu(volumes, mu->count("--hpoly") ? path : std::string(), copt.lll_delta);
        }
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
