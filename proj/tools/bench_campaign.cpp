// Times the serial reference campaign against the OpenMP one on the same
// volume range and confirms the outputs are byte-identical.

#include "zonocover/pipeline.hpp"

#include <CLI11.hpp>
#include <omp.h>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

double timed(const zonocover::CampaignOptions& opt, zonocover::CampaignReport& report,
             bool parallel) {
    auto t0 = std::chrono::steady_clock::now();
    report = parallel ? zonocover::run_campaign_openmp(opt) : zonocover::run_campaign_serial(opt);
    auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double>(t1 - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"campaign benchmark: serial reference vs OpenMP"};
    long max_sum = 60;
    int jobs = 0;
    app.add_option("--max-sum", max_sum, "maximum volume");
    app.add_option("--jobs", jobs, "threads for the parallel run (0 = default)");
    CLI11_PARSE(app, argc, argv);

    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path();
    std::string serial_path = (dir / "bench_serial.jsonl").string();
    std::string parallel_path = (dir / "bench_parallel.jsonl").string();

    zonocover::CampaignOptions opt;
    opt.max_sum = max_sum;

    zonocover::CampaignReport rs, rp;
    opt.jobs = 1;
    opt.out_path = serial_path;
    double t_serial = timed(opt, rs, false);
    opt.jobs = jobs;
    opt.out_path = parallel_path;
    double t_parallel = timed(opt, rp, true);

    bool identical = slurp(serial_path) == slurp(parallel_path);
    int threads = jobs > 0 ? jobs : omp_get_max_threads();

    std::printf("max-sum %ld, %ld instances\n", max_sum, rs.total);
    std::printf("  serial reference : %8.2f s\n", t_serial);
    std::printf("  openmp (%2d thr)  : %8.2f s   speedup %.2fx\n", threads, t_parallel,
                t_parallel > 0 ? t_serial / t_parallel : 0.0);
    std::printf("  outputs byte-identical: %s\n", identical ? "yes" : "NO");

    fs::remove(serial_path);
    fs::remove(parallel_path);
    return identical ? 0 : 1;
}
