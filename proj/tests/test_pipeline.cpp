#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "zonocover/check.hpp"
#include "zonocover/pipeline.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace zonocover;

namespace {

IntVec volumes(std::initializer_list<long> xs) {
    IntVec v;
    for (long x : xs) v.emplace_back(x);
    return v;
}

std::vector<IntVec> enumerate_all(long max_sum) {
    std::vector<IntVec> out;
    enumerate_volume_vectors(max_sum, [&](const VolumeVector& v) {
        out.push_back(v.entries);
        return true;
    });
    return out;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string temp_file(const char* name) {
    return (std::filesystem::temp_directory_path() / name).string();
}

CheckReport check_string(const std::string& content, bool skip_enum = false) {
    std::istringstream in(content);
    CheckOptions opt;
    opt.skip_enumeration = skip_enum;
    return check_certificates(in, opt);
}

}  // namespace

TEST_CASE("enumerate_volume_vectors: smallest ranges") {
    CHECK(enumerate_all(10) == std::vector<IntVec>{volumes({1, 2, 3, 4})});
    CHECK(enumerate_all(11) ==
          std::vector<IntVec>{volumes({1, 2, 3, 4}), volumes({1, 2, 3, 5})});
    CHECK(count_volume_vectors(9) == 0);
}

TEST_CASE("enumerate_volume_vectors: strictly increasing, primitive, within bound") {
    std::vector<IntVec> all = enumerate_all(40);
    CHECK(all.size() == 2623);
    for (std::size_t k = 0; k < all.size(); ++k) {
        const IntVec& v = all[k];
        Int g(0), sum(0);
        for (const Int& x : v) {
            g = int_gcd(g, x);
            sum += x;
        }
        CHECK(g == 1);
        CHECK(sum <= 40);
        CHECK(v[0] < v[1]);
        CHECK(v[1] < v[2]);
        CHECK(v[2] < v[3]);
        if (k) CHECK(all[k - 1] < v);  // lexicographic, no duplicates
    }
}

TEST_CASE("certify_instance: strict and tight outcomes") {
    CertifyOutcome strict = certify_instance(VolumeVector{volumes({1, 2, 3, 5})});
    CHECK(!strict.tight_candidate);
    CHECK(strict.cert.eps < 0);
    CHECK(!strict.cert.dbound);
    CHECK(strict.cert.kind == Certificate::Kind::Domain);

    CertifyOutcome tight = certify_instance(VolumeVector{volumes({1, 3, 4, 6})});
    CHECK(tight.tight_candidate);
    CHECK(tight.cert.eps > 0);
    REQUIRE(tight.cert.dbound);
    // recorded margin is the safe-interval half-step 1/(2*5*D)
    CHECK(tight.cert.eps == make_rat(Int(1), 10 * *tight.cert.dbound));
}

TEST_CASE("certify_instance_at: disproving a low bound yields a coset record") {
    CertifyOutcome out = certify_instance_at(VolumeVector{volumes({1, 2, 3, 4})}, make_rat(1, 2));
    CHECK(out.cert.kind == Certificate::Kind::Coset);
    REQUIRE(out.cert.rho);
    CHECK(*out.cert.rho == make_rat(1, 2));
    // the coset record must verify on its own
    std::string line = certificate_to_line(out.cert);
    CheckReport r = check_string(line, /*skip_enum=*/true);
    CHECK(r.ok());
}

TEST_CASE("certificate lines round-trip") {
    CertifyOutcome out = certify_instance(VolumeVector{volumes({1, 2, 4, 7})});
    std::string line = certificate_to_line(out.cert);
    Certificate back = certificate_from_line(line);
    CHECK(back.v == out.cert.v);
    CHECK(back.gen == out.cert.gen);
    CHECK(back.eps == out.cert.eps);
    CHECK(back.kind == out.cert.kind);
    CHECK(back.domain.voxels.size() == out.cert.domain.voxels.size());
    CHECK(certificate_to_line(back) == line);
}

TEST_CASE("campaign at 20: the three tight vectors, verified output, jobs-independent bytes") {
    std::string path1 = temp_file("zc_test_c20_serial.jsonl");
    std::string path2 = temp_file("zc_test_c20_par.jsonl");

    CampaignOptions opt;
    opt.max_sum = 20;
    opt.jobs = 1;
    opt.out_path = path1;
    CampaignReport serial = run_campaign(opt);
    CHECK(serial.total == 93);
    CHECK(serial.certified_strict == 90);
    REQUIRE(serial.tight.size() == 3);
    CHECK(serial.tight[0] == volumes({1, 2, 3, 4}));
    CHECK(serial.tight[1] == volumes({1, 3, 4, 6}));
    CHECK(serial.tight[2] == volumes({1, 3, 4, 7}));
    CHECK(serial.total == serial.certified_strict + static_cast<long>(serial.tight.size()));

    opt.jobs = 2;
    opt.out_path = path2;
    CampaignReport parallel = run_campaign(opt);
    CHECK(parallel.tight == serial.tight);
    CHECK(parallel.depth_histogram == serial.depth_histogram);
    CHECK(slurp(path1) == slurp(path2));

    CheckReport check = check_certificates_file(path1);
    CHECK(check.records == 93);
    CHECK(check.ok());

    std::filesystem::remove(path1);
    std::filesystem::remove(path2);
}

TEST_CASE("checker rejects tampered certificates with the right step") {
    // one certification, shared across the subcases
    static const std::string good =
        certificate_to_line(certify_instance(VolumeVector{volumes({1, 3, 4, 6})}).cert);

    SUBCASE("deleting a voxel breaks the subtree/measure step") {
        Certificate c = certificate_from_line(good);
        c.domain.voxels.pop_back();
        CheckReport r = check_string(certificate_to_line(c), true);
        REQUIRE(!r.ok());
        CHECK(r.failures[0].step == "2c");
    }
    SUBCASE("inflating eps past 1/(5D) breaks the margin step") {
        Certificate c = certificate_from_line(good);
        c.eps = make_rat(Int(1), 4 * *c.dbound);
        CheckReport r = check_string(certificate_to_line(c), true);
        REQUIRE(!r.ok());
        CHECK(r.failures[0].step == "2b");
    }
    SUBCASE("perturbing a generator entry breaks the volume-vector step") {
        Certificate c = certificate_from_line(good);
        c.gen(0, 0) += 1;
        CheckReport r = check_string(certificate_to_line(c), true);
        REQUIRE(!r.ok());
        CHECK(r.failures[0].step == "2a");
    }
    SUBCASE("the unmodified record passes") {
        CheckReport r = check_string(good, true);
        CHECK(r.ok());
    }
}

TEST_CASE("checker flags an incomplete enumeration") {
    CampaignOptions opt;
    opt.max_sum = 12;
    opt.jobs = 1;
    std::ostringstream lines;
    enumerate_volume_vectors(12, [&](const VolumeVector& v) {
        lines << certificate_to_line(certify_instance(v).cert) << "\n";
        return true;
    });
    std::string content = lines.str();
    CHECK(check_string(content).ok());
    // drop the first record: now incomplete for the inferred bound
    std::string tail = content.substr(content.find('\n') + 1);
    CheckReport r = check_string(tail);
    REQUIRE(!r.ok());
    CHECK(r.failures[0].step == "1");
    // but each record alone is still internally valid
    CHECK(check_string(tail, true).ok());
}

TEST_CASE("malformed lines are reported as format failures") {
    CheckReport r = check_string("{\"v\":[1,2,3,4]\n", true);
    REQUIRE(!r.ok());
    CHECK(r.failures[0].step == "format");
}
