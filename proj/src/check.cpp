#include "zonocover/check.hpp"

#include "zonocover/linalg.hpp"
#include "zonocover/pipeline.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

namespace zonocover {

namespace {

const Rat kDefaultRho = make_rat(3, 5);

struct FacetSystem {
    std::vector<IntVec> rows;
    IntVec rhs;
};

/// Facet rows of the origin-centered zonotope, re-derived here: wedge
/// normals over (d-1)-subsets of generators, pair scaled by 2, each row
/// reduced by its gcd. Must match the documented producer normalization
/// so that the denominator bounds below are comparable.
FacetSystem local_facets(const IntMatrix& gen) {
    const std::size_t d = gen.rows(), n = gen.cols();
    FacetSystem out;
    std::vector<std::vector<std::size_t>> subsets;
    std::vector<std::size_t> cur;
    auto rec = [&](auto&& self, std::size_t start) -> void {
        if (cur.size() == d - 1) {
            subsets.push_back(cur);
            return;
        }
        for (std::size_t i = start; i < n; ++i) {
            cur.push_back(i);
            self(self, i + 1);
            cur.pop_back();
        }
    };
    rec(rec, 0);

    for (const auto& s : subsets) {
        IntVec normal(d);
        if (d == 1) {
            normal[0] = 1;
        } else {
            for (std::size_t drop = 0; drop < d; ++drop) {
                IntMatrix minor(d - 1, d - 1);
                std::size_t rr = 0;
                for (std::size_t r = 0; r < d; ++r) {
                    if (r == drop) continue;
                    for (std::size_t c = 0; c + 1 < d; ++c) minor(rr, c) = gen(r, s[c]);
                    ++rr;
                }
                Int m = det(minor);
                normal[drop] = (drop % 2 == 0) ? m : Int(-m);
            }
        }
        bool zero = true;
        for (const Int& x : normal)
            if (x != 0) { zero = false; break; }
        if (zero) continue;
        Int b2(0);
        for (std::size_t i = 0; i < n; ++i) {
            Int dot(0);
            for (std::size_t r = 0; r < d; ++r) dot += normal[r] * gen(r, i);
            b2 += abs(dot);
        }
        IntVec arow(d);
        for (std::size_t r = 0; r < d; ++r) arow[r] = 2 * normal[r];
        Int g = b2;
        for (const Int& x : arow) g = int_gcd(g, x);
        for (Int& x : arow) x /= g;
        out.rows.push_back(arow);
        out.rhs.push_back(b2 / g);
        IntVec neg(d);
        for (std::size_t r = 0; r < d; ++r) neg[r] = -arow[r];
        out.rows.push_back(neg);
        out.rhs.push_back(b2 / g);
    }
    return out;
}

Int local_full_bound(const FacetSystem& f, std::size_t d) {
    const std::size_t m = f.rows.size();
    Int best(1);
    std::vector<std::size_t> idx(d + 1);
    for (std::size_t j = 0; j <= d; ++j) idx[j] = j;
    while (true) {
        IntMatrix sub(d + 1, d + 1);
        for (std::size_t r = 0; r <= d; ++r) {
            for (std::size_t c = 0; c < d; ++c) sub(r, c) = f.rows[idx[r]][c];
            sub(r, d) = f.rhs[idx[r]];
        }
        Int dd = abs(det(sub));
        if (dd > best) best = dd;
        std::size_t j = d + 1;
        while (j-- > 0) {
            if (idx[j] + (d + 1 - j) < m) {
                ++idx[j];
                for (std::size_t k = j + 1; k <= d; ++k) idx[k] = idx[k - 1] + 1;
                break;
            }
            if (j == 0) return best;
        }
    }
}

Int local_cheap_bound(const FacetSystem& f, std::size_t d) {
    IntMatrix gram(d, d, Int(0));
    for (const auto& row : f.rows)
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j) gram(i, j) += row[i] * row[j];
    Int g = det(gram);
    Int r = isqrt_ceil(g);
    return r < 1 ? Int(1) : r;
}

/// rhs of the dilated, root-centered body: lambda*b_i + (1/2) sum_j a_ij.
RatVec body_rhs(const FacetSystem& f, const Rat& lambda, std::size_t d) {
    RatVec rhs(f.rows.size());
    for (std::size_t i = 0; i < f.rows.size(); ++i) {
        Int rowsum(0);
        for (std::size_t j = 0; j < d; ++j) rowsum += f.rows[i][j];
        rhs[i] = lambda * Rat(f.rhs[i]) + make_rat(rowsum, Int(2));
    }
    return rhs;
}

struct RecordChecker {
    const Certificate& c;
    std::size_t n, d;
    std::string* error;
    std::string* step;

    bool fail(const std::string& s, const std::string& msg) {
        *step = s;
        *error = msg;
        return false;
    }

    bool run() {
        // 2a: the generators must reproduce the stated volume vector
        if (c.gen.rows() != n - 1 || c.gen.cols() != n)
            return fail("2a", "generator matrix shape mismatch");
        for (std::size_t i = 0; i < n; ++i) {
            Int dd = det(c.gen.without_col(i));
            if (abs(dd) != c.v[i]) return fail("2a", "volume vector mismatch at index " + std::to_string(i));
        }

        FacetSystem facets = local_facets(c.gen);
        const Rat rho = c.rho ? *c.rho : kDefaultRho;
        const Int s = rat_den(rho);

        // 2b: margin validity
        if (c.eps > 0) {
            if (!c.dbound) return fail("2b", "positive margin without recorded denominator bound");
            Int dfull = local_full_bound(facets, d);
            if (!(c.eps < make_rat(Int(1), s * dfull)))
                return fail("2b", "margin " + rat_to_string(c.eps) + " not below 1/(s*D), D=" + dfull.get_str());
        } else if (c.eps < 0) {
            Int dcheap = local_cheap_bound(facets, d);
            if (c.eps != -make_rat(Int(1), 2 * s * dcheap))
                return fail("2b", "negative margin is not the standardized -1/(2*s*D_cheap)");
        } else {
            return fail("2b", "zero margin");
        }

        const Rat lambda = rho + c.eps;
        if (!(lambda > 0)) return fail("2b", "margin pushes dilation below zero");
        RatVec rhs = body_rhs(facets, lambda, d);

        // 2c: the geometric content
        if (c.kind == Certificate::Kind::Domain) return check_domain(facets, rhs);
        return check_coset(facets, rhs, lambda);
    }

    bool check_domain(const FacetSystem& facets, const RatVec& rhs) {
        if (c.domain.voxels.empty()) return fail("2c", "empty voxel list");
        using Key = std::pair<int, std::vector<std::uint32_t>>;
        std::set<Key> leaves;
        Rat measure(0);
        for (const auto& v : c.domain.voxels) {
            if (v.vtype.size() != d || v.disp.size() != d) return fail("2c", "voxel dimension mismatch");
            if (v.level < 0 || v.level > 30) return fail("2c", "voxel level out of range");
            for (std::uint32_t t : v.vtype)
                if (static_cast<std::uint64_t>(t) >= (std::uint64_t(1) << v.level))
                    return fail("2c", "voxel type out of range");
            if (!leaves.insert({v.level, v.vtype}).second) return fail("2c", "duplicate voxel type");
            measure += make_rat(Int(1), int_pow2(static_cast<unsigned long>(v.level) * d));
        }
        if (measure != 1) return fail("2c", "total measure " + rat_to_string(measure) + " != 1");
        std::set<Key> inner;
        for (const auto& [lev, ty] : leaves) {
            std::vector<std::uint32_t> t = ty;
            for (int l = lev; l-- > 0;) {
                for (auto& x : t) x >>= 1;
                if (leaves.count({l, t})) return fail("2c", "nested voxel types");
                if (!inner.insert({l, t}).second) break;
            }
        }
        std::vector<Key> stack{{0, std::vector<std::uint32_t>(d, 0)}};
        while (!stack.empty()) {
            Key k = stack.back();
            stack.pop_back();
            if (leaves.count(k)) continue;
            if (!inner.count(k)) return fail("2c", "voxel types are not the leaves of a full subtree");
            const std::size_t kids = std::size_t(1) << d;
            for (std::size_t mask = 0; mask < kids; ++mask) {
                std::vector<std::uint32_t> child = k.second;
                for (std::size_t j = 0; j < d; ++j)
                    child[j] = (child[j] << 1) | (static_cast<std::uint32_t>(mask >> (d - 1 - j)) & 1u);
                stack.push_back({k.first + 1, child});
            }
        }
        // exact containment of every closed voxel corner
        for (const auto& v : c.domain.voxels) {
            const Int den = int_pow2(static_cast<unsigned long>(v.level));
            const std::size_t corners = std::size_t(1) << d;
            for (std::size_t mask = 0; mask < corners; ++mask) {
                for (std::size_t i = 0; i < facets.rows.size(); ++i) {
                    Rat acc(0);
                    for (std::size_t j = 0; j < d; ++j) {
                        Rat x = Rat(Int(v.disp[j])) +
                                make_rat(Int(v.vtype[j]) + (((mask >> j) & 1) ? 1 : 0), den);
                        acc += Rat(facets.rows[i][j]) * x;
                    }
                    if (acc > rhs[i]) return fail("2c", "voxel escapes the dilated zonotope");
                }
            }
        }
        return true;
    }

    bool check_coset(const FacetSystem& facets, const RatVec& rhs, const Rat& lambda) {
        // exhaustive scan of the bounding box: no integer translate of the
        // coset point may satisfy the system
        if (c.coset.vtype.size() != d) return fail("2c", "coset dimension mismatch");
        const Int den = int_pow2(static_cast<unsigned long>(c.coset.level));
        RatVec point(d);
        for (std::size_t j = 0; j < d; ++j) point[j] = make_rat(Int(c.coset.vtype[j]), den);

        std::vector<Int> lo(d), hi(d);
        const Rat half = make_rat(1, 2);
        for (std::size_t j = 0; j < d; ++j) {
            Int width(0);
            for (std::size_t i = 0; i < n; ++i) width += abs(c.gen(j, i));
            Rat w = lambda * make_rat(width, Int(2));
            lo[j] = rat_ceil(half - w - point[j]) - 1;
            hi[j] = rat_floor(half + w - point[j]) + 1;
        }
        std::vector<Int> q = lo;
        while (true) {
            bool inside = true;
            for (std::size_t i = 0; i < facets.rows.size() && inside; ++i) {
                Rat acc(0);
                for (std::size_t j = 0; j < d; ++j) acc += Rat(facets.rows[i][j]) * (Rat(q[j]) + point[j]);
                if (acc > rhs[i]) inside = false;
            }
            if (inside) return fail("2c", "coset point is covered, certificate invalid");
            std::size_t j = d;
            while (j-- > 0) {
                if (q[j] < hi[j]) {
                    q[j] += 1;
                    for (std::size_t k = j + 1; k < d; ++k) q[k] = lo[k];
                    break;
                }
                if (j == 0) return true;
            }
        }
    }
};

std::string vec_of(const IntVec& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ',';
        s += v[i].get_str();
    }
    return s + ")";
}

}  // namespace

CheckReport check_certificates(std::istream& in, const CheckOptions& opt) {
    CheckReport report;
    std::vector<std::array<long, 4>> seen;  // compact: the full campaign has 2.1M records
    bool campaign_shape = true;
    Int max_sum(0);

    std::string line;
    long lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        ++report.records;
        Certificate c;
        try {
            c = certificate_from_line(line);
        } catch (const std::exception& e) {
            report.failures.push_back({lineno, "?", "format", e.what()});
            campaign_shape = false;
            continue;
        }
        if (c.v.size() != 4 || c.rho) {
            campaign_shape = false;
        } else {
            std::array<long, 4> key{};
            bool fits = true;
            Int sum(0);
            for (std::size_t j = 0; j < 4; ++j) {
                fits = fits && c.v[j].fits_slong_p();
                if (fits) key[j] = c.v[j].get_si();
                sum += c.v[j];
            }
            if (!fits)
                campaign_shape = false;
            else
                seen.push_back(key);
            if (sum > max_sum) max_sum = sum;
        }

        std::string step, error;
        RecordChecker rc{c, c.v.size(), c.v.size() - 1, &error, &step};
        if (!rc.run()) report.failures.push_back({lineno, vec_of(c.v), step, error});
    }

    if (!opt.skip_enumeration) {
        long bound = opt.expected_max_sum ? *opt.expected_max_sum
                                          : (max_sum.fits_slong_p() ? max_sum.get_si() : 0);
        if (!campaign_shape) {
            report.failures.push_back({0, "-", "1", "file contains non-campaign records; enumeration not checkable"});
        } else {
            std::size_t pos = 0;
            bool mismatch = false;
            enumerate_volume_vectors(bound, [&](const VolumeVector& v) {
                std::array<long, 4> key{v.entries[0].get_si(), v.entries[1].get_si(),
                                        v.entries[2].get_si(), v.entries[3].get_si()};
                if (pos >= seen.size() || seen[pos] != key) {
                    mismatch = true;
                    return false;
                }
                ++pos;
                return true;
            });
            if (mismatch || pos != seen.size())
                report.failures.push_back(
                    {0, "-", "1",
                     "records do not match the complete enumeration up to sum " + std::to_string(bound)});
        }
    }
    return report;
}

CheckReport check_certificates_file(const std::string& path, const CheckOptions& opt) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open certificate file: " + path);
    return check_certificates(in, opt);
}

void print_check_report(std::ostream& os, const CheckReport& r) {
    os << "records checked: " << r.records << "\n";
    if (r.ok()) {
        os << "all certificates valid\n";
    } else {
        os << r.failures.size() << " failure(s):\n";
        for (const auto& f : r.failures)
            os << "  line " << f.record << " " << f.vec << " step " << f.step << ": " << f.message << "\n";
    }
}

}  // namespace zonocover
