// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.
#include "support.hpp"

#include "sympidx/classical.hpp"
#include "sympidx/cli.hpp"
#include "sympidx/error.hpp"
#include "sympidx/lagrangian.hpp"
#include "sympidx/maslov.hpp"
#include "sympidx/rotation.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <future>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

using namespace sympidx;
using namespace sympidx::testing;

namespace {

constexpr double kTolDelta = 1e-6;
constexpr double kTolMatrix = 1e-9;
constexpr double kTolResidual = 1e-6;
constexpr double kTolRho = 1e-6;

class Criterion {
public:
    void expect(bool ok, const std::string& what) {
        if (!ok) failures_.push_back(what);
    }
    void eq(const std::string& key, long expected, long got) {
        expect(expected == got, key + ": expected " + std::to_string(expected) + ", got " + std::to_string(got));
    }
    void near(const std::string& key, double expected, double got, double tol) {
        std::ostringstream os;
        os.precision(12);
        os << key << ": expected " << expected << " +- " << tol << ", got " << got;
        expect(std::abs(expected - got) <= tol, os.str());
    }
    const std::vector<std::string>& failures() const { return failures_; }
    void merge(const Criterion& o) { failures_.insert(failures_.end(), o.failures_.begin(), o.failures_.end()); }

private:
    std::vector<std::string> failures_;
};

SympPath turn(double a0, double a1) { return rotation_blocks_path({Polynomial::linear(a0, a1)}); }

bool report(int id, const std::string& title, const std::function<void(Criterion&)>& body) {
    Criterion c;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        body(c);
    } catch (const std::exception& e) {
        c.expect(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool ok = c.failures().empty();
    std::cout << (ok ? "PASS" : "FAIL") << " criterion " << id << ": " << title << " (" << secs << " s)\n";
    const std::size_t shown = std::min<std::size_t>(c.failures().size(), 12);
    for (std::size_t i = 0; i < shown; ++i) std::cout << "    " << c.failures()[i] << '\n';
    if (c.failures().size() > shown) std::cout << "    ... " << c.failures().size() - shown << " more\n";
    return ok;
}

// Unwrapped phase change of det(X + iY) for block-rotation angles (units of pi).
double block_turns(const std::function<std::vector<double>(double)>& angles, int steps) {
    double total = 0.0;
    cplx prev = unitary_of(rotation_blocks(angles(0.0))).determinant();
    for (int k = 1; k <= steps; ++k) {
        const cplx cur = unitary_of(rotation_blocks(angles(static_cast<double>(k) / steps))).determinant();
        total += std::arg(cur / prev);
        prev = cur;
    }
    return total / kPi;
}

// ---- property groups; each returns the number of random paths it used ----

int core_group(std::uint64_t seed, int count, Criterion& c) {
    Rng r(seed);
    for (int i = 0; i < count; ++i) {
        const auto p = random_path(r, r.integer(1, 3));
        const auto rep = maslov_index(p);
        c.expect(rep.integer_residual <= kTolResidual, "integrality residual " + std::to_string(rep.integer_residual));
        if (i % 2 == 0) c.eq("theta/2 invariance", rep.mu, maslov_index(p, {}, rep.theta / 2).mu);
    }
    return count;
}

int split_group(std::uint64_t seed, int count, Criterion& c) {
    Rng r(seed);
    for (int i = 0; i < count; ++i) {
        const auto p = random_path(r, r.integer(1, 3));
        const auto rep = maslov_index(p);
        const double a = r.uniform(0.05, 0.95);
        c.eq("catenation additivity", rep.mu, maslov_index(segment(p, 0.0, a)).mu + maslov_index(segment(p, a, 1.0)).mu);
        const double k = r.uniform(-0.9, 0.9);
        c.eq("reparameterization invariance", rep.mu, maslov_index(reparameterize(p, Polynomial({0.0, 1.0 + k, -k}))).mu);
        c.eq("theta/5 invariance", rep.mu, maslov_index(p, {}, rep.theta / 5).mu);
    }
    return count;
}

int sum_group(std::uint64_t seed, int count, Criterion& c) {
    Rng r(seed);
    for (int i = 0; i < count; ++i) {
        const auto p = random_path(r, 1), q = random_path(r, r.integer(1, 2));
        c.eq("direct-sum additivity", maslov_index(p).mu + maslov_index(q).mu, maslov_index(direct_sum(p, q)).mu);
    }
    return 2 * count;
}

int loop_group(std::uint64_t seed, int count, Criterion& c) {
    Rng r(seed);
    for (int i = 0; i < count; ++i) {
        const int n = r.integer(1, 3);
        std::vector<Polynomial> wind, inside;
        int k_total = 0;
        for (int j = 0; j < n; ++j) {
            const int k = r.integer(-2, 2);
            k_total += k;
            const double bump = r.uniform(-2.0, 2.0);
            wind.push_back(Polynomial({r.uniform(0.0, kTwoPi), kTwoPi * k + bump, -bump}));
            const double c0 = r.uniform(0.8, 2.3);
            inside.push_back(Polynomial({c0, 1.5, -1.5}));
        }
        const Mat t = random_symplectic(r, n);
        const auto winding = conjugate(rotation_blocks_path(wind), t);
        c.eq("loop integrality", 2 * k_total, check_loop_integral(winding));
        c.near("elliptic loop off the cycle", 0.0, lift_delta(conjugate(rotation_blocks_path(inside), t)).delta, kTolDelta);
        // hyperbolic loop: a fixed stretch carried once around by a rotation
        Mat d = Mat::Identity(2 * n, 2 * n);
        std::vector<Polynomial> spin, unspin;
        for (int j = 0; j < n; ++j) {
            d(j, j) = r.uniform(1.3, 3.0);
            d(n + j, n + j) = 1.0 / d(j, j);
            const double w = kTwoPi * r.integer(-2, 2);
            spin.push_back(Polynomial::linear(0.0, w));
            unspin.push_back(Polynomial::linear(0.0, -w));
        }
        const auto loop = product(product(rotation_blocks_path(spin), constant_path(d)), rotation_blocks_path(unspin));
        c.near("hyperbolic loop", 0.0, lift_delta(conjugate(loop, t)).delta, kTolDelta);
    }
    return 2 * count;
}

int rho_group(std::uint64_t seed, int count, Criterion& c) {
    Rng r(seed);
    for (int i = 0; i < count; ++i) {
        const int n = r.integer(1, 3);
        const Mat m1 = random_symplectic(r, n, 0.9), m2 = random_symplectic(r, r.integer(1, 2), 0.9);
        const Mat t = random_symplectic(r, n, 0.9);
        const cplx r1 = rho(m1);
        c.expect(std::abs(rho(t * m1 * t.inverse()) - r1) <= kTolRho, "rho naturality");
        c.expect(std::abs(rho(symplectic_direct_sum(m1, m2)) - r1 * rho(m2)) <= kTolRho, "rho product");
        const Mat o = polar_decompose(m1).o;
        c.expect(std::abs(rho(o) - unitary_of(o).determinant()) <= kTolRho, "rho determinant on U(n)");
        c.expect(std::abs(std::abs(r1) - 1.0) <= kTolRho, "rho normalization |rho| = 1");
        const double a = r.uniform(0.0, kTwoPi);
        c.expect(std::abs(rho(rotation_blocks({a})) - std::polar(1.0, a)) <= kTolRho, "rho normalization on rotations");
    }
    return count;
}

int cz_group(std::uint64_t seed, int count, Criterion& c) {
    Rng r(seed);
    int used = 0;
    for (int i = 0; used < count && i < 10 * count; ++i) {
        const auto p = random_path_from_identity(r, r.integer(1, 3));
        int cz = 0;
        try {
            cz = conley_zehnder(p).value;
        } catch (const Error& e) {
            if (e.code() == ErrorCode::Degenerate) continue;
            throw;
        }
        ++used;
        c.eq("CZ = mu - r", maslov_index(p).mu - count_r(p.end()), cz);
    }
    c.expect(used == count, "not enough nondegenerate paths");
    return used;
}

int clm_group(std::uint64_t seed, int count, Criterion& c) {
    Rng r(seed);
    for (int i = 0; i < count; ++i) {
        const auto o = random_orthogonal_path(r, r.integer(1, 3));
        const FramePath l1 = FramePath::fixed(LagrangianFrame::horizontal(o.n()));
        const FramePath l2{o, LagrangianFrame::horizontal(o.n())};
        c.eq("pair index = mu on orthogonal paths", maslov_index(o).mu, clm_index(l1, l2).value);
    }
    return count;
}

int rs_group(std::uint64_t seed, int count, Criterion& c) {
    Rng r(seed);
    for (int i = 0; i < count; ++i) {
        const auto blocks = random_diagonal_blocks(r, r.integer(1, 3));
        const auto p = direct_sum_all(blocks);
        const double s0 = s_count(blocks, 0.0), s1 = s_count(blocks, 1.0);
        const double expect = maslov_index(p).mu - 0.5 * (s0 - s1);
        const double got = rs_index_symp(p);
        c.expect(got == expect, "rs = mu - (s0 - s1)/2: expected " + std::to_string(expect) + ", got " + std::to_string(got));
    }
    return count;
}

int stability_group(std::uint64_t seed, int count, Criterion& c) {
    Rng r(seed);
    int crossings_seen = 0;
    for (int i = 0; i < count; ++i) {
        const int n = r.integer(1, 3);
        const auto p = conjugate(random_rotation_path(r, n), random_symplectic(r, n));
        const auto v = LagrangianFrame::vertical(n);
        for (const auto& x : crossings(FramePath{p, v}, v)) {
            ++crossings_seen;
            c.expect(x.stable, "crossing signature changed under 10x finer step");
        }
    }
    c.expect(crossings_seen > count, "too few crossings exercised");
    return count;
}

}  // namespace

int main() {
    bool all = true;

    all &= report(1, "CZ of R(3 pi t/2) = 1 with Delta = 3/2, Delta(gamma) = -1/2", [](Criterion& c) {
        const auto cz = conley_zehnder(turn(0.0, 1.5 * kPi));
        c.eq("cz", 1, cz.value);
        c.near("delta", 1.5, cz.details.at("delta"), kTolDelta);
        c.near("delta_gamma", -0.5, cz.details.at("delta_gamma"), kTolDelta);
    });

    all &= report(2, "mu(R(pi(t + 1/2))) = 1", [](Criterion& c) {
        c.eq("mu", 1, maslov_index(turn(kPi / 2, kPi)).mu);
    });

    all &= report(3, "Long index of R(2 pi t): candidates {1, 3}, value 1 by both routes, mu = 2, r = 1", [](Criterion& c) {
        const auto p = turn(0.0, kTwoPi);
        const auto pert = long_index(p, LongRoute::Perturbation);
        std::vector<int> cand = pert.candidates;
        std::sort(cand.begin(), cand.end());
        cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
        c.expect(cand == std::vector<int>{1, 3}, "perturbation candidates are not {1, 3}");
        c.eq("long (perturbation)", 1, pert.value);
        const auto cmp = long_index(p, LongRoute::Comparison);
        c.eq("long (comparison)", 1, cmp.value);
        c.eq("mu", 2, std::lround(cmp.details.at("mu")));
        c.eq("r", 1, std::lround(cmp.details.at("r")));
        c.eq("long (both)", 1, long_index(p, LongRoute::Both).value);
    });

    all &= report(4, "extension target equals the displayed W entrywise; Delta(beta) = -5/12", [](Criterion& c) {
        const double s2 = std::sqrt(2.0) / 2.0, s3 = std::sqrt(3.0) / 2.0;
        Mat a(4, 4), b(4, 4), w(4, 4);
        a << s2, 0, -s2, 0, 0, 0.5, 0, -s3, s2, 0, s2, 0, 0, s3, 0, 0.5;
        b << 0, 0, -1, 0, 0, 0, 0, 1, 1, 0, 0, 0, 0, -1, 0, 0;
        w << s2, 0, -s2, 0, 0, -0.5, 0, s3, s2, 0, s2, 0, 0, -s3, 0, -0.5;
        const Mat got = extension_target(a, b);
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j)
                c.near("W(" + std::to_string(i) + "," + std::to_string(j) + ")", w(i, j), got(i, j), kTolMatrix);
        const double displayed = block_turns(
            [](double t) { return std::vector<double>{kPi / 2 - kPi * t / 4, 1.5 * kPi - kPi * t / 6}; }, 4000);
        c.near("Delta(beta) of the displayed beta", -5.0 / 12.0, displayed, kTolDelta);
        const auto beta = rotation_blocks_path({Polynomial::linear(kPi / 2, -kPi / 4), Polynomial::linear(1.5 * kPi, -kPi / 6)});
        c.near("lifted Delta(beta)", -5.0 / 12.0, lift_delta(beta).delta, kTolDelta);
        const auto fa = first_kind(a), fb = first_kind(b);
        std::vector<double> wa = extension_target(fa.angles, fb.angles);
        c.near("analytic Delta(beta)", -5.0 / 12.0, delta_beta(fb.angles, wa), kTolDelta);
    });

    all &= report(5, "R(3 pi t/2): mu 2, CZ 1, r 1, RS 3/2, CLM 2, s(0) 1, s(1) 0", [](Criterion& c) {
        const auto p = turn(0.0, 1.5 * kPi);
        const auto rep = maslov_index(p);
        c.eq("mu", 2, rep.mu);
        c.eq("cz", 1, conley_zehnder(p).value);
        c.eq("r", 1, count_r(p.end()));
        const double rs = rs_index_symp(p);
        c.expect(rs == 1.5, "rs: expected 1.5, got " + std::to_string(rs));
        c.eq("clm of the perturbed path", 2, clm_index(perturb_global(p, rep.theta)).value);
        c.eq("s(0)", 1, s_count({p}, 0.0));
        c.eq("s(1)", 0, s_count({p}, 1.0));
    });

    all &= report(6, "shear path: mu 0, Long -2, L0 -1, L0-SPS 1, Long-SPS 0", [](Criterion& c) {
        const auto p = shear_path(2, 1, 3);
        c.eq("mu", 0, maslov_index(p).mu);
        c.eq("long", -2, long_index(p).value);
        c.eq("l0", -1, l0_index(p).value);
        const auto sps = sps_indices(p);
        c.eq("l0 sps", 1, sps.liu_sps.value);
        c.eq("long sps", 0, sps.long_sps.value);
    });

    all &= report(7, "quarter turns n = 1, 2: L0 0, Long n, L0-SPS n, Long-SPS 2n", [](Criterion& c) {
        for (int n = 1; n <= 2; ++n) {
            const auto p = rotation_blocks_path(std::vector<Polynomial>(n, Polynomial::linear(0.0, kPi / 2)));
            const std::string tag = " (n=" + std::to_string(n) + ")";
            c.eq("l0" + tag, 0, l0_index(p).value);
            c.eq("long" + tag, n, long_index(p).value);
            const auto sps = sps_indices(p);
            c.eq("l0 sps" + tag, n, sps.liu_sps.value);
            c.eq("long sps" + tag, 2 * n, sps.long_sps.value);
        }
    });

    all &= report(8, "constant identity: Long = L0 = -n for n = 1, 2, 3", [](Criterion& c) {
        for (int n = 1; n <= 3; ++n) {
            const auto p = constant_path(Mat::Identity(2 * n, 2 * n));
            c.eq("long n=" + std::to_string(n), -n, long_index(p).value);
            c.eq("l0 n=" + std::to_string(n), -n, l0_index(p).value);
        }
    });

    all &= report(9, "property suite on random paths (n <= 3)", [](Criterion& c) {
        using Group = std::function<int(Criterion&)>;
        const std::vector<std::pair<std::string, Group>> groups{
            {"core A", [](Criterion& x) { return core_group(101, 50, x); }},
            {"core B", [](Criterion& x) { return core_group(102, 50, x); }},
            {"core C", [](Criterion& x) { return core_group(103, 50, x); }},
            {"core D", [](Criterion& x) { return core_group(104, 50, x); }},
            {"split", [](Criterion& x) { return split_group(201, 24, x); }},
            {"sum", [](Criterion& x) { return sum_group(301, 20, x); }},
            {"loops", [](Criterion& x) { return loop_group(401, 40, x); }},
            {"rho", [](Criterion& x) { return rho_group(501, 200, x); }},
            {"cz", [](Criterion& x) { return cz_group(601, 50, x); }},
            {"pairs", [](Criterion& x) { return clm_group(701, 40, x); }},
            {"rs", [](Criterion& x) { return rs_group(801, 40, x); }},
            {"stability", [](Criterion& x) { return stability_group(901, 30, x); }},
        };
        std::vector<std::future<std::pair<int, Criterion>>> jobs;
        for (const auto& [name, g] : groups) {
            jobs.push_back(std::async(std::launch::async, [name = name, g = g] {
                Criterion local;
                int used = 0;
                try {
                    used = g(local);
                } catch (const std::exception& e) {
                    local.expect(false, name + ": exception: " + e.what());
                }
                return std::make_pair(used, local);
            }));
        }
        int paths = 0;
        for (auto& j : jobs) {
            auto [used, local] = j.get();
            paths += used;
            c.merge(local);
        }
        c.expect(paths >= 200, "fewer than 200 random paths: " + std::to_string(paths));
        std::cout << "    random paths exercised: " << paths << '\n';
    });

    all &= report(10, "fault injection makes the reference table fail on the named rows", [](Criterion& c) {
        std::ostringstream out, err;
        c.eq("clean run exit", 0, run({"verify-paper", "--format", "text"}, out, err));
        std::ostringstream o1, e1;
        const int s1 = run({"verify-paper", "--format", "text", "--inject-fault", "delta-beta"}, o1, e1);
        c.expect(s1 != 0, "flipped half-circle rule: exit status 0");
        c.expect(o1.str().find("FAIL  [5] three-half-turn-indices") != std::string::npos,
                 "flipped half-circle rule: three-half-turn row did not fail");
        c.expect(e1.str().find("three-half-turn-indices") != std::string::npos, "flipped half-circle rule: row not named on stderr");
        std::ostringstream o2, e2;
        const int s2 = run({"verify-paper", "--format", "text", "--inject-fault", "r-pair"}, o2, e2);
        c.expect(s2 != 0, "flipped pair rule: exit status 0");
        c.expect(o2.str().find("FAIL  [6] shear-indices") != std::string::npos, "flipped pair rule: shear row did not fail");
        c.expect(e2.str().find("shear-indices") != std::string::npos, "flipped pair rule: row not named on stderr");
    });

    std::cout << (all ? "ALL CRITERIA PASS" : "SOME CRITERIA FAIL") << '\n';
    return all ? 0 : 1;
}
