#include "sympidx/verify.hpp"

#include "sympidx/classical.hpp"
#include "sympidx/lagrangian.hpp"
#include "sympidx/maslov.hpp"
#include "sympidx/rotation.hpp"

#include <cmath>
#include <functional>
#include <sstream>

namespace sympidx {

namespace {

class Row {
public:
    void integer(const std::string& key, long expected, long got) {
        add(key, std::to_string(expected), std::to_string(got), expected == got);
    }
    void real(const std::string& key, double expected, double got, double tol) {
        add(key, fmt(expected), fmt(got), std::abs(expected - got) <= tol);
    }
    void flag(const std::string& key, bool ok, const std::string& got) { add(key, "ok", got, ok); }

    VerifyRow finish(int criterion, std::string name) const {
        return {criterion, std::move(name), exp_.str(), got_.str(), ok_};
    }

private:
    static std::string fmt(double x) {
        std::ostringstream os;
        os.precision(10);
        os << x;
        return os.str();
    }
    void add(const std::string& key, const std::string& e, const std::string& g, bool ok) {
        const char* sep = first_ ? "" : " ";
        exp_ << sep << key << '=' << e;
        got_ << sep << key << '=' << g;
        first_ = false;
        ok_ = ok_ && ok;
    }
    std::ostringstream exp_, got_;
    bool first_ = true;
    bool ok_ = true;
};

VerifyRow guarded(int criterion, const std::string& name, const std::function<void(Row&)>& body) {
    Row row;
    try {
        body(row);
    } catch (const std::exception& e) {
        row.flag("error", false, e.what());
    }
    return row.finish(criterion, name);
}

SympPath turn(double a0, double a1) { return rotation_blocks_path({Polynomial::linear(a0, a1)}); }

}  // namespace

std::vector<VerifyRow> verify_paper(const Config& cfg) {
    std::vector<VerifyRow> rows;

    rows.push_back(guarded(1, "cz-three-half-turn", [&](Row& r) {
        const auto cz = conley_zehnder(turn(0.0, 1.5 * kPi), cfg);
        r.integer("cz", 1, cz.value);
        r.real("delta", 1.5, cz.details.at("delta"), 1e-6);
        r.real("delta_gamma", -0.5, cz.details.at("delta_gamma"), 1e-6);
    }));

    rows.push_back(guarded(2, "mu-shifted-half-turn", [&](Row& r) {
        r.integer("mu", 1, maslov_index(turn(kPi / 2, kPi), cfg).mu);
    }));

    rows.push_back(guarded(3, "long-full-turn", [&](Row& r) {
        const auto both = long_index(turn(0.0, 2.0 * kPi), LongRoute::Both, cfg);
        int lo = both.candidates.empty() ? 0 : both.candidates.front(), hi = lo;
        for (int c : both.candidates) {
            lo = std::min(lo, c);
            hi = std::max(hi, c);
        }
        bool only = !both.candidates.empty();
        for (int c : both.candidates) only = only && (c == 1 || c == 3);
        r.integer("candidate_min", 1, lo);
        r.integer("candidate_max", 3, hi);
        r.flag("candidates_in_{1,3}", only, only ? "ok" : "other");
        r.integer("long", 1, both.value);
        const auto cmp = long_index(turn(0.0, 2.0 * kPi), LongRoute::Comparison, cfg);
        r.integer("mu", 2, std::lround(cmp.details.at("mu")));
        r.integer("r", 1, std::lround(cmp.details.at("r")));
    }));

    rows.push_back(guarded(4, "extension-target-4x4", [&](Row& r) {
        const double s2 = std::sqrt(2.0) / 2.0, s3 = std::sqrt(3.0) / 2.0;
        Mat a(4, 4), b(4, 4), w(4, 4);
        a << s2, 0, -s2, 0, 0, 0.5, 0, -s3, s2, 0, s2, 0, 0, s3, 0, 0.5;
        b << 0, 0, -1, 0, 0, 0, 0, 1, 1, 0, 0, 0, 0, -1, 0, 0;
        w << s2, 0, -s2, 0, 0, -0.5, 0, s3, s2, 0, s2, 0, 0, -s3, 0, -0.5;
        const Mat got = extension_target(a, b);
        r.real("max_entry_error", 0.0, max_abs(Mat(got - w)), 1e-9);
        // Displayed extension: angles pi/2 - pi t/4 and 3pi/2 - pi t/6.
        const auto beta = rotation_blocks_path({Polynomial::linear(kPi / 2, -kPi / 4),
                                                Polynomial::linear(1.5 * kPi, -kPi / 6)});
        r.real("delta_beta_lift", -5.0 / 12.0, lift_delta(beta, cfg).delta, 1e-6);
        r.real("delta_beta", -5.0 / 12.0, delta_beta({kPi / 2, 1.5 * kPi}, {kPi / 4, 4.0 * kPi / 3.0}, cfg), 1e-6);
    }));

    rows.push_back(guarded(5, "three-half-turn-indices", [&](Row& r) {
        const auto p = turn(0.0, 1.5 * kPi);
        const auto rep = maslov_index(p, cfg);
        r.integer("mu", 2, rep.mu);
        r.integer("cz", 1, conley_zehnder(p, cfg).value);
        r.integer("r_end", 1, count_r(p.end(), cfg));
        r.real("rs", 1.5, rs_index_symp(p, cfg), 1e-12);
        r.integer("clm", 2, clm_index(perturb_global(p, rep.theta), cfg).value);
        r.integer("s0", 1, s_count({p}, 0.0, cfg));
        r.integer("s1", 0, s_count({p}, 1.0, cfg));
    }));

    rows.push_back(guarded(6, "shear-indices", [&](Row& r) {
        const auto p = shear_path(2, 1, 3);
        r.integer("mu", 0, maslov_index(p, cfg).mu);
        r.integer("long", -2, long_index(p, LongRoute::Comparison, cfg).value);
        r.integer("l0", -1, l0_index(p, cfg).value);
        const auto sps = sps_indices(p, cfg);
        r.integer("l0_sps", 1, sps.liu_sps.value);
        r.integer("long_sps", 0, sps.long_sps.value);
    }));

    for (int n = 1; n <= 2; ++n) {
        rows.push_back(guarded(7, "quarter-turn-sums n=" + std::to_string(n), [&](Row& r) {
            const auto p = rotation_blocks_path(std::vector<Polynomial>(n, Polynomial::linear(0.0, kPi / 2)));
            r.integer("l0", 0, l0_index(p, cfg).value);
            r.integer("long", n, long_index(p, LongRoute::Comparison, cfg).value);
            const auto sps = sps_indices(p, cfg);
            r.integer("l0_sps", n, sps.liu_sps.value);
            r.integer("long_sps", 2 * n, sps.long_sps.value);
        }));
    }

    for (int n = 1; n <= 3; ++n) {
        rows.push_back(guarded(8, "identity-constant n=" + std::to_string(n), [&](Row& r) {
            const auto p = constant_path(Mat::Identity(2 * n, 2 * n));
            r.integer("long", -n, long_index(p, LongRoute::Comparison, cfg).value);
            r.integer("l0", -n, l0_index(p, cfg).value);
        }));
    }
    return rows;
}

}  // namespace sympidx
