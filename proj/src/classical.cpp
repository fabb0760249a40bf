#include "sympidx/classical.hpp"

#include "sympidx/error.hpp"
#include "sympidx/maslov.hpp"
#include "sympidx/rotation.hpp"
#include "sympidx/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace sympidx {

namespace {

constexpr double kEpsilons[] = {1e-3, 1e-4};

void require_from_identity(const SympPath& path, const Config& cfg) {
    const Mat m = path.start();
    if (max_abs(Mat(m - Mat::Identity(m.rows(), m.cols()))) > cfg.tol.symp)
        fail(ErrorCode::NotFromIdentity, "path must start at the identity");
}

int snap(double x, const Config& cfg, const char* what) {
    const double k = std::round(x);
    if (std::abs(x - k) > cfg.tol.integer) {
        std::ostringstream os;
        os << what << " value " << x << " is not an integer";
        fail(ErrorCode::NonIntegerResidual, os.str());
    }
    return static_cast<int>(k);
}

// Continuous change of -arg det(U + iV) / pi along a frame family.
double bar_delta(const std::function<cplx(double)>& det_u_iv, const Config& cfg) {
    const auto pl = lift_phase(
        [&](double s) {
            const cplx z = det_u_iv(s);
            return z / std::abs(z);
        },
        cfg.lift);
    return -pl.total() / kPi;
}

cplx det_u_iv(const Mat& m) {
    const int n = static_cast<int>(m.rows() / 2);
    CMat z(n, n);
    z.real() = m.bottomRightCorner(n, n);
    z.imag() = m.topRightCorner(n, n);
    return z.determinant();
}

double det_v(const Mat& m) {
    const int n = static_cast<int>(m.rows() / 2);
    return m.topRightCorner(n, n).determinant();
}

}  // namespace

std::string_view to_string(ClassicalKind k) {
    switch (k) {
        case ClassicalKind::CZ: return "CZ";
        case ClassicalKind::Long: return "Long";
        case ClassicalKind::LiuL0: return "LiuL0";
        case ClassicalKind::SpsLong: return "SPS_Long";
        case ClassicalKind::SpsLiu: return "SPS_Liu";
        case ClassicalKind::Concavity: return "Concavity";
    }
    return "?";
}

std::string_view to_string(Route r) {
    switch (r) {
        case Route::Direct: return "direct";
        case Route::Comparison: return "comparison";
        case Route::PerturbationHeuristic: return "perturbation_heuristic";
    }
    return "?";
}

SympPath rotational_perturbation(const SympPath& path, double eps, int sign) {
    std::vector<Polynomial> th(path.n(), Polynomial::linear(0.0, -sign * eps));
    return product(rotation_blocks_path(std::move(th)), path);
}

ClassicalReport conley_zehnder(const SympPath& path, const Config& cfg) {
    require_from_identity(path, cfg);
    const SpectralData sd = spectral_data(path.end(), cfg);
    for (const auto& c : sd.clusters)
        if (c.kind == EigenKind::PlusOne) fail(ErrorCode::Degenerate, "endpoint has eigenvalue 1");
    const FirstKindSpectrum fk = first_kind(sd, cfg);
    double dgamma = 0.0;
    for (std::size_t j = 0; j < fk.entries.size(); ++j) {
        const cplx z = fk.entries[j];
        if (std::abs(std::abs(z) - 1.0) < cfg.tol.circle && std::abs(z.imag()) > cfg.tol.circle)
            dgamma += (kPi - fk.angles[j]) / kPi;
    }
    const double d = lift_delta(path, cfg).delta;
    ClassicalReport rep;
    rep.kind = ClassicalKind::CZ;
    rep.route = Route::Direct;
    rep.value = snap(d + dgamma, cfg, "Conley-Zehnder");
    rep.details = {{"delta", d}, {"delta_gamma", dgamma}};
    return rep;
}

ClassicalReport long_index(const SympPath& path, LongRoute route, const Config& cfg) {
    require_from_identity(path, cfg);
    ClassicalReport rep;
    rep.kind = ClassicalKind::Long;
    std::optional<int> comparison, heuristic;
    if (route != LongRoute::Perturbation) {
        const int mu = maslov_index(path, cfg).mu;
        const int r = count_r(path.end(), cfg);
        comparison = mu - r;
        rep.details["mu"] = mu;
        rep.details["r"] = r;
    }
    if (route != LongRoute::Comparison) {
        for (double eps : kEpsilons)
            for (int sign : {+1, -1}) {
                try {
                    rep.candidates.push_back(conley_zehnder(rotational_perturbation(path, eps, sign), cfg).value);
                } catch (const Error& e) {
                    if (e.code() != ErrorCode::Degenerate) throw;
                }
            }
        if (rep.candidates.empty())
            fail(ErrorCode::NoAdmissiblePerturbation, "no rotational perturbation is nondegenerate");
        heuristic = *std::min_element(rep.candidates.begin(), rep.candidates.end());
    }
    if (comparison && heuristic && *comparison != *heuristic) {
        std::ostringstream os;
        os << "Long index routes disagree: comparison " << *comparison << ", perturbation " << *heuristic;
        fail(ErrorCode::RouteMismatch, os.str());
    }
    rep.value = comparison ? *comparison : *heuristic;
    rep.route = comparison ? Route::Comparison : Route::PerturbationHeuristic;
    return rep;
}

ClassicalReport liu_l0_nondegenerate(const SympPath& path, const Config& cfg) {
    require_from_identity(path, cfg);
    const int n = path.n();
    const Mat m1 = path.end();
    const double dv = det_v(m1);
    if (std::abs(dv) < cfg.tol.det_v) fail(ErrorCode::L0Degenerate, "endpoint has det V = 0");

    // E0: J -> I through cos/sin of the complex structure.
    const SympPath e0 = rotation_blocks_path(std::vector<Polynomial>(n, Polynomial::linear(kPi / 2, -kPi / 2)));
    const double d0 = bar_delta([&](double s) { return det_u_iv(e0.at(s)); }, cfg);
    const double d1 = bar_delta([&](double s) { return det_u_iv(path.at(s)); }, cfg);

    // E1 on the frame level: V fixed, U -> 0. The frame stays a graph over
    // the x-plane with det V of fixed sign; its end spans R^n x {0}, the image
    // of L0 under both J and the D_n target.
    const Mat v = m1.topRightCorner(n, n);
    const Mat u = m1.bottomRightCorner(n, n);
    const double d2 = bar_delta(
        [&](double s) {
            CMat z(n, n);
            z.real() = (1.0 - s) * u;
            z.imag() = v;
            return z.determinant();
        },
        cfg);
    const double j_sign = (n % 2 == 0) ? 1.0 : -1.0;  // sign of det V for J
    const double target_v_det = (dv > 0) == (j_sign > 0) ? j_sign : -j_sign;
    if ((target_v_det > 0) != (dv > 0)) fail(ErrorCode::ComponentPathFailure, "extension left its component");

    ClassicalReport rep;
    rep.kind = ClassicalKind::LiuL0;
    rep.route = Route::Direct;
    rep.value = snap(d0 + d1 + d2, cfg, "L0-index");
    rep.details = {{"bar_delta_e0", d0}, {"bar_delta_path", d1}, {"bar_delta_e1", d2}, {"det_v", dv},
                   {"target_is_j", (dv > 0) == (j_sign > 0) ? 1.0 : 0.0}};
    return rep;
}

ClassicalReport l0_index(const SympPath& path, const Config& cfg) {
    require_from_identity(path, cfg);
    if (std::abs(det_v(path.end())) >= cfg.tol.det_v) return liu_l0_nondegenerate(path, cfg);
    ClassicalReport rep;
    rep.kind = ClassicalKind::LiuL0;
    rep.route = Route::PerturbationHeuristic;
    for (double eps : kEpsilons)
        for (int sign : {+1, -1}) {
            const SympPath psi = rotational_perturbation(path, eps, sign);
            if (std::abs(det_v(psi.end())) < cfg.tol.det_v) continue;
            rep.candidates.push_back(liu_l0_nondegenerate(psi, cfg).value);
        }
    if (rep.candidates.empty())
        fail(ErrorCode::NoAdmissiblePerturbation, "no rotational perturbation is L0-nondegenerate");
    rep.value = *std::min_element(rep.candidates.begin(), rep.candidates.end());
    return rep;
}

ClassicalReport l0_concavity(const SympPath& path, const Config& cfg) {
    const auto lg = long_index(path, LongRoute::Comparison, cfg);
    const auto l0 = l0_index(path, cfg);
    ClassicalReport rep;
    rep.kind = ClassicalKind::Concavity;
    rep.route = l0.route;
    rep.value = lg.value - l0.value;
    rep.details = {{"long", lg.value}, {"l0", l0.value}};
    return rep;
}

SympPath path_from_identity(const Mat& m, const Config& cfg) {
    const Tail tail = build_tail(m, cfg);
    std::vector<Polynomial> th;
    for (double a : tail.target.angles) th.push_back(Polynomial::linear(0.0, a));
    const SympPath ramp = rotation_blocks_path(std::move(th));
    return tail.trivial ? ramp : catenate(ramp, tail.path, cfg);
}

SpsReport sps_indices(const SympPath& path, const Config& cfg) {
    const int mu = maslov_index(path, cfg).mu;
    const int r0 = count_r(path.start(), cfg);
    const int r1 = count_r(path.end(), cfg);
    auto concavity = [&](const Mat& m) {
        try {
            return l0_concavity(path_from_identity(m, cfg), cfg).value;
        } catch (const Error& e) {
            fail(ErrorCode::ConcavityUnavailable, std::string("concavity of endpoint unavailable: ") + e.what());
        }
    };
    const int c0 = concavity(path.start());
    const int c1 = concavity(path.end());

    SpsReport rep;
    rep.long_sps.kind = ClassicalKind::SpsLong;
    rep.long_sps.route = Route::Comparison;
    rep.long_sps.value = mu + r0 - r1;
    rep.long_sps.details = {{"mu", mu}, {"r0", r0}, {"r1", r1}};
    rep.liu_sps.kind = ClassicalKind::SpsLiu;
    rep.liu_sps.route = Route::Comparison;
    rep.liu_sps.value = mu + r0 - r1 + c0 - c1;
    rep.liu_sps.details = {{"mu", mu}, {"r0", r0}, {"r1", r1}, {"c0", c0}, {"c1", c1}};
    return rep;
}

}  // namespace sympidx
