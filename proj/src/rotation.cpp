#include "sympidx/rotation.hpp"

#include "sympidx/error.hpp"
#include "sympidx/spectral.hpp"

#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace sympidx {

namespace {

struct Refiner {
    const std::function<cplx(double)>& f;
    const LiftOptions& opts;
    PhaseLift& out;

    bool needs_split(cplx a, cplx b) const {
        return std::abs(std::arg(b / a)) >= opts.max_phase_step || std::abs(b - a) >= opts.max_chord;
    }

    void refine(double t0, cplx v0, double t1, cplx v1, int depth) {
        if (needs_split(v0, v1)) {
            if (depth >= opts.max_depth) {
                std::ostringstream os;
                os << "phase refinement exhausted near t=" << t0;
                fail(ErrorCode::RefinementExhausted, os.str());
            }
            const double tm = 0.5 * (t0 + t1);
            const cplx vm = f(tm);
            refine(t0, v0, tm, vm, depth + 1);
            refine(tm, vm, t1, v1, depth + 1);
            return;
        }
        const double step = std::arg(v1 / v0);
        out.max_step_phase = std::max(out.max_step_phase, std::abs(step));
        out.grid.push_back(t1);
        out.values.push_back(v1);
        out.phase.push_back(out.phase.back() + step);
    }
};

}  // namespace

PhaseLift lift_phase(const std::function<cplx(double)>& f, const LiftOptions& opts) {
    PhaseLift out;
    const int n0 = std::max(1, opts.initial_samples);
    cplx prev = f(0.0);
    out.grid.push_back(0.0);
    out.values.push_back(prev);
    out.phase.push_back(std::arg(prev));
    Refiner r{f, opts, out};
    for (int i = 1; i <= n0; ++i) {
        const double t0 = static_cast<double>(i - 1) / n0;
        const double t1 = i == n0 ? 1.0 : static_cast<double>(i) / n0;
        const cplx v1 = f(t1);
        r.refine(t0, prev, t1, v1, 0);
        prev = v1;
    }
    return out;
}

cplx rho_at(const SympPath& path, double t, const Config& cfg) {
    try {
        return rho(path.at(t), cfg);
    } catch (const Error& e) {
        if (e.code() != ErrorCode::IllConditioned) throw;
        for (double d : {1e-10, 1e-9, 1e-8, 1e-7}) {
            for (double s : {d, -d}) {
                const double u = t + s;
                if (u < 0.0 || u > 1.0) continue;
                try {
                    return rho(path.at(u), cfg);
                } catch (const Error& e2) {
                    if (e2.code() != ErrorCode::IllConditioned) throw;
                }
            }
        }
        throw;
    }
}

RotationLift lift_delta(const SympPath& path, const Config& cfg) {
    const auto pl = lift_phase([&](double t) { return rho_at(path, t, cfg); }, cfg.lift);
    RotationLift rl;
    rl.grid = pl.grid;
    rl.rho = pl.values;
    rl.alpha.reserve(pl.phase.size());
    for (double p : pl.phase) rl.alpha.push_back(p / kPi);
    rl.delta = rl.alpha.back() - rl.alpha.front();
    rl.max_step_phase = pl.max_step_phase;
    return rl;
}

double delta_prime(const SympPath& path, const Config& cfg) {
    const auto f = [&](double t) {
        const cplx d = unitary_of(polar_decompose(path.at(t)).o).determinant();
        return d / std::abs(d);
    };
    return lift_phase(f, cfg.lift).total() / kPi;
}

int check_loop_integral(const SympPath& path, const Config& cfg) {
    const Mat a = path.start();
    const Mat b = path.end();
    if (max_abs(Mat(a - b)) > cfg.tol.symp * std::max(1.0, max_abs(a))) fail(ErrorCode::NotALoop, "path(0) != path(1)");
    const double d = lift_delta(path, cfg).delta;
    const double k = std::round(d);
    if (std::abs(d - k) > cfg.tol.integer) {
        std::ostringstream os;
        os << "loop rotation " << d << " is not an integer";
        fail(ErrorCode::NonIntegerResidual, os.str());
    }
    return static_cast<int>(k);
}

void write_lift_csv(std::ostream& os, const RotationLift& lift) {
    os << "t,rho_re,rho_im,alpha\n";
    os << std::setprecision(17);
    for (std::size_t i = 0; i < lift.grid.size(); ++i)
        os << lift.grid[i] << ',' << lift.rho[i].real() << ',' << lift.rho[i].imag() << ',' << lift.alpha[i] << '\n';
}

}  // namespace sympidx
