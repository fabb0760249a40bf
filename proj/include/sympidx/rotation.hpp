#pragma once

#include "sympidx/config.hpp"
#include "sympidx/linalg.hpp"
#include "sympidx/pathlib.hpp"

#include <functional>
#include <iosfwd>
#include <vector>

namespace sympidx {

// Continuous phase of a unit-modulus function sampled on an adaptive grid.
struct PhaseLift {
    std::vector<double> grid;
    std::vector<cplx> values;
    std::vector<double> phase;  // radians, continuous
    double max_step_phase = 0.0;

    double total() const { return phase.back() - phase.front(); }
};

PhaseLift lift_phase(const std::function<cplx(double)>& f, const LiftOptions& opts);

struct RotationLift {
    std::vector<double> grid;
    std::vector<cplx> rho;
    std::vector<double> alpha;  // exp(i pi alpha) = rho
    double delta = 0.0;
    double max_step_phase = 0.0;
};

// rho(path(t)) with a tiny parameter nudge when the spectral decision at t is ambiguous.
cplx rho_at(const SympPath& path, double t, const Config& cfg = {});

RotationLift lift_delta(const SympPath& path, const Config& cfg = {});

// Rotation of det(X + iY) for the orthogonal polar factor [[X, -Y], [Y, X]].
double delta_prime(const SympPath& path, const Config& cfg = {});

// Rounded rotation number of a loop; NotALoop / NonIntegerResidual.
int check_loop_integral(const SympPath& path, const Config& cfg = {});

// CSV with header t,rho_re,rho_im,alpha.
void write_lift_csv(std::ostream& os, const RotationLift& lift);

}  // namespace sympidx
