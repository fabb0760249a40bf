#pragma once

namespace sympidx {

struct Tolerances {
    double symp = 1e-9;       // max-norm of M^T J0 M - J0
    double eig = 1e-9;        // relative rank / signature threshold
    double eig_ambiguous = 1e-6;  // upper edge of the ambiguous band
    double circle = 1e-8;
    double cluster = 1e-7;
    double path = 1e-7;
    double integer = 1e-6;
    double fd_step = 1e-6;
    double irregular = 1e-8;
    double crossing_bisect = 1e-10;
    double sample_projection = 1e-5;
    double det_v = 1e-10;
};

struct LiftOptions {
    int initial_samples = 256;
    int max_depth = 24;
    double max_phase_step = 1.5707963267948966;  // pi/2
    double max_chord = 0.5;
};

// Deliberate rule flips used only by the fault-injection checks.
struct FaultInjection {
    bool flip_half_circle = false;
    bool flip_r_pair_rule = false;
};

struct Config {
    Tolerances tol;
    LiftOptions lift;
    double theta_max = 1e-3;
    FaultInjection fault;
};

}  // namespace sympidx
