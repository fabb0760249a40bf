#pragma once

#include "sympidx/config.hpp"
#include "sympidx/pathlib.hpp"
#include "sympidx/rotation.hpp"
#include "sympidx/spectral.hpp"

#include <array>
#include <optional>
#include <vector>

namespace sympidx {

struct Orthogonalized {
    SympPath path;  // O1 -> ... -> O2
    Tail head;      // tail at path(0): O1 -> path(0)
    Tail tail;      // tail at path(1): O2 -> path(1), traversed backwards
};

Orthogonalized orthogonalize(const SympPath& path, const Config& cfg = {});

double choose_theta(const std::vector<double>& start_angles, const std::vector<double>& end_angles,
                    double theta_max);

// Blockwise +-A_j; angles of A and B must avoid the grid k*pi.
std::vector<double> extension_target(const std::vector<double>& a_angles, const std::vector<double>& b_angles);
Mat extension_target(const Mat& a, const Mat& b);

double delta_beta(const std::vector<double>& b_angles, const std::vector<double>& w_angles,
                  const Config& cfg = {});

struct IndexReport {
    int mu = 0;
    double theta = 0.0;
    double delta_main = 0.0;
    double delta_beta = 0.0;
    std::array<double, 2> tails_delta{0.0, 0.0};
    double integer_residual = 0.0;
    FirstKindSpectrum start_spectrum;
    FirstKindSpectrum end_spectrum;
    std::vector<double> a_angles, b_angles, w_angles;
    Mat w_target;
    RotationLift lift;  // lift of the perturbed orthogonalized path
};

IndexReport maslov_index(const SympPath& path, const Config& cfg = {},
                         std::optional<double> theta = std::nullopt);

}  // namespace sympidx
