#include "sympidx/maslov.hpp"

#include "sympidx/error.hpp"

#include <cmath>
#include <sstream>

namespace sympidx {

namespace {

constexpr double kGridEps = 1e-12;

double grid_distance(double a) { return std::abs(a - kPi * std::round(a / kPi)); }

}  // namespace

Orthogonalized orthogonalize(const SympPath& path, const Config& cfg) {
    Tail head = build_tail(path.start(), cfg);
    Tail tail = build_tail(path.end(), cfg);
    SympPath p = path;
    if (!head.trivial) p = catenate(head.path, p, cfg);
    if (!tail.trivial) p = catenate(p, reverse(tail.path), cfg);
    return Orthogonalized{p, std::move(head), std::move(tail)};
}

double choose_theta(const std::vector<double>& start_angles, const std::vector<double>& end_angles,
                    double theta_max) {
    double dmin = -1.0;
    for (const auto* list : {&start_angles, &end_angles})
        for (double a : *list) {
            const double d = grid_distance(a);
            if (d > kGridEps && (dmin < 0 || d < dmin)) dmin = d;
        }
    return dmin < 0 ? theta_max : std::min(theta_max, dmin / 2.0);
}

std::vector<double> extension_target(const std::vector<double>& a_angles, const std::vector<double>& b_angles) {
    if (a_angles.size() != b_angles.size()) fail(ErrorCode::DimensionMismatch, "extension target block counts differ");
    std::vector<double> w(a_angles.size());
    for (std::size_t j = 0; j < a_angles.size(); ++j) {
        const double sa = std::sin(a_angles[j]);
        const double sb = std::sin(b_angles[j]);
        if (grid_distance(a_angles[j]) < kGridEps || grid_distance(b_angles[j]) < kGridEps)
            fail(ErrorCode::OnCycle, "block " + std::to_string(j) + " has eigenvalue +-1");
        w[j] = wrap_two_pi(sa * sb > 0 ? a_angles[j] : a_angles[j] + kPi);
    }
    return w;
}

Mat extension_target(const Mat& a, const Mat& b) {
    std::vector<double> aa, bb;
    if (!read_block_angles(a, 1e-9, aa) || !read_block_angles(b, 1e-9, bb))
        fail(ErrorCode::InvalidFrame, "extension target needs block-diagonal orthogonal symplectic matrices");
    return rotation_blocks(extension_target(aa, bb));
}

double delta_beta(const std::vector<double>& b_angles, const std::vector<double>& w_angles, const Config& cfg) {
    if (b_angles.size() != w_angles.size()) fail(ErrorCode::DimensionMismatch, "delta_beta block counts differ");
    double sum = 0.0;
    for (std::size_t j = 0; j < b_angles.size(); ++j) {
        const double b = wrap_two_pi(b_angles[j]);
        const double w = wrap_two_pi(w_angles[j]);
        if (grid_distance(b) < kGridEps || grid_distance(w) < kGridEps)
            fail(ErrorCode::OnCycle, "extension endpoint on the cycle");
        if (std::floor(b / kPi) != std::floor(w / kPi))
            fail(ErrorCode::HalfCircleMismatch, "block " + std::to_string(j) + " changes half-circle");
        double d = w - b;
        if (cfg.fault.flip_half_circle) d = d > 0 ? d - kTwoPi : d + kTwoPi;
        sum += d / kPi;
    }
    return sum;
}

IndexReport maslov_index(const SympPath& path, const Config& cfg, std::optional<double> theta) {
    IndexReport rep;
    const Orthogonalized orth = orthogonalize(path, cfg);
    rep.start_spectrum = first_kind(path.start(), cfg);
    rep.end_spectrum = first_kind(path.end(), cfg);
    rep.tails_delta = {orth.head.stage_delta - 2.0 * orth.head.correction,
                       orth.tail.stage_delta - 2.0 * orth.tail.correction};
    const auto& a0 = orth.head.target.angles;
    const auto& b0 = orth.tail.target.angles;
    rep.theta = theta.value_or(choose_theta(a0, b0, cfg.theta_max));

    const SympPath perturbed = perturb_global(orth.path, rep.theta);
    rep.lift = lift_delta(perturbed, cfg);
    rep.delta_main = rep.lift.delta;

    for (double a : a0) rep.a_angles.push_back(wrap_two_pi(a - rep.theta));
    for (double b : b0) rep.b_angles.push_back(wrap_two_pi(b - rep.theta));
    rep.w_angles = extension_target(rep.a_angles, rep.b_angles);
    rep.w_target = rotation_blocks(rep.w_angles);
    rep.delta_beta = delta_beta(rep.b_angles, rep.w_angles, cfg);

    const double total = rep.delta_main + rep.delta_beta;
    const double mu = std::round(total);
    rep.integer_residual = std::abs(total - mu);
    if (rep.integer_residual > cfg.tol.integer) {
        std::ostringstream os;
        os << "Maslov-type index candidate " << total << " is not an integer";
        fail(ErrorCode::NonIntegerResidual, os.str());
    }
    rep.mu = static_cast<int>(mu);
    return rep;
}

}  // namespace sympidx
