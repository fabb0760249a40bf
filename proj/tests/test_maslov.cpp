#include "support.hpp"

#include "sympidx/error.hpp"
#include "sympidx/maslov.hpp"

#include <doctest.h>

using namespace sympidx;
using namespace sympidx::testing;

namespace {

SympPath turn(double a0, double a1) { return rotation_blocks_path({Polynomial::linear(a0, a1)}); }

// Phase change of det(X + iY) along block angles, integrated on a fine grid (units of pi).
double block_path_turns(const std::function<std::vector<double>(double)>& angles, int steps) {
    auto det = [&](double t) { return unitary_of(rotation_blocks(angles(t))).determinant(); };
    double total = 0.0;
    cplx prev = det(0.0);
    for (int k = 1; k <= steps; ++k) {
        const cplx cur = det(static_cast<double>(k) / steps);
        total += std::arg(cur / prev);
        prev = cur;
    }
    return total / kPi;
}

}  // namespace

TEST_SUITE("maslov") {
    TEST_CASE("perturbation angle") {
        CHECK(choose_theta({0.0}, {1.5 * kPi}, 1e-3) == 1e-3);
        CHECK(choose_theta({kPi / 4, kPi / 3}, {kPi / 2, 1.5 * kPi}, 1e-3) == 1e-3);
        CHECK(choose_theta({kPi / 4, kPi / 3}, {kPi / 2, 1.5 * kPi}, 1.0) == doctest::Approx(kPi / 8));
        CHECK(choose_theta({0.0, 0.0}, {0.0, 0.0}, 1e-3) == 1e-3);
    }

    TEST_CASE("extension target") {
        const double s2 = std::sqrt(2.0) / 2.0, s3 = std::sqrt(3.0) / 2.0;
        Mat a(4, 4), b(4, 4), w(4, 4);
        a << s2, 0, -s2, 0, 0, 0.5, 0, -s3, s2, 0, s2, 0, 0, s3, 0, 0.5;
        b << 0, 0, -1, 0, 0, 0, 0, 1, 1, 0, 0, 0, 0, -1, 0, 0;
        w << s2, 0, -s2, 0, 0, -0.5, 0, s3, s2, 0, s2, 0, 0, -s3, 0, -0.5;
        CHECK(max_abs(Mat(extension_target(a, b) - w)) < 1e-9);
        CHECK(max_abs(Mat(extension_target(a, a) - a)) < 1e-12);
        const auto flipped = extension_target(std::vector<double>{kPi / 4, kPi / 3}, {-kPi / 4, -kPi / 3});
        CHECK(flipped[0] == doctest::Approx(kPi / 4 + kPi));
        CHECK(flipped[1] == doctest::Approx(kPi / 3 + kPi));
        try {
            extension_target(std::vector<double>{kPi}, {1.0});
            FAIL("grid angle accepted");
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::OnCycle);
        }
    }

    TEST_CASE("analytic extension rotation") {
        const double th = 1e-3;
        CHECK(delta_beta({1.5 * kPi - th}, {kTwoPi - th}) == doctest::Approx(0.5));
        CHECK(delta_beta({0.7, 4.0}, {0.7, 4.0}) == 0.0);
        const double expect = block_path_turns(
            [](double t) { return std::vector<double>{kPi / 2 - kPi * t / 4, 1.5 * kPi - kPi * t / 6}; }, 2000);
        CHECK(expect == doctest::Approx(-5.0 / 12.0).epsilon(1e-12));
        CHECK(std::abs(delta_beta({kPi / 2, 1.5 * kPi}, {kPi / 4, 4.0 * kPi / 3.0}) - expect) < 1e-9);
        try {
            delta_beta({0.5}, {4.0});
            FAIL("half-circle mismatch accepted");
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::HalfCircleMismatch);
        }
        Config flip;
        flip.fault.flip_half_circle = true;
        CHECK(delta_beta({1.5 * kPi - th}, {kTwoPi - th}, flip) != doctest::Approx(0.5));
    }

    TEST_CASE("index of the reference paths") {
        const auto r1 = maslov_index(turn(0.0, 1.5 * kPi));
        CHECK(r1.mu == 2);
        CHECK(r1.delta_main == doctest::Approx(1.5).epsilon(1e-6));
        CHECK(r1.delta_beta == doctest::Approx(0.5).epsilon(1e-6));
        CHECK(maslov_index(turn(kPi / 2, kPi)).mu == 1);
        const auto shear = shear_path(2, 1, 3);
        const auto o = orthogonalize(shear);
        CHECK(max_abs(Mat(o.tail.target.o - Mat::Identity(4, 4))) < 1e-12);
        CHECK(maslov_index(shear).mu == 0);
        for (int n = 1; n <= 3; ++n) {
            const auto rep = maslov_index(constant_path(Mat::Identity(2 * n, 2 * n)));
            CHECK(rep.mu == 0);
            CHECK(rep.delta_beta == 0.0);
        }
    }

    TEST_CASE("orthogonalization keeps the rotation number") {
        Rng r(31);
        for (int i = 0; i < 15; ++i) {
            const auto p = random_path(r, r.integer(1, 3));
            const auto o = orthogonalize(p);
            CHECK(std::abs(lift_delta(o.path).delta - lift_delta(p).delta) < 1e-6);
        }
    }

    TEST_CASE("theta independence and integrality") {
        Rng r(17);
        for (int i = 0; i < 25; ++i) {
            const auto p = random_path(r, r.integer(1, 3));
            const auto rep = maslov_index(p);
            CHECK(rep.integer_residual <= 1e-6);
            CHECK(maslov_index(p, {}, rep.theta / 2).mu == rep.mu);
            CHECK(maslov_index(p, {}, rep.theta / 5).mu == rep.mu);
        }
    }

    TEST_CASE("direct sums add") {
        Rng r(19);
        for (int i = 0; i < 15; ++i) {
            const auto p = random_path(r, 1), q = random_path(r, r.integer(1, 2));
            CHECK(maslov_index(direct_sum(p, q)).mu == maslov_index(p).mu + maslov_index(q).mu);
        }
    }

    TEST_CASE("splitting adds") {
        Rng r(23);
        for (int i = 0; i < 10; ++i) {
            const auto p = random_path(r, r.integer(1, 2));
            const int mu = maslov_index(p).mu;
            for (int k = 0; k < 3; ++k) {
                const double a = r.uniform(0.1, 0.9);
                CHECK(maslov_index(segment(p, 0.0, a)).mu + maslov_index(segment(p, a, 1.0)).mu == mu);
            }
        }
    }
}
