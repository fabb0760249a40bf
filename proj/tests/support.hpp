#pragma once

#include "sympidx/linalg.hpp"
#include "sympidx/pathlib.hpp"

#include <cmath>
#include <random>
#include <vector>

namespace sympidx::testing {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}
    double uniform(double a, double b) { return std::uniform_real_distribution<double>(a, b)(eng_); }
    int integer(int a, int b) { return std::uniform_int_distribution<int>(a, b)(eng_); }
    bool coin() { return integer(0, 1) == 1; }

private:
    std::mt19937_64 eng_;
};

inline Mat random_symmetric(Rng& r, int n, double scale) {
    Mat s(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j <= i; ++j) s(i, j) = s(j, i) = r.uniform(-scale, scale);
    return s;
}

// Product of a lower shear, an upper shear, a diagonal stretch and a rotation.
inline Mat random_symplectic(Rng& r, int n, double scale = 0.6) {
    const Mat id = Mat::Identity(n, n);
    Mat up = Mat::Identity(2 * n, 2 * n), lo = Mat::Identity(2 * n, 2 * n), st = Mat::Zero(2 * n, 2 * n);
    up.topRightCorner(n, n) = random_symmetric(r, n, scale);
    lo.bottomLeftCorner(n, n) = random_symmetric(r, n, scale);
    Vec d(n);
    for (int i = 0; i < n; ++i) d(i) = std::exp(r.uniform(-scale, scale));
    st.topLeftCorner(n, n) = d.asDiagonal();
    st.bottomRightCorner(n, n) = d.cwiseInverse().asDiagonal();
    std::vector<double> a(n);
    for (auto& x : a) x = r.uniform(0.0, kTwoPi);
    (void)id;
    return up * lo * st * rotation_blocks(a);
}

// Coefficients of a(t) with a(0) = a0, optional monotone shape.
inline Polynomial random_poly(Rng& r, double a0, double span, int degree, bool monotone = false) {
    std::vector<double> c{a0};
    for (int k = 1; k <= degree; ++k) {
        const double x = r.uniform(monotone ? 0.2 : -1.0, 1.0) * span / degree;
        c.push_back(x);
    }
    return Polynomial(std::move(c));
}

inline SympPath random_rotation_path(Rng& r, int n, double span = 3.0 * kPi) {
    std::vector<Polynomial> th;
    for (int j = 0; j < n; ++j) th.push_back(random_poly(r, r.uniform(-kPi, kPi), span, r.integer(1, 3)));
    return rotation_blocks_path(std::move(th));
}

// Hamiltonian H = J0 S (so exp(tH) stays in Sp).
inline Mat random_hamiltonian(Rng& r, int n, double scale) { return j0(n) * random_symmetric(r, 2 * n, scale); }

// Mix of rotations, flows, shears and conjugations, not necessarily starting at I.
inline SympPath random_path(Rng& r, int n) {
    switch (r.integer(0, 4)) {
        case 0:
            return random_rotation_path(r, n);
        case 1:
            return conjugate(random_rotation_path(r, n), random_symplectic(r, n));
        case 2:
            return product(hamiltonian_flow(random_hamiltonian(r, n, 1.5)), random_rotation_path(r, n, 2.0 * kPi));
        case 3: {
            SympPath p = shear_path(n, 0, n, r.uniform(-3.0, 3.0));
            for (int i = 1; i < n; ++i) p = product(p, shear_path(n, i, n + i, r.uniform(-3.0, 3.0)));
            return conjugate(product(p, random_rotation_path(r, n, kPi)), random_symplectic(r, n));
        }
        default:
            return product(constant_path(random_symplectic(r, n)), hamiltonian_flow(random_hamiltonian(r, n, 2.0)));
    }
}

// Paths starting at the identity.
inline SympPath random_path_from_identity(Rng& r, int n) {
    std::vector<Polynomial> th;
    for (int j = 0; j < n; ++j) th.push_back(random_poly(r, 0.0, 4.0 * kPi, r.integer(1, 3)));
    const SympPath rot = rotation_blocks_path(std::move(th));
    if (r.coin()) return product(hamiltonian_flow(random_hamiltonian(r, n, 1.0)), rot);
    return conjugate(rot, random_symplectic(r, n));
}

// Orthogonal block-angle path with generic angles.
inline SympPath random_orthogonal_path(Rng& r, int n) { return random_rotation_path(r, n, 4.0 * kPi); }

// 2x2 rotation blocks with monotone angles; endpoints may sit on the grid k pi.
inline std::vector<SympPath> random_diagonal_blocks(Rng& r, int n) {
    std::vector<SympPath> out;
    for (int j = 0; j < n; ++j) {
        const bool start_on_grid = r.coin();
        const double a0 = start_on_grid ? kPi * r.integer(-1, 1) : r.uniform(-kPi, kPi);
        const double sign = r.coin() ? 1.0 : -1.0;
        Polynomial p = random_poly(r, a0, 3.0 * kPi, r.integer(1, 3), true);
        for (std::size_t k = 1; k < p.coeffs.size(); ++k) p.coeffs[k] *= sign;
        if (r.coin()) {
            // move the end onto the grid by rescaling the non-constant part
            const double span = p(1.0) - a0;
            const double target = kPi * std::round(p(1.0) / kPi) - a0;
            if (std::abs(target) > 0.5)
                for (std::size_t k = 1; k < p.coeffs.size(); ++k) p.coeffs[k] *= target / span;
        }
        out.push_back(rotation_blocks_path({p}));
    }
    return out;
}

inline SympPath direct_sum_all(const std::vector<SympPath>& ps) {
    SympPath acc = ps.front();
    for (std::size_t i = 1; i < ps.size(); ++i) acc = direct_sum(acc, ps[i]);
    return acc;
}

}  // namespace sympidx::testing
