#pragma once

#include "sympidx/config.hpp"
#include "sympidx/linalg.hpp"
#include "sympidx/spectral.hpp"

#include <memory>
#include <string>
#include <vector>

namespace sympidx {

struct Polynomial {
    static constexpr int kMaxDegree = 8;

    std::vector<double> coeffs;  // lowest degree first

    Polynomial() = default;
    explicit Polynomial(std::vector<double> c);
    static Polynomial linear(double c0, double c1) { return Polynomial({c0, c1}); }

    double operator()(double t) const;
    Polynomial derivative() const;
};

struct PathNode;

// A continuous map [0,1] -> Sp(2n). Immutable; copies share the generator tree.
class SympPath {
public:
    explicit SympPath(std::shared_ptr<const PathNode> node);

    int n() const;
    std::string kind() const;
    const PathNode& node() const { return *node_; }

    // Raw evaluation; throws OutOfDomain for t outside [0,1].
    Mat at(double t) const;
    // Evaluation with the symplecticity check (tol.path).
    SympMatrix evaluate(double t, const Config& cfg = {}) const;

    Mat start() const { return at(0.0); }
    Mat end() const { return at(1.0); }

private:
    std::shared_ptr<const PathNode> node_;
};

SympPath samples_path(std::vector<double> ts, std::vector<Mat> ms, const Config& cfg = {});
SympPath rotation_blocks_path(std::vector<Polynomial> thetas);
// Identity with entry (row, col) replaced by slope * t; must be symplectic.
SympPath shear_path(int n, int row, int col, double slope = -1.0);
SympPath constant_path(const Mat& m);
SympPath catenate(const SympPath& p, const SympPath& q, const Config& cfg = {});
SympPath reverse(const SympPath& p);
SympPath perturb_global(const SympPath& p, double theta);
SympPath direct_sum(const SympPath& p, const SympPath& q);
SympPath segment(const SympPath& p, double a, double b);
SympPath conjugate(const SympPath& p, const Mat& t);
// p(sigma(t)) for a polynomial sigma mapping [0,1] onto [0,1].
SympPath reparameterize(const SympPath& p, Polynomial sigma);
// Pointwise product p(t) q(t).
SympPath product(const SympPath& p, const SympPath& q);
// t -> exp(t H) for a Hamiltonian matrix H (J0 H symmetric up to sign).
SympPath hamiltonian_flow(const Mat& h);

// t -> P^(1-t) O_M: from M to its orthogonal polar factor.
SympPath polar_radial(const Mat& m);
// Unitary geodesic between orthogonal symplectic O1 and O2.
SympPath unitary_geodesic(const Mat& o1, const Mat& o2);
// Loop at rotation_blocks(angles) turning the first block by -2k pi t.
SympPath correction_loop(std::vector<double> angles, int k);
// Block rotation path with piecewise linear angles on a grid.
SympPath sampled_angles(std::vector<double> grid, std::vector<std::vector<double>> angles);

struct Tail {
    SympPath path;           // from normalization O to M
    Normalization target;
    double stage_delta = 0;  // measured rotation of the two stages before correction
    int correction = 0;      // k of the correction loop
    bool trivial = false;    // constant tail
};

// Throws OddRotation when the measured stage rotation is not even.
Tail build_tail(const Mat& m, const Config& cfg = {});

}  // namespace sympidx
