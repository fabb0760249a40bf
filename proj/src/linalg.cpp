#include "sympidx/linalg.hpp"

#include <cmath>

namespace sympidx {

Mat j0(int n) {
    Mat j = Mat::Zero(2 * n, 2 * n);
    j.topRightCorner(n, n).setIdentity();
    j.bottomLeftCorner(n, n) = -Mat::Identity(n, n);
    return j;
}

Mat j_std(int n) { return -j0(n); }

Mat rotation_blocks(const std::vector<double>& angles) {
    const int n = static_cast<int>(angles.size());
    Mat o = Mat::Zero(2 * n, 2 * n);
    for (int j = 0; j < n; ++j) {
        const double c = std::cos(angles[j]);
        const double s = std::sin(angles[j]);
        o(j, j) = c;
        o(j, n + j) = -s;
        o(n + j, j) = s;
        o(n + j, n + j) = c;
    }
    return o;
}

Mat exp_minus_theta_j(int n, double theta) {
    return rotation_blocks(std::vector<double>(n, -theta));
}

Mat symplectic_direct_sum(const Mat& a, const Mat& b) {
    const int na = static_cast<int>(a.rows() / 2);
    const int nb = static_cast<int>(b.rows() / 2);
    const int n = na + nb;
    Mat m = Mat::Zero(2 * n, 2 * n);
    // index maps: a's x_i -> i, a's y_i -> n+i; b's x_i -> na+i, b's y_i -> n+na+i
    auto ia = [&](int k) { return k < na ? k : n + (k - na); };
    auto ib = [&](int k) { return k < nb ? na + k : n + na + (k - nb); };
    for (int r = 0; r < 2 * na; ++r)
        for (int c = 0; c < 2 * na; ++c) m(ia(r), ia(c)) = a(r, c);
    for (int r = 0; r < 2 * nb; ++r)
        for (int c = 0; c < 2 * nb; ++c) m(ib(r), ib(c)) = b(r, c);
    return m;
}

double symplecticity_residual(const Mat& m) {
    const int n = static_cast<int>(m.rows() / 2);
    const Mat j = j0(n);
    return max_abs(Mat(m.transpose() * j * m - j));
}

double max_abs(const Mat& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }
double max_abs(const CMat& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

CMat unitary_of(const Mat& o) {
    const int n = static_cast<int>(o.rows() / 2);
    CMat u(n, n);
    u.real() = o.topLeftCorner(n, n);
    u.imag() = o.bottomLeftCorner(n, n);
    return u;
}

Mat orthosymplectic_of(const CMat& u) {
    const int n = static_cast<int>(u.rows());
    Mat o(2 * n, 2 * n);
    o.topLeftCorner(n, n) = u.real();
    o.topRightCorner(n, n) = -u.imag();
    o.bottomLeftCorner(n, n) = u.imag();
    o.bottomRightCorner(n, n) = u.real();
    return o;
}

bool read_block_angles(const Mat& m, double tol, std::vector<double>& angles) {
    const int n = static_cast<int>(m.rows() / 2);
    angles.assign(n, 0.0);
    for (int j = 0; j < n; ++j) {
        const double c = m(j, j);
        const double s = m(n + j, j);
        if (std::abs(m(n + j, n + j) - c) > tol || std::abs(m(j, n + j) + s) > tol) return false;
        if (std::abs(std::hypot(c, s) - 1.0) > tol) return false;
        angles[j] = wrap_two_pi(std::atan2(s, c));
    }
    return max_abs(Mat(m - rotation_blocks(angles))) <= tol;
}

double wrap_two_pi(double a) {
    double r = std::fmod(a, kTwoPi);
    if (r < 0) r += kTwoPi;
    if (r >= kTwoPi) r -= kTwoPi;
    return r;
}

Mat spd_power(const Mat& p, double s) {
    Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (p + p.transpose()));
    Vec d = es.eigenvalues().array().pow(s);
    return es.eigenvectors() * d.asDiagonal() * es.eigenvectors().transpose();
}

Mat orthonormal_columns(const Mat& z) {
    Eigen::HouseholderQR<Mat> qr(z);
    Mat q = qr.householderQ() * Mat::Identity(z.rows(), z.cols());
    return q;
}

}  // namespace sympidx
