#pragma once

#include <Eigen/Dense>

#include <complex>
#include <numbers>
#include <vector>

namespace sympidx {

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;
using cplx = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// J0 = [[0, I], [-I, 0]].
Mat j0(int n);

// The complex structure [[0, -I], [I, 0]] = -J0; exp(-theta J) rotates by -theta.
Mat j_std(int n);

// Block form [[diag cos a, -diag sin a], [diag sin a, diag cos a]].
Mat rotation_blocks(const std::vector<double>& angles);

// exp(-theta J) for the 2n x 2n complex structure.
Mat exp_minus_theta_j(int n, double theta);

// Symplectic direct sum in (x_1..x_n, y_1..y_n) coordinates.
Mat symplectic_direct_sum(const Mat& a, const Mat& b);

double symplecticity_residual(const Mat& m);
double max_abs(const Mat& m);
double max_abs(const CMat& m);

// X + iY for an orthogonal symplectic [[X, -Y], [Y, X]].
CMat unitary_of(const Mat& o);
Mat orthosymplectic_of(const CMat& u);

// True when m is block diagonal orthogonal symplectic, i.e. equal to
// rotation_blocks(angles) for the returned angles (in [0, 2pi)).
bool read_block_angles(const Mat& m, double tol, std::vector<double>& angles);

// Angle normalized to [0, 2pi).
double wrap_two_pi(double a);

// Symmetric positive definite s-th power.
Mat spd_power(const Mat& p, double s);

// Gram-Schmidt / QR orthonormal basis of the column span (full column rank assumed).
Mat orthonormal_columns(const Mat& z);

}  // namespace sympidx
