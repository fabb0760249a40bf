#pragma once

#include "sympidx/config.hpp"
#include "sympidx/linalg.hpp"

#include <vector>

namespace sympidx {

// A real 2n x 2n matrix checked to satisfy M^T J0 M = J0.
class SympMatrix {
public:
    // Throws OddDimension / NotSymplectic.
    static SympMatrix check(const Mat& m, double tol);

    const Mat& mat() const noexcept { return m_; }
    int n() const noexcept { return static_cast<int>(m_.rows() / 2); }
    double residual() const noexcept { return residual_; }

private:
    SympMatrix(Mat m, double residual) : m_(std::move(m)), residual_(residual) {}
    Mat m_;
    double residual_;
};

SympMatrix check_symplectic(const Mat& m, const Config& cfg = {});

enum class EigenKind { PlusOne, MinusOne, UnitCircle, Inside, Outside };

// One merged eigenvalue cluster.
struct EigenCluster {
    cplx value;
    int multiplicity = 0;
    EigenKind kind = EigenKind::Outside;
    int m_plus = 0;    // only meaningful for UnitCircle
    int inverse = -1;  // index of the cluster holding 1/lambda
    int conjugate = -1;
};

struct SpectralData {
    int n = 0;
    std::vector<cplx> eigenvalues;  // raw solver output
    std::vector<EigenCluster> clusters;
    int m0 = 0;
    cplx rho{1.0, 0.0};
};

struct FirstKindSpectrum {
    std::vector<cplx> entries;   // sorted along with angles
    std::vector<double> angles;  // ascending, in [0, 2pi)
};

struct PolarFactors {
    Mat p;
    Mat o;
    double reconstruction_residual = 0.0;
};

struct Normalization {
    Mat o;
    std::vector<double> angles;
};

SpectralData spectral_data(const Mat& m, const Config& cfg = {});
inline SpectralData spectral_data(const SympMatrix& m, const Config& cfg = {}) {
    return spectral_data(m.mat(), cfg);
}

cplx rho(const Mat& m, const Config& cfg = {});

FirstKindSpectrum first_kind(const SpectralData& sd, const Config& cfg = {});
FirstKindSpectrum first_kind(const Mat& m, const Config& cfg = {});

int count_r(const SpectralData& sd, const Config& cfg = {});
int count_r(const Mat& m, const Config& cfg = {});

PolarFactors polar_decompose(const Mat& m);

Normalization normalization_matrix(const Mat& m, const Config& cfg = {});

}  // namespace sympidx
