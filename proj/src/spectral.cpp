#include "sympidx/spectral.hpp"

#include "sympidx/error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace sympidx {

namespace {

std::string fmt_lambda(cplx z) {
    std::ostringstream os;
    os.precision(12);
    os << z.real() << (z.imag() < 0 ? "-" : "+") << std::abs(z.imag()) << "i";
    return os.str();
}

[[noreturn]] void ill(const std::string& why, cplx lambda) {
    fail(ErrorCode::IllConditioned, why + " at lambda=" + fmt_lambda(lambda));
}

// Single-linkage clustering of raw eigenvalues.
std::vector<std::vector<int>> cluster_indices(const std::vector<cplx>& ev, double tol) {
    const int k = static_cast<int>(ev.size());
    std::vector<int> parent(k);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int i) {
        while (parent[i] != i) i = parent[i] = parent[parent[i]];
        return i;
    };
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j)
            if (std::abs(ev[i] - ev[j]) < tol * std::max(1.0, std::abs(ev[i]))) parent[find(i)] = find(j);
    std::vector<std::vector<int>> groups;
    std::vector<int> slot(k, -1);
    for (int i = 0; i < k; ++i) {
        const int r = find(i);
        if (slot[r] < 0) {
            slot[r] = static_cast<int>(groups.size());
            groups.emplace_back();
        }
        groups[slot[r]].push_back(i);
    }
    return groups;
}

int gram_positive_count(const CMat& basis, int n, cplx lambda, const Tolerances& tol) {
    // Q(xi, xi) = Im omega0(conj xi, xi) = xi^H (i J0) xi
    const CMat h = cplx(0.0, 1.0) * j0(n).cast<cplx>();
    CMat g = basis.adjoint() * h * basis;
    g = 0.5 * (g + g.adjoint()).eval();
    Eigen::SelfAdjointEigenSolver<CMat> es(g);
    int pos = 0;
    for (int i = 0; i < g.rows(); ++i) {
        const double e = es.eigenvalues()(i);
        if (std::abs(e) < tol.eig_ambiguous) ill("Krein form degenerate", lambda);
        if (e > 0) ++pos;
    }
    return pos;
}

int krein_count_svd(const Mat& m, cplx lambda, int mult, const Tolerances& tol);

// Positive inertia of Q_lambda on the generalized eigenspace of a unit-circle cluster.
// Fast path: the solver's eigenvectors when they are well separated and span the cluster.
int krein_positive_count(const Mat& m, cplx lambda, const CMat& vectors, const Tolerances& tol) {
    const int dim = static_cast<int>(m.rows());
    const int mult = static_cast<int>(vectors.cols());
    Eigen::HouseholderQR<CMat> qr(vectors);
    const CMat q = qr.householderQ() * CMat::Identity(dim, mult);
    double rmin = 1e300;
    for (int i = 0; i < mult; ++i) rmin = std::min(rmin, std::abs(qr.matrixQR()(i, i)));
    const double resid = (m.cast<cplx>() * q - lambda * q).cwiseAbs().maxCoeff();
    if (rmin >= 1e-3 && resid <= tol.eig_ambiguous * std::max(1.0, max_abs(m))) return gram_positive_count(q, dim / 2, lambda, tol);
    return krein_count_svd(m, lambda, mult, tol);
}

int krein_count_svd(const Mat& m, cplx lambda, int mult, const Tolerances& tol) {
    const int dim = static_cast<int>(m.rows());
    const int n = dim / 2;
    const CMat a = lambda * CMat::Identity(dim, dim) - m.cast<cplx>();

    // Semisimple clusters: the eigenspace itself. Otherwise the generalized eigenspace,
    // accepted only with a clear singular value gap.
    Eigen::JacobiSVD<CMat> svd(a, Eigen::ComputeFullV);
    double smax = svd.singularValues()(0);
    if (smax == 0.0) ill("degenerate null space", lambda);
    auto ratio = [&](int k) { return svd.singularValues()(k) / smax; };
    auto separated = [&](double null_ratio) {
        return mult == dim || ratio(dim - mult - 1) >= 1e3 * std::max(null_ratio, 1e-15);
    };
    const bool semisimple = ratio(dim - mult) <= tol.eig_ambiguous && separated(ratio(dim - mult));
    if (!semisimple && mult > 1) {
        CMat p = a;
        for (int j = 1; j < mult; ++j) p = p * a;
        svd.compute(p, Eigen::ComputeFullV);
        smax = svd.singularValues()(0);
        if (smax == 0.0) ill("degenerate null space", lambda);
        const double null_ratio = ratio(dim - mult);
        if (null_ratio > tol.eig) ill("generalized eigenspace rank ambiguous", lambda);
        if (!separated(null_ratio)) ill("generalized eigenspace not separated", lambda);
    } else if (!semisimple) {
        ill("eigenspace rank ambiguous", lambda);
    }
    const CMat v = svd.matrixV().rightCols(mult);
    return gram_positive_count(v, n, lambda, tol);
}

bool near_real(cplx z, double tol) { return std::abs(z.imag()) < tol * std::max(1.0, std::abs(z)); }

}  // namespace

SympMatrix SympMatrix::check(const Mat& m, double tol) {
    if (m.rows() != m.cols() || m.rows() % 2 != 0 || m.rows() == 0)
        fail(ErrorCode::OddDimension, "matrix must be square of even positive dimension");
    if (!m.allFinite()) fail(ErrorCode::NotSymplectic, "matrix has non-finite entries");
    const double res = symplecticity_residual(m);
    const double scale = std::max(1.0, max_abs(m) * max_abs(m));
    if (res > tol * scale) {
        std::ostringstream os;
        os << "symplecticity residual " << res << " exceeds tolerance";
        fail(ErrorCode::NotSymplectic, os.str());
    }
    return SympMatrix(m, res);
}

SympMatrix check_symplectic(const Mat& m, const Config& cfg) { return SympMatrix::check(m, cfg.tol.symp); }

SpectralData spectral_data(const Mat& m, const Config& cfg) {
    const auto& tol = cfg.tol;
    const int dim = static_cast<int>(m.rows());
    SpectralData sd;
    sd.n = dim / 2;

    Eigen::EigenSolver<Mat> es(m, true);
    if (es.info() != Eigen::Success) fail(ErrorCode::IllConditioned, "eigenvalue solver failed");
    sd.eigenvalues.assign(es.eigenvalues().data(), es.eigenvalues().data() + dim);

    const auto groups = cluster_indices(sd.eigenvalues, tol.cluster);
    for (const auto& group : groups) {
        EigenCluster c;
        cplx sum = 0.0;
        for (int i : group) sum += sd.eigenvalues[i];
        c.value = sum / static_cast<double>(group.size());
        c.multiplicity = static_cast<int>(group.size());
        const double r = std::abs(c.value);
        if (std::abs(c.value - 1.0) < tol.circle) {
            c.kind = EigenKind::PlusOne;
            c.value = 1.0;
        } else if (std::abs(c.value + 1.0) < tol.circle) {
            c.kind = EigenKind::MinusOne;
            c.value = -1.0;
        } else if (std::abs(r - 1.0) < tol.circle) {
            if (near_real(c.value, tol.circle)) ill("real unit-modulus eigenvalue away from +-1", c.value);
            c.kind = EigenKind::UnitCircle;
            c.value /= r;
        } else {
            c.kind = r < 1.0 ? EigenKind::Inside : EigenKind::Outside;
            if (near_real(c.value, tol.circle)) c.value = c.value.real();
        }
        sd.clusters.push_back(c);
    }

    // pairing: lambda <-> 1/lambda and lambda <-> conj(lambda), greedy nearest match
    const double pair_tol = tol.eig_ambiguous * 10.0;
    auto nearest = [&](cplx target, int mult) {
        int best = -1;
        double bd = 0.0;
        for (int j = 0; j < static_cast<int>(sd.clusters.size()); ++j) {
            if (sd.clusters[j].multiplicity != mult) continue;
            const double d = std::abs(sd.clusters[j].value - target) / std::max(1.0, std::abs(target));
            if (best < 0 || d < bd) {
                best = j;
                bd = d;
            }
        }
        return bd <= pair_tol ? best : -1;
    };
    for (auto& c : sd.clusters) {
        c.inverse = nearest(1.0 / c.value, c.multiplicity);
        c.conjugate = nearest(std::conj(c.value), c.multiplicity);
        if (c.inverse < 0 || c.conjugate < 0) ill("eigenvalue pairing failed", c.value);
    }

    int negative_real = 0;
    for (std::size_t ci = 0; ci < sd.clusters.size(); ++ci) {
        auto& c = sd.clusters[ci];
        if (c.kind == EigenKind::PlusOne || c.kind == EigenKind::MinusOne) {
            if (c.multiplicity % 2 != 0) ill("odd multiplicity at +-1", c.value);
        }
        if (c.kind != EigenKind::UnitCircle && near_real(c.value, tol.circle) && c.value.real() < 0)
            negative_real += c.multiplicity;
        if (c.kind == EigenKind::UnitCircle) {
            CMat vecs(dim, c.multiplicity);
            for (int k = 0; k < c.multiplicity; ++k) vecs.col(k) = es.eigenvectors().col(groups[ci][k]);
            c.m_plus = krein_positive_count(m, c.value, vecs, tol);
        }
    }
    if (negative_real % 2 != 0) fail(ErrorCode::IllConditioned, "odd count of negative real eigenvalues");
    sd.m0 = negative_real / 2;

    cplx r = (sd.m0 % 2 == 0) ? 1.0 : -1.0;
    for (const auto& c : sd.clusters) {
        if (c.kind != EigenKind::UnitCircle) continue;
        const auto& partner = sd.clusters[c.conjugate];
        if (c.m_plus + partner.m_plus != c.multiplicity) ill("Krein counts of conjugate pair inconsistent", c.value);
        for (int k = 0; k < c.m_plus; ++k) r *= c.value;
    }
    sd.rho = r / std::abs(r);
    return sd;
}

cplx rho(const Mat& m, const Config& cfg) { return spectral_data(m, cfg).rho; }

FirstKindSpectrum first_kind(const SpectralData& sd, const Config& cfg) {
    struct Entry {
        double angle;
        cplx value;
    };
    std::vector<Entry> es;
    for (const auto& c : sd.clusters) {
        switch (c.kind) {
            case EigenKind::PlusOne:
                for (int k = 0; k < c.multiplicity / 2; ++k) es.push_back({0.0, 1.0});
                break;
            case EigenKind::MinusOne:
                for (int k = 0; k < c.multiplicity / 2; ++k) es.push_back({kPi, -1.0});
                break;
            case EigenKind::UnitCircle:
                for (int k = 0; k < c.m_plus; ++k) es.push_back({wrap_two_pi(std::arg(c.value)), c.value});
                break;
            case EigenKind::Inside: {
                // A complex quadruple slides onto the positive axis inside Sp* with rho fixed,
                // so it normalizes like two positive hyperbolic pairs. Sending it to the
                // circle instead would add a Krein-indefinite pair that r never sees.
                const double a = near_real(c.value, cfg.tol.circle) && c.value.real() < 0 ? kPi : 0.0;
                for (int k = 0; k < c.multiplicity; ++k) es.push_back({a, c.value});
                break;
            }
            case EigenKind::Outside:
                break;
        }
    }
    if (static_cast<int>(es.size()) != sd.n)
        fail(ErrorCode::IllConditioned, "first-kind eigenvalue count differs from n");
    std::stable_sort(es.begin(), es.end(), [](const Entry& a, const Entry& b) { return a.angle < b.angle; });
    FirstKindSpectrum fk;
    for (const auto& e : es) {
        fk.angles.push_back(e.angle);
        fk.entries.push_back(e.value);
    }
    return fk;
}

FirstKindSpectrum first_kind(const Mat& m, const Config& cfg) { return first_kind(spectral_data(m, cfg), cfg); }

int count_r(const SpectralData& sd, const Config& cfg) {
    int r = 0;
    for (const auto& c : sd.clusters) {
        if (c.kind == EigenKind::PlusOne)
            r += cfg.fault.flip_r_pair_rule ? c.multiplicity : c.multiplicity / 2;
        else if (c.kind == EigenKind::UnitCircle && c.value.imag() < 0)
            r += c.m_plus;
    }
    return r;
}

int count_r(const Mat& m, const Config& cfg) { return count_r(spectral_data(m, cfg), cfg); }

PolarFactors polar_decompose(const Mat& m) {
    PolarFactors f;
    const Mat s = m * m.transpose();
    f.p = spd_power(s, 0.5);
    f.o = spd_power(s, -0.5) * m;
    f.reconstruction_residual = max_abs(Mat(f.p * f.o - m));
    return f;
}

Normalization normalization_matrix(const Mat& m, const Config& cfg) {
    Normalization nm;
    nm.angles = first_kind(m, cfg).angles;
    nm.o = rotation_blocks(nm.angles);
    return nm;
}

}  // namespace sympidx
