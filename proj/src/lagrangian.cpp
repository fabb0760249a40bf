#include "sympidx/lagrangian.hpp"

#include "sympidx/error.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace sympidx {

namespace {

using FrameFn = std::function<Mat(double)>;

constexpr int kScanIntervals = 512;
constexpr double kDetect = 1e-7;   // smallest singular value counted as an intersection
constexpr double kKernel = 1e-6;   // kernel dimension threshold at a located crossing
constexpr double kOnGrid = 1e-9;

double wrap_pi(double a) { return a - kTwoPi * std::round(a / kTwoPi); }

Vec intersection_singular_values(const Mat& z1, const Mat& z2) {
    const int n = static_cast<int>(z1.cols());
    const Mat q1 = orthonormal_columns(z1);
    const Mat q2 = orthonormal_columns(z2);
    const Mat c = q2.transpose() * j0(n) * q1;
    Eigen::JacobiSVD<Mat> svd(c);
    return svd.singularValues();  // descending
}

double sigma_min(const FrameFn& f1, const FrameFn& f2, double t) {
    const Vec s = intersection_singular_values(f1(t), f2(t));
    return s(s.size() - 1);
}

double golden_min(const std::function<double(double)>& g, double a, double b, double tol) {
    const double r = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - r * (b - a), d = a + r * (b - a);
    double gc = g(c), gd = g(d);
    while (b - a > tol) {
        if (gc < gd) {
            b = d;
            d = c;
            gd = gc;
            c = b - r * (b - a);
            gc = g(c);
        } else {
            a = c;
            c = d;
            gc = gd;
            d = a + r * (b - a);
            gd = g(d);
        }
    }
    return 0.5 * (a + b);
}

Mat frame_derivative(const FrameFn& f, double t, double h) {
    if (t - h >= 0.0 && t + h <= 1.0) return (f(t + h) - f(t - h)) / (2.0 * h);
    if (t - h < 0.0) return (-3.0 * f(t) + 4.0 * f(t + h) - f(t + 2.0 * h)) / (2.0 * h);
    return (3.0 * f(t) - 4.0 * f(t - h) + f(t - 2.0 * h)) / (2.0 * h);
}

// X^T Y' - Y^T X' for the frame (X; Y).
Mat form_matrix(const FrameFn& f, double t, double h) {
    const Mat z = f(t);
    const Mat dz = frame_derivative(f, t, h);
    const int n = static_cast<int>(z.cols());
    const Mat x = z.topRows(n), y = z.bottomRows(n);
    const Mat dx = dz.topRows(n), dy = dz.bottomRows(n);
    return x.transpose() * dy - y.transpose() * dx;
}

struct FormResult {
    int signature = 0;
    bool regular = true;
    std::vector<double> eigenvalues;
};

Mat restricted_form(const FrameFn& f1, const FrameFn& f2, bool moving_l2, double t, const Mat& kernel, double h) {
    Mat g = kernel.transpose() * form_matrix(f1, t, h) * kernel;
    if (moving_l2) {
        const Mat u2 = f2(t).colPivHouseholderQr().solve(Mat(f1(t) * kernel));
        g -= u2.transpose() * form_matrix(f2, t, h) * u2;
    }
    return 0.5 * (g + g.transpose());
}

std::pair<int, int> inertia(const Mat& g, double floor) {
    Eigen::SelfAdjointEigenSolver<Mat> es(g);
    int pos = 0, neg = 0;
    for (int i = 0; i < g.rows(); ++i) {
        pos += es.eigenvalues()(i) > floor;
        neg += es.eigenvalues()(i) < -floor;
    }
    return {pos, neg};
}

// A degenerate form can look nondegenerate at a slightly misplaced crossing time;
// the inertia must then also persist at t +- h with the same kernel.
FormResult crossing_form(const FrameFn& f1, const FrameFn& f2, bool moving_l2, double t, int k, double h,
                         const Config& cfg) {
    const Mat z1 = f1(t), z2 = f2(t);
    const int n = static_cast<int>(z1.cols());
    const Mat c = z2.transpose() * j0(n) * z1;
    Eigen::JacobiSVD<Mat> svd(c, Eigen::ComputeFullV);
    const Mat kernel = svd.matrixV().rightCols(k);
    const Mat g = restricted_form(f1, f2, moving_l2, t, kernel, h);
    Eigen::SelfAdjointEigenSolver<Mat> es(g);
    FormResult fr;
    for (int i = 0; i < k; ++i) {
        const double e = es.eigenvalues()(i);
        fr.eigenvalues.push_back(e);
        if (std::abs(e) < cfg.tol.irregular) fr.regular = false;
        fr.signature += (e > 0) - (e < 0);
    }
    const auto here = inertia(g, 0.0);
    for (double side : {-1.0, 1.0}) {
        const double ts = t + side * cfg.tol.fd_step;
        if (ts < 0.0 || ts > 1.0) continue;
        if (inertia(restricted_form(f1, f2, moving_l2, ts, kernel, h), 0.0) != here) fr.regular = false;
    }
    return fr;
}

std::vector<Crossing> find_crossings(const FrameFn& f1, const FrameFn& f2, bool moving_l2, const Config& cfg) {
    std::vector<double> ts(kScanIntervals + 1), s(kScanIntervals + 1);
    for (int i = 0; i <= kScanIntervals; ++i) {
        ts[i] = static_cast<double>(i) / kScanIntervals;
        s[i] = sigma_min(f1, f2, ts[i]);
    }
    const auto g = [&](double t) { return sigma_min(f1, f2, t); };
    std::vector<double> hits;
    if (s.front() < kDetect) hits.push_back(0.0);
    if (s.back() < kDetect) hits.push_back(1.0);
    for (int i = 0; i <= kScanIntervals; ++i) {
        const bool left_ok = i == 0 || s[i] <= s[i - 1];
        const bool right_ok = i == kScanIntervals || s[i] <= s[i + 1];
        if (!left_ok || !right_ok) continue;
        const double a = ts[std::max(0, i - 1)];
        const double b = ts[std::min(kScanIntervals, i + 1)];
        const double tm = golden_min(g, a, b, cfg.tol.crossing_bisect);
        if (g(tm) >= kDetect) continue;
        if (tm < 1e-8 && s.front() < kDetect) continue;
        if (tm > 1.0 - 1e-8 && s.back() < kDetect) continue;
        hits.push_back(tm);
    }
    std::sort(hits.begin(), hits.end());
    hits.erase(std::unique(hits.begin(), hits.end(), [](double a, double b) { return std::abs(a - b) < 1e-8; }),
               hits.end());

    std::vector<Crossing> out;
    for (double t : hits) {
        const Vec sv = intersection_singular_values(f1(t), f2(t));
        int k = 0;
        for (int i = 0; i < sv.size(); ++i) k += sv(i) < kKernel;
        k = std::max(k, 1);
        const FormResult fr = crossing_form(f1, f2, moving_l2, t, k, cfg.tol.fd_step, cfg);
        const FormResult fine = crossing_form(f1, f2, moving_l2, t, k, cfg.tol.fd_step / 10.0, cfg);
        Crossing c;
        c.t = t;
        c.intersection_dim = k;
        c.signature = fr.signature;
        c.regular = fr.regular;
        c.stable = fr.signature == fine.signature && fr.regular == fine.regular;
        c.form_eigenvalues = fr.eigenvalues;
        out.push_back(c);
    }
    return out;
}

double rs_sum(const std::vector<Crossing>& cs) {
    double total = 0.0;
    for (const auto& c : cs) {
        if (!c.regular) {
            std::ostringstream os;
            os << "degenerate crossing form at t=" << c.t;
            fail(ErrorCode::IrregularCrossing, os.str());
        }
        const bool endpoint = c.t <= 1e-9 || c.t >= 1.0 - 1e-9;
        total += endpoint ? 0.5 * c.signature : c.signature;
    }
    return total;
}

std::vector<double> half_phases(const Mat& z) {
    const int n = static_cast<int>(z.cols());
    const Mat q = orthonormal_columns(z);
    CMat u(n, n);
    u.real() = q.topRows(n);
    u.imag() = q.bottomRows(n);
    const CMat w = u * u.transpose();
    Eigen::ComplexEigenSolver<CMat> es(w, false);
    std::vector<double> ph(n);
    for (int i = 0; i < n; ++i) ph[i] = std::arg(es.eigenvalues()(i));
    return ph;
}

// Greedy continuation of doubled angles 2 theta_k onto the new eigenphases.
// Returns the largest phase move, or a negative value when matching fails.
double match_phases(const std::vector<double>& theta, const std::vector<double>& phases,
                    std::vector<double>& next) {
    const std::size_t n = theta.size();
    std::vector<bool> used_k(n, false), used_m(n, false);
    next = theta;
    double worst = 0.0;
    for (std::size_t round = 0; round < n; ++round) {
        double best = 1e300;
        std::size_t bk = 0, bm = 0;
        for (std::size_t k = 0; k < n; ++k) {
            if (used_k[k]) continue;
            for (std::size_t m = 0; m < n; ++m) {
                if (used_m[m]) continue;
                const double d = std::abs(wrap_pi(phases[m] - 2.0 * theta[k]));
                if (d < best) {
                    best = d;
                    bk = k;
                    bm = m;
                }
            }
        }
        used_k[bk] = used_m[bm] = true;
        next[bk] = theta[bk] + wrap_pi(phases[bm] - 2.0 * theta[bk]) / 2.0;
        worst = std::max(worst, best);
    }
    return worst;
}

OspPath track_angles(const FrameFn& frame, const Config& cfg) {
    struct {
        std::vector<double> grid;
        std::vector<std::vector<double>> angles;
    } out;
    std::vector<double> ph0 = half_phases(frame(0.0));
    std::vector<double> theta(ph0.size());
    for (std::size_t i = 0; i < ph0.size(); ++i) theta[i] = ph0[i] / 2.0;
    std::sort(theta.begin(), theta.end());
    out.grid.push_back(0.0);
    out.angles.push_back(theta);

    const double max_move = kPi / 4.0;
    std::function<void(double, double, int)> advance = [&](double t0, double t1, int depth) {
        std::vector<double> next;
        const double worst = match_phases(out.angles.back(), half_phases(frame(t1)), next);
        if (worst >= max_move) {
            if (depth >= cfg.lift.max_depth) {
                std::ostringstream os;
                os << "eigenphase tracking failed near t=" << t0;
                fail(ErrorCode::BranchTrackingFailure, os.str());
            }
            const double tm = 0.5 * (t0 + t1);
            advance(t0, tm, depth + 1);
            advance(tm, t1, depth + 1);
            return;
        }
        out.grid.push_back(t1);
        out.angles.push_back(next);
    };
    const int n0 = std::max(1, cfg.lift.initial_samples);
    for (int i = 1; i <= n0; ++i)
        advance(static_cast<double>(i - 1) / n0, i == n0 ? 1.0 : static_cast<double>(i) / n0, 0);
    SympPath p = sampled_angles(out.grid, out.angles);
    return OspPath{std::move(out.grid), std::move(out.angles), std::move(p)};
}

bool on_grid(double a) { return std::abs(a - kPi * std::round(a / kPi)) < kOnGrid; }

}  // namespace

LagrangianFrame LagrangianFrame::check(const Mat& z, double tol) {
    if (z.rows() != 2 * z.cols() || z.cols() == 0) fail(ErrorCode::InvalidFrame, "frame must be 2n x n");
    const int n = static_cast<int>(z.cols());
    const Mat x = z.topRows(n), y = z.bottomRows(n);
    const Mat s = x.transpose() * y;
    if (max_abs(Mat(s - s.transpose())) > tol * std::max(1.0, max_abs(z) * max_abs(z)))
        fail(ErrorCode::InvalidFrame, "frame does not span a Lagrangian subspace");
    Eigen::JacobiSVD<Mat> svd(z);
    const Vec sv = svd.singularValues();
    if (sv(n - 1) < 1e-9 * std::max(1.0, sv(0))) fail(ErrorCode::InvalidFrame, "frame is rank deficient");
    return LagrangianFrame(z);
}

LagrangianFrame LagrangianFrame::horizontal(int n) {
    Mat z = Mat::Zero(2 * n, n);
    z.topRows(n).setIdentity();
    return LagrangianFrame(z);
}

LagrangianFrame LagrangianFrame::vertical(int n) {
    Mat z = Mat::Zero(2 * n, n);
    z.bottomRows(n).setIdentity();
    return LagrangianFrame(z);
}

FramePath FramePath::fixed(const LagrangianFrame& f) {
    return FramePath{constant_path(Mat::Identity(2 * f.n(), 2 * f.n())), f};
}

std::vector<Crossing> crossings(const FramePath& l1, const LagrangianFrame& l2, const Config& cfg) {
    const Mat z2 = l2.z();
    return find_crossings([&](double t) { return l1.at(t); }, [&](double) { return z2; }, false, cfg);
}

std::vector<Crossing> relative_crossings(const FramePath& l1, const FramePath& l2, const Config& cfg) {
    return find_crossings([&](double t) { return l1.at(t); }, [&](double t) { return l2.at(t); }, true, cfg);
}

double rs_index(const FramePath& l1, const LagrangianFrame& l2, const Config& cfg) {
    return rs_sum(crossings(l1, l2, cfg));
}

double rs_index_symp(const SympPath& path, const Config& cfg) {
    const auto v = LagrangianFrame::vertical(path.n());
    return rs_index(FramePath{path, v}, v, cfg);
}

double relative_rs(const FramePath& l1, const FramePath& l2, const Config& cfg) {
    return rs_sum(relative_crossings(l1, l2, cfg));
}

OspPath sp_to_osp(const SympPath& path, const Config& cfg) {
    return frames_to_osp(FramePath{path, LagrangianFrame::horizontal(path.n())}, cfg);
}

OspPath frames_to_osp(const FramePath& l2, const Config& cfg) {
    return track_angles([&](double t) { return l2.at(t); }, cfg);
}

ClmReport clm_from_angles(const OspPath& osp, const Config& cfg) {
    const std::size_t n = osp.angles.front().size();
    ClmReport rep;
    // Properized angle sequences: tail in at t=0, the path, tail out at t=1.
    std::vector<std::vector<double>> seq(n);
    for (std::size_t j = 0; j < n; ++j) {
        const double a0 = osp.angles.front()[j];
        const double a1 = osp.angles.back()[j];
        if (on_grid(a0)) {
            ++rep.d;
            seq[j].push_back(kPi * std::round(a0 / kPi) + kPi / 4.0);
            seq[j].push_back(kPi * std::round(a0 / kPi));
        } else {
            seq[j].push_back(a0);
        }
        for (std::size_t k = 1; k + 1 < osp.angles.size(); ++k) seq[j].push_back(osp.angles[k][j]);
        if (on_grid(a1)) {
            seq[j].push_back(kPi * std::round(a1 / kPi));
            seq[j].push_back(kPi * std::round(a1 / kPi) - kPi / 4.0);
        } else {
            seq[j].push_back(a1);
        }
    }
    double theta = cfg.theta_max;
    for (int attempt = 0; attempt < 40; ++attempt, theta /= 2.0) {
        bool transversal = true;
        int p = 0, q = 0;
        for (const auto& s : seq) {
            for (double v : s) {
                const double x = v - theta;
                if (std::abs(x - kPi * std::round(x / kPi)) < 1e-12) transversal = false;
            }
            for (std::size_t k = 0; k + 1 < s.size(); ++k) {
                const double c = std::floor((s[k + 1] - theta) / kPi) - std::floor((s[k] - theta) / kPi);
                if (c > 0) p += static_cast<int>(c);
                if (c < 0) q += static_cast<int>(-c);
            }
        }
        if (!transversal) continue;
        rep.p = p;
        rep.q = q;
        rep.theta = theta;
        rep.value = rep.d + p - q;
        return rep;
    }
    fail(ErrorCode::NonTransversalAfterPerturbation, "no transversal perturbation found");
}

ClmReport clm_index(const SympPath& path, const Config& cfg) { return clm_from_angles(sp_to_osp(path, cfg), cfg); }

OspPath relative_osp(const FramePath& l1, const FramePath& l2, const Config& cfg) {
    if (l1.n() != l2.n()) fail(ErrorCode::DimensionMismatch, "frame pair dimensions differ");
    const int n = l1.n();
    const FrameFn reduced = [&](double t) {
        const Mat q = orthonormal_columns(l1.at(t));
        CMat u(n, n);
        u.real() = q.topRows(n);
        u.imag() = q.bottomRows(n);
        return Mat(orthosymplectic_of(u).transpose() * l2.at(t));
    };
    return track_angles(reduced, cfg);
}

ClmReport clm_index(const FramePath& l1, const FramePath& l2, const Config& cfg) {
    return clm_from_angles(relative_osp(l1, l2, cfg), cfg);
}

int s_count(const std::vector<SympPath>& blocks, double t, const Config& cfg) {
    int count = 0;
    for (const auto& b : blocks) {
        if (b.n() != 1) fail(ErrorCode::DimensionMismatch, "s_count expects 2x2 blocks");
        const auto v = LagrangianFrame::vertical(1);
        const FrameFn f1 = [&](double u) { return Mat(b.at(u) * v.z()); };
        const FrameFn f2 = [&](double) { return v.z(); };
        if (sigma_min(f1, f2, t) >= kDetect) continue;
        if (crossing_form(f1, f2, false, t, 1, cfg.tol.fd_step, cfg).regular) ++count;
    }
    return count;
}

void write_angles_csv(std::ostream& os, const OspPath& osp) {
    os << 't';
    for (std::size_t j = 0; j < osp.angles.front().size(); ++j) os << ",theta_" << (j + 1);
    os << '\n' << std::setprecision(17);
    for (std::size_t k = 0; k < osp.grid.size(); ++k) {
        os << osp.grid[k];
        for (double a : osp.angles[k]) os << ',' << a;
        os << '\n';
    }
}

}  // namespace sympidx
