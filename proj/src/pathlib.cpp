#include "sympidx/pathlib.hpp"

#include "path_nodes.hpp"
#include "sympidx/error.hpp"
#include "sympidx/rotation.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace sympidx {

using nlohmann::json;

namespace {

json matrix_json(const Mat& m) {
    json rows = json::array();
    for (int r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (int c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
        rows.push_back(row);
    }
    return rows;
}

void require_dim(const Mat& m, const char* what) {
    if (m.rows() != m.cols() || m.rows() == 0 || m.rows() % 2 != 0)
        fail(ErrorCode::OddDimension, std::string(what) + ": matrix must be square with even dimension");
}

bool close_matrices(const Mat& a, const Mat& b, double tol) {
    return max_abs(Mat(a - b)) <= tol * std::max(1.0, std::max(max_abs(a), max_abs(b)));
}

// One Newton-type step family pulling a near-symplectic matrix back onto Sp(2n).
Mat project_symplectic(const Mat& a0) {
    const int n = static_cast<int>(a0.rows() / 2);
    const Mat j = j0(n);
    const Mat id = Mat::Identity(2 * n, 2 * n);
    Mat a = a0;
    for (int it = 0; it < 30; ++it) {
        const Mat e = -j * a.transpose() * j * a;  // J0^{-1} A^T J0 A
        if (max_abs(Mat(e - id)) < 1e-15) break;
        a = a * (3.0 * id - e) * 0.5;
    }
    return a;
}

struct SamplesNode final : PathNode {
    std::vector<double> ts;
    std::vector<Mat> ms;
    int n() const override { return static_cast<int>(ms.front().rows() / 2); }
    std::string kind() const override { return "samples"; }
    Mat eval(double t) const override {
        auto it = std::upper_bound(ts.begin(), ts.end(), t);
        std::size_t i = it == ts.begin() ? 0 : static_cast<std::size_t>(it - ts.begin()) - 1;
        if (i + 1 >= ts.size()) return ms.back();
        if (t == ts[i]) return ms[i];
        const double s = (t - ts[i]) / (ts[i + 1] - ts[i]);
        return project_symplectic((1.0 - s) * ms[i] + s * ms[i + 1]);
    }
    json spec() const override {
        json samples = json::array();
        for (std::size_t i = 0; i < ts.size(); ++i) samples.push_back({{"t", ts[i]}, {"matrix", matrix_json(ms[i])}});
        return {{"kind", "samples"}, {"n", n()}, {"samples", samples}};
    }
};

struct RotationBlocksNode final : PathNode {
    std::vector<Polynomial> thetas;
    int n() const override { return static_cast<int>(thetas.size()); }
    std::string kind() const override { return "rotation_blocks"; }
    Mat eval(double t) const override {
        std::vector<double> a(thetas.size());
        for (std::size_t j = 0; j < thetas.size(); ++j) a[j] = thetas[j](t);
        return rotation_blocks(a);
    }
    json spec() const override {
        json th = json::array();
        for (const auto& p : thetas) th.push_back(p.coeffs);
        return {{"kind", "rotation_blocks"}, {"n", n()}, {"theta", th}};
    }
};

struct ShearNode final : PathNode {
    int half = 1;
    int row = 0, col = 0;
    double slope = -1.0;
    int n() const override { return half; }
    std::string kind() const override { return "shear"; }
    Mat eval(double t) const override {
        Mat m = Mat::Identity(2 * half, 2 * half);
        m(row, col) += slope * t;
        return m;
    }
    json spec() const override {
        return {{"kind", "shear"}, {"n", half}, {"entry", {row, col}}, {"slope", slope}};
    }
};

struct ConstantNode final : PathNode {
    Mat m;
    int n() const override { return static_cast<int>(m.rows() / 2); }
    std::string kind() const override { return "constant"; }
    Mat eval(double) const override { return m; }
    json spec() const override { return {{"kind", "constant"}, {"n", n()}, {"matrix", matrix_json(m)}}; }
};

struct CatenationNode final : PathNode {
    SympPath left, right;
    CatenationNode(SympPath l, SympPath r) : left(std::move(l)), right(std::move(r)) {}
    int n() const override { return left.n(); }
    std::string kind() const override { return "catenation"; }
    Mat eval(double t) const override { return t <= 0.5 ? left.at(2.0 * t) : right.at(2.0 * t - 1.0); }
    json spec() const override {
        return {{"kind", "catenation"}, {"n", n()}, {"paths", {left.node().spec(), right.node().spec()}}};
    }
};

struct ReverseNode final : PathNode {
    SympPath inner;
    explicit ReverseNode(SympPath p) : inner(std::move(p)) {}
    int n() const override { return inner.n(); }
    std::string kind() const override { return "reverse"; }
    Mat eval(double t) const override { return inner.at(1.0 - t); }
    json spec() const override { return {{"kind", "reverse"}, {"n", n()}, {"path", inner.node().spec()}}; }
};

struct PerturbNode final : PathNode {
    SympPath inner;
    double theta;
    Mat rot;
    PerturbNode(SympPath p, double th)
        : inner(std::move(p)), theta(th), rot(exp_minus_theta_j(inner.n(), th)) {}
    int n() const override { return inner.n(); }
    std::string kind() const override { return "perturb"; }
    Mat eval(double t) const override { return rot * inner.at(t); }
    json spec() const override {
        return {{"kind", "perturb"}, {"n", n()}, {"theta", theta}, {"path", inner.node().spec()}};
    }
};

struct DirectSumNode final : PathNode {
    SympPath a, b;
    DirectSumNode(SympPath p, SympPath q) : a(std::move(p)), b(std::move(q)) {}
    int n() const override { return a.n() + b.n(); }
    std::string kind() const override { return "direct_sum"; }
    Mat eval(double t) const override { return symplectic_direct_sum(a.at(t), b.at(t)); }
    json spec() const override {
        return {{"kind", "direct_sum"}, {"n", n()}, {"paths", {a.node().spec(), b.node().spec()}}};
    }
};

struct SegmentNode final : PathNode {
    SympPath inner;
    double a, b;
    SegmentNode(SympPath p, double lo, double hi) : inner(std::move(p)), a(lo), b(hi) {}
    int n() const override { return inner.n(); }
    std::string kind() const override { return "segment"; }
    Mat eval(double t) const override { return inner.at(std::clamp(a + (b - a) * t, 0.0, 1.0)); }
    json spec() const override {
        return {{"kind", "segment"}, {"n", n()}, {"from", a}, {"to", b}, {"path", inner.node().spec()}};
    }
};

struct ConjugateNode final : PathNode {
    SympPath inner;
    Mat t_mat, t_inv;
    ConjugateNode(SympPath p, Mat t) : inner(std::move(p)), t_mat(std::move(t)) {
        const int n = inner.n();
        t_inv = -j0(n) * t_mat.transpose() * j0(n);
    }
    int n() const override { return inner.n(); }
    std::string kind() const override { return "conjugate"; }
    Mat eval(double t) const override { return t_mat * inner.at(t) * t_inv; }
    json spec() const override {
        return {{"kind", "conjugate"}, {"n", n()}, {"by", matrix_json(t_mat)}, {"path", inner.node().spec()}};
    }
};

struct ReparamNode final : PathNode {
    SympPath inner;
    Polynomial sigma;
    ReparamNode(SympPath p, Polynomial s) : inner(std::move(p)), sigma(std::move(s)) {}
    int n() const override { return inner.n(); }
    std::string kind() const override { return "reparam"; }
    Mat eval(double t) const override { return inner.at(std::clamp(sigma(t), 0.0, 1.0)); }
    json spec() const override {
        return {{"kind", "reparam"}, {"n", n()}, {"sigma", sigma.coeffs}, {"path", inner.node().spec()}};
    }
};

struct ProductNode final : PathNode {
    SympPath a, b;
    ProductNode(SympPath p, SympPath q) : a(std::move(p)), b(std::move(q)) {}
    int n() const override { return a.n(); }
    std::string kind() const override { return "product"; }
    Mat eval(double t) const override { return a.at(t) * b.at(t); }
    json spec() const override {
        return {{"kind", "product"}, {"n", n()}, {"paths", {a.node().spec(), b.node().spec()}}};
    }
};

struct FlowNode final : PathNode {
    Mat h;
    int n() const override { return static_cast<int>(h.rows() / 2); }
    std::string kind() const override { return "flow"; }
    Mat eval(double t) const override { return Mat((t * h).exp()); }
    json spec() const override { return {{"kind", "flow"}, {"n", n()}, {"hamiltonian", matrix_json(h)}}; }
};

struct PolarRadialNode final : PathNode {
    Mat m, p_log_eigvec;
    Vec log_d;
    Mat o;
    explicit PolarRadialNode(const Mat& mm) : m(mm) {
        const Mat s = m * m.transpose();
        Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (s + s.transpose()));
        p_log_eigvec = es.eigenvectors();
        log_d = 0.5 * es.eigenvalues().array().log();  // log of P's eigenvalues
        o = spd_power(s, -0.5) * m;
    }
    int n() const override { return static_cast<int>(m.rows() / 2); }
    std::string kind() const override { return "polar_radial"; }
    Mat eval(double t) const override {
        if (t == 0.0) return m;
        const Vec d = ((1.0 - t) * log_d).array().exp();
        return p_log_eigvec * d.asDiagonal() * p_log_eigvec.transpose() * o;
    }
};

struct GeodesicNode final : PathNode {
    CMat u1, log_rel;
    Mat o2;
    GeodesicNode(const Mat& a, const Mat& b) : u1(unitary_of(a)), o2(b) {
        const CMat rel = u1.adjoint() * unitary_of(b);
        Eigen::ComplexSchur<CMat> schur(rel);
        const CMat& q = schur.matrixU();
        CMat d = CMat::Zero(rel.rows(), rel.cols());
        for (int i = 0; i < rel.rows(); ++i) {
            const cplx z = schur.matrixT()(i, i);
            d(i, i) = cplx(0.0, std::arg(z));
        }
        log_rel = q * d * q.adjoint();
    }
    int n() const override { return static_cast<int>(u1.rows()); }
    std::string kind() const override { return "unitary_geodesic"; }
    Mat eval(double t) const override {
        if (t == 1.0) return o2;
        return orthosymplectic_of(CMat(u1 * CMat(t * log_rel).exp()));
    }
};

struct CorrectionLoopNode final : PathNode {
    std::vector<double> angles;
    int k = 0;
    int n() const override { return static_cast<int>(angles.size()); }
    std::string kind() const override { return "correction_loop"; }
    Mat eval(double t) const override {
        auto a = angles;
        if (t != 1.0) a[0] -= 2.0 * kPi * k * t;
        return rotation_blocks(a);
    }
};

struct SampledAnglesNode final : PathNode {
    std::vector<double> grid;
    std::vector<std::vector<double>> angles;
    int n() const override { return static_cast<int>(angles.front().size()); }
    std::string kind() const override { return "sampled_angles"; }
    Mat eval(double t) const override {
        auto it = std::upper_bound(grid.begin(), grid.end(), t);
        std::size_t i = it == grid.begin() ? 0 : static_cast<std::size_t>(it - grid.begin()) - 1;
        if (i + 1 >= grid.size()) return rotation_blocks(angles.back());
        const double s = (t - grid[i]) / (grid[i + 1] - grid[i]);
        std::vector<double> a(angles[i].size());
        for (std::size_t j = 0; j < a.size(); ++j) a[j] = (1.0 - s) * angles[i][j] + s * angles[i + 1][j];
        return rotation_blocks(a);
    }
};

template <class Node, class... Args>
SympPath make(Args&&... args) {
    return SympPath(std::make_shared<const Node>(std::forward<Args>(args)...));
}

}  // namespace

json PathNode::spec() const {
    fail(ErrorCode::SchemaError, "generator '" + kind() + "' has no path-spec form");
}

Polynomial::Polynomial(std::vector<double> c) : coeffs(std::move(c)) {
    if (coeffs.empty()) coeffs.push_back(0.0);
    if (static_cast<int>(coeffs.size()) > kMaxDegree + 1)
        fail(ErrorCode::SchemaError, "polynomial degree exceeds 8");
}

double Polynomial::operator()(double t) const {
    double v = 0.0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) v = v * t + *it;
    return v;
}

Polynomial Polynomial::derivative() const {
    std::vector<double> d;
    for (std::size_t i = 1; i < coeffs.size(); ++i) d.push_back(static_cast<double>(i) * coeffs[i]);
    return Polynomial(d);
}

SympPath::SympPath(std::shared_ptr<const PathNode> node) : node_(std::move(node)) {}

int SympPath::n() const { return node_->n(); }
std::string SympPath::kind() const { return node_->kind(); }

Mat SympPath::at(double t) const {
    if (!(t >= 0.0 && t <= 1.0)) {
        std::ostringstream os;
        os << "path parameter " << t << " outside [0,1]";
        fail(ErrorCode::OutOfDomain, os.str());
    }
    return node_->eval(t);
}

SympMatrix SympPath::evaluate(double t, const Config& cfg) const { return SympMatrix::check(at(t), cfg.tol.path); }

SympPath samples_path(std::vector<double> ts, std::vector<Mat> ms, const Config& cfg) {
    if (ts.size() < 2 || ts.size() != ms.size()) fail(ErrorCode::SchemaError, "samples need at least two (t, matrix) pairs");
    if (ts.front() != 0.0 || ts.back() != 1.0) fail(ErrorCode::SchemaError, "sample times must start at 0 and end at 1");
    for (std::size_t i = 1; i < ts.size(); ++i)
        if (!(ts[i] > ts[i - 1])) fail(ErrorCode::SchemaError, "sample times must be strictly increasing");
    for (const auto& m : ms) {
        require_dim(m, "samples");
        if (m.rows() != ms.front().rows()) fail(ErrorCode::DimensionMismatch, "samples differ in dimension");
        SympMatrix::check(m, cfg.tol.symp);
    }
    auto node = std::make_shared<SamplesNode>();
    node->ts = std::move(ts);
    node->ms = std::move(ms);
    for (std::size_t i = 0; i + 1 < node->ts.size(); ++i) {
        const Mat mid = 0.5 * (node->ms[i] + node->ms[i + 1]);
        const Mat proj = project_symplectic(mid);
        if (max_abs(Mat(proj - mid)) > cfg.tol.sample_projection * std::max(1.0, max_abs(mid)) ||
            symplecticity_residual(proj) > cfg.tol.path)
            fail(ErrorCode::NotSymplectic, "sample grid too coarse: interpolant leaves Sp(2n) beyond projection tolerance");
    }
    return SympPath(node);
}

SympPath rotation_blocks_path(std::vector<Polynomial> thetas) {
    if (thetas.empty()) fail(ErrorCode::SchemaError, "rotation_blocks needs at least one angle function");
    auto node = std::make_shared<RotationBlocksNode>();
    node->thetas = std::move(thetas);
    return SympPath(node);
}

SympPath shear_path(int n, int row, int col, double slope) {
    if (n <= 0 || row < 0 || col < 0 || row >= 2 * n || col >= 2 * n)
        fail(ErrorCode::SchemaError, "shear entry out of range");
    auto node = std::make_shared<ShearNode>();
    node->half = n;
    node->row = row;
    node->col = col;
    node->slope = slope;
    if (symplecticity_residual(node->eval(1.0)) > 1e-12)
        fail(ErrorCode::NotSymplectic, "shear entry must couple x_j with y_j");
    return SympPath(node);
}

SympPath constant_path(const Mat& m) {
    require_dim(m, "constant");
    auto node = std::make_shared<ConstantNode>();
    node->m = m;
    return SympPath(node);
}

SympPath catenate(const SympPath& p, const SympPath& q, const Config& cfg) {
    if (p.n() != q.n()) fail(ErrorCode::DimensionMismatch, "catenation of paths of different dimension");
    if (!close_matrices(p.end(), q.start(), cfg.tol.symp))
        fail(ErrorCode::EndpointMismatch, "catenation requires p(1) = q(0)");
    return make<CatenationNode>(p, q);
}

SympPath reverse(const SympPath& p) {
    if (const auto* r = dynamic_cast<const ReverseNode*>(&p.node())) return r->inner;
    return make<ReverseNode>(p);
}

SympPath perturb_global(const SympPath& p, double theta) { return make<PerturbNode>(p, theta); }

SympPath direct_sum(const SympPath& p, const SympPath& q) { return make<DirectSumNode>(p, q); }

SympPath segment(const SympPath& p, double a, double b) {
    if (!(0.0 <= a && a < b && b <= 1.0)) fail(ErrorCode::OutOfDomain, "segment needs 0 <= a < b <= 1");
    return make<SegmentNode>(p, a, b);
}

SympPath conjugate(const SympPath& p, const Mat& t) {
    if (t.rows() != 2 * p.n() || t.cols() != 2 * p.n()) fail(ErrorCode::DimensionMismatch, "conjugator dimension");
    SympMatrix::check(t, 1e-9);
    return make<ConjugateNode>(p, t);
}

SympPath reparameterize(const SympPath& p, Polynomial sigma) {
    if (std::abs(sigma(0.0)) > 1e-12 || std::abs(sigma(1.0) - 1.0) > 1e-12)
        fail(ErrorCode::SchemaError, "reparameterization must fix 0 and 1");
    return make<ReparamNode>(p, std::move(sigma));
}

SympPath product(const SympPath& p, const SympPath& q) {
    if (p.n() != q.n()) fail(ErrorCode::DimensionMismatch, "product of paths of different dimension");
    return make<ProductNode>(p, q);
}

SympPath hamiltonian_flow(const Mat& h) {
    require_dim(h, "flow");
    const int n = static_cast<int>(h.rows() / 2);
    const Mat s = j0(n) * h;
    if (max_abs(Mat(s - s.transpose())) > 1e-9 * std::max(1.0, max_abs(h)))
        fail(ErrorCode::NotSymplectic, "flow generator is not Hamiltonian");
    auto node = std::make_shared<FlowNode>();
    node->h = h;
    return SympPath(node);
}

SympPath polar_radial(const Mat& m) {
    require_dim(m, "polar_radial");
    return make<PolarRadialNode>(m);
}

SympPath unitary_geodesic(const Mat& o1, const Mat& o2) { return make<GeodesicNode>(o1, o2); }

SympPath correction_loop(std::vector<double> angles, int k) {
    auto node = std::make_shared<CorrectionLoopNode>();
    node->angles = std::move(angles);
    node->k = k;
    return SympPath(node);
}

SympPath sampled_angles(std::vector<double> grid, std::vector<std::vector<double>> angles) {
    if (grid.size() < 2 || grid.size() != angles.size()) fail(ErrorCode::SchemaError, "sampled angles need a grid");
    auto node = std::make_shared<SampledAnglesNode>();
    node->grid = std::move(grid);
    node->angles = std::move(angles);
    return SympPath(node);
}

Tail build_tail(const Mat& m, const Config& cfg) {
    Normalization target = normalization_matrix(m, cfg);
    if (close_matrices(m, target.o, cfg.tol.symp)) {
        return Tail{constant_path(target.o), target, 0.0, 0, true};
    }
    const auto radial = polar_radial(m);
    const Mat om = radial.end();
    const auto stages = catenate(radial, unitary_geodesic(om, target.o), cfg);
    const double d = lift_delta(stages, cfg).delta;
    const double half = d / 2.0;
    const double k_real = std::round(half);
    if (std::abs(half - k_real) * 2.0 > cfg.tol.integer) {
        std::ostringstream os;
        os << "normalization path has rotation " << d << ", not an even integer";
        fail(ErrorCode::OddRotation, os.str());
    }
    const int k = static_cast<int>(k_real);
    SympPath forward = k == 0 ? stages : catenate(stages, correction_loop(target.angles, k), cfg);
    return Tail{reverse(forward), target, d, k, false};
}

}  // namespace sympidx
