#pragma once

#include "sympidx/config.hpp"
#include "sympidx/linalg.hpp"
#include "sympidx/pathlib.hpp"

#include <iosfwd>
#include <vector>

namespace sympidx {

// 2n x n frame (X; Y) of a Lagrangian subspace.
class LagrangianFrame {
public:
    // Throws InvalidFrame unless X^T Y is symmetric and Z has full column rank.
    static LagrangianFrame check(const Mat& z, double tol = 1e-9);
    static LagrangianFrame horizontal(int n);  // R^n x {0}
    static LagrangianFrame vertical(int n);    // {0} x R^n

    const Mat& z() const noexcept { return z_; }
    int n() const noexcept { return static_cast<int>(z_.cols()); }

private:
    explicit LagrangianFrame(Mat z) : z_(std::move(z)) {}
    Mat z_;
};

// t -> path(t) * base.
struct FramePath {
    SympPath path;
    LagrangianFrame base;

    int n() const { return base.n(); }
    Mat at(double t) const { return path.at(t) * base.z(); }
    static FramePath fixed(const LagrangianFrame& f);
};

struct Crossing {
    double t = 0.0;
    int intersection_dim = 0;
    int signature = 0;
    bool regular = true;
    bool stable = true;  // signature unchanged at a 10x finer difference step
    std::vector<double> form_eigenvalues;
};

// Crossings of L1(t) with the fixed L2. Forms are not checked for regularity here.
std::vector<Crossing> crossings(const FramePath& l1, const LagrangianFrame& l2, const Config& cfg = {});
// Crossings of the pair (L1(t), L2(t)) with the relative form.
std::vector<Crossing> relative_crossings(const FramePath& l1, const FramePath& l2, const Config& cfg = {});

// Half-integers; IrregularCrossing on degenerate forms.
double rs_index(const FramePath& l1, const LagrangianFrame& l2, const Config& cfg = {});
double rs_index_symp(const SympPath& path, const Config& cfg = {});
double relative_rs(const FramePath& l1, const FramePath& l2, const Config& cfg = {});

struct OspPath {
    std::vector<double> grid;
    std::vector<std::vector<double>> angles;  // angles[k][j] = theta_j(grid[k])
    SympPath path;                            // block rotations through the angles
};

// Angle functions of path(t) L1 with L1 = R^n x {0}.
OspPath sp_to_osp(const SympPath& path, const Config& cfg = {});
// Same for an arbitrary frame path.
OspPath frames_to_osp(const FramePath& l2, const Config& cfg = {});
// Angles of L2(t) after moving L1(t) to R^n x {0} by a unitary change of frame.
OspPath relative_osp(const FramePath& l1, const FramePath& l2, const Config& cfg = {});

struct ClmReport {
    int value = 0;
    int d = 0;
    int p = 0;
    int q = 0;
    double theta = 0.0;
};

ClmReport clm_index(const SympPath& path, const Config& cfg = {});
ClmReport clm_index(const FramePath& l1, const FramePath& l2, const Config& cfg = {});
ClmReport clm_from_angles(const OspPath& osp, const Config& cfg = {});

// Number of blocks whose crossing with {0} x R at the endpoint is regular.
int s_count(const std::vector<SympPath>& blocks, double t, const Config& cfg = {});

// CSV with header t,theta_1..theta_n.
void write_angles_csv(std::ostream& os, const OspPath& osp);

}  // namespace sympidx
