#include "sympidx/io.hpp"

#include "path_nodes.hpp"
#include "sympidx/error.hpp"

#include <fstream>
#include <optional>
#include <sstream>

namespace sympidx {

namespace {

[[noreturn]] void schema(const std::string& msg) { fail(ErrorCode::SchemaError, msg); }

const Json& field(const Json& doc, const char* key) {
    if (!doc.is_object() || !doc.contains(key)) schema(std::string("missing field '") + key + "'");
    return doc.at(key);
}

double number(const Json& j, const char* what) {
    if (!j.is_number()) schema(std::string(what) + " must be a number");
    return j.get<double>();
}

int integer(const Json& j, const char* what) {
    if (!j.is_number_integer()) schema(std::string(what) + " must be an integer");
    return j.get<int>();
}

Polynomial polynomial(const Json& j) {
    if (!j.is_array() || j.empty()) schema("polynomial must be a non-empty list of coefficients");
    std::vector<double> c;
    for (const auto& x : j) c.push_back(number(x, "coefficient"));
    return Polynomial(std::move(c));
}

std::vector<SympPath> children(const Json& doc, const Config& cfg, std::size_t min_count) {
    const Json& ps = field(doc, "paths");
    if (!ps.is_array() || ps.size() < min_count)
        schema("'paths' must list at least " + std::to_string(min_count) + " path(s)");
    std::vector<SympPath> out;
    for (const auto& p : ps) out.push_back(parse_spec(p, cfg));
    return out;
}

SympPath build(const Json& doc, const Config& cfg) {
    if (!doc.is_object()) schema("path spec must be an object");
    const Json& kj = field(doc, "kind");
    if (!kj.is_string()) schema("'kind' must be a string");
    const std::string kind = kj.get<std::string>();

    if (kind == "samples") {
        const Json& ss = field(doc, "samples");
        if (!ss.is_array() || ss.size() < 2) schema("'samples' needs at least two entries");
        std::vector<double> ts;
        std::vector<Mat> ms;
        for (const auto& s : ss) {
            ts.push_back(number(field(s, "t"), "t"));
            ms.push_back(parse_matrix(field(s, "matrix")));
        }
        return samples_path(std::move(ts), std::move(ms), cfg);
    }
    if (kind == "rotation_blocks") {
        const Json& th = field(doc, "theta");
        if (!th.is_array() || th.empty()) schema("'theta' must be a non-empty list");
        std::vector<Polynomial> ps;
        for (const auto& p : th) ps.push_back(polynomial(p));
        return rotation_blocks_path(std::move(ps));
    }
    if (kind == "shear") {
        const int n = integer(field(doc, "n"), "n");
        const Json& e = field(doc, "entry");
        if (!e.is_array() || e.size() != 2) schema("'entry' must be [row, col]");
        const int row = integer(e[0], "row"), col = integer(e[1], "col");
        if (n <= 0 || row < 0 || col < 0 || row >= 2 * n || col >= 2 * n) fail(ErrorCode::SchemaError, "shear entry out of range");
        const double slope = doc.contains("slope") ? number(doc.at("slope"), "slope") : -1.0;
        return shear_path(n, row, col, slope);
    }
    if (kind == "constant") {
        const Mat m = parse_matrix(field(doc, "matrix"));
        check_symplectic(m, cfg);
        return constant_path(m);
    }
    if (kind == "catenation") {
        auto ps = children(doc, cfg, 2);
        SympPath acc = ps.front();
        for (std::size_t i = 1; i < ps.size(); ++i) acc = catenate(acc, ps[i], cfg);
        return acc;
    }
    if (kind == "reverse") return reverse(parse_spec(field(doc, "path"), cfg));
    if (kind == "perturb")
        return perturb_global(parse_spec(field(doc, "path"), cfg), number(field(doc, "theta"), "theta"));
    if (kind == "direct_sum") {
        auto ps = children(doc, cfg, 1);
        SympPath acc = ps.front();
        for (std::size_t i = 1; i < ps.size(); ++i) acc = direct_sum(acc, ps[i]);
        return acc;
    }
    if (kind == "segment")
        return segment(parse_spec(field(doc, "path"), cfg), number(field(doc, "from"), "from"),
                       number(field(doc, "to"), "to"));
    if (kind == "conjugate") {
        const Mat t = parse_matrix(field(doc, "by"));
        check_symplectic(t, cfg);
        return conjugate(parse_spec(field(doc, "path"), cfg), t);
    }
    if (kind == "reparam") return reparameterize(parse_spec(field(doc, "path"), cfg), polynomial(field(doc, "sigma")));
    if (kind == "product") {
        auto ps = children(doc, cfg, 2);
        SympPath acc = ps.front();
        for (std::size_t i = 1; i < ps.size(); ++i) acc = product(acc, ps[i]);
        return acc;
    }
    if (kind == "flow") return hamiltonian_flow(parse_matrix(field(doc, "hamiltonian")));
    schema("unknown path kind '" + kind + "'");
}

}  // namespace

Json load_json(const std::string& file) {
    std::ifstream in(file);
    if (!in) fail(ErrorCode::IoError, "cannot open '" + file + "'");
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        fail(ErrorCode::SchemaError, std::string("invalid JSON: ") + e.what());
    }
}

Mat parse_matrix(const Json& j) {
    if (!j.is_array() || j.empty() || !j[0].is_array() || j[0].empty())
        schema("matrix must be a non-empty list of rows");
    const auto rows = static_cast<int>(j.size());
    const auto cols = static_cast<int>(j[0].size());
    Mat m(rows, cols);
    for (int r = 0; r < rows; ++r) {
        if (!j[r].is_array() || static_cast<int>(j[r].size()) != cols) schema("matrix rows differ in length");
        for (int c = 0; c < cols; ++c) m(r, c) = number(j[r][c], "matrix entry");
    }
    return m;
}

Json matrix_to_json(const Mat& m) {
    Json rows = Json::array();
    for (int r = 0; r < m.rows(); ++r) {
        Json row = Json::array();
        for (int c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
        rows.push_back(std::move(row));
    }
    return rows;
}

SympPath parse_spec(const Json& doc, const Config& cfg) {
    SympPath p = build(doc, cfg);
    if (doc.contains("n") && integer(doc.at("n"), "n") != p.n())
        fail(ErrorCode::DimensionMismatch, "'n' does not match the path dimension");
    for (double t : {0.0, 0.5, 1.0}) p.evaluate(t, cfg);
    return p;
}

Json to_spec(const SympPath& path) { return path.node().spec(); }

FramePath parse_frame(const Json& doc, const Config& cfg) {
    if (!doc.is_object()) schema("frame spec must be an object");
    const Json& b = field(doc, "base");
    std::optional<SympPath> path;
    if (doc.contains("path")) path = parse_spec(doc.at("path"), cfg);
    auto base = [&]() {
        if (b.is_string()) {
            if (!path) schema("a named base needs a path or a matrix base");
            const std::string s = b.get<std::string>();
            if (s == "horizontal") return LagrangianFrame::horizontal(path->n());
            if (s == "vertical") return LagrangianFrame::vertical(path->n());
            schema("unknown base '" + s + "'");
        }
        return LagrangianFrame::check(parse_matrix(b), cfg.tol.symp);
    }();
    if (!path) return FramePath::fixed(base);
    if (path->n() != base.n()) fail(ErrorCode::DimensionMismatch, "frame and path dimensions differ");
    return FramePath{*path, base};
}

bool is_frame_pair(const Json& doc) { return doc.is_object() && doc.contains("l1") && doc.contains("l2"); }

FramePair parse_frame_pair(const Json& doc, const Config& cfg) {
    FramePair fp{parse_frame(field(doc, "l1"), cfg), parse_frame(field(doc, "l2"), cfg)};
    if (fp.l1.n() != fp.l2.n()) fail(ErrorCode::DimensionMismatch, "frame pair dimensions differ");
    return fp;
}

Json to_json(const Config& cfg) {
    const auto& t = cfg.tol;
    return {
        {"tolerances",
         {{"symp", t.symp},
          {"eig", t.eig},
          {"eig_ambiguous", t.eig_ambiguous},
          {"circle", t.circle},
          {"cluster", t.cluster},
          {"path", t.path},
          {"integer", t.integer},
          {"fd_step", t.fd_step},
          {"irregular", t.irregular},
          {"crossing_bisect", t.crossing_bisect},
          {"sample_projection", t.sample_projection},
          {"det_v", t.det_v}}},
        {"lift",
         {{"initial_samples", cfg.lift.initial_samples},
          {"max_depth", cfg.lift.max_depth},
          {"max_phase_step", cfg.lift.max_phase_step},
          {"max_chord", cfg.lift.max_chord}}},
        {"theta_max", cfg.theta_max},
    };
}

namespace {

Json complex_json(cplx z) { return Json::array({z.real(), z.imag()}); }

std::string kind_name(EigenKind k) {
    switch (k) {
        case EigenKind::PlusOne: return "plus_one";
        case EigenKind::MinusOne: return "minus_one";
        case EigenKind::UnitCircle: return "unit_circle";
        case EigenKind::Inside: return "inside";
        case EigenKind::Outside: return "outside";
    }
    return "unknown";
}

}  // namespace

Json to_json(const SpectralData& sd) {
    Json clusters = Json::array();
    for (const auto& c : sd.clusters) {
        Json cj{{"value", complex_json(c.value)}, {"multiplicity", c.multiplicity}, {"kind", kind_name(c.kind)}};
        if (c.kind == EigenKind::UnitCircle) cj["m_plus"] = c.m_plus;
        clusters.push_back(std::move(cj));
    }
    return {{"n", sd.n}, {"clusters", clusters}, {"m0", sd.m0}, {"rho", complex_json(sd.rho)}};
}

Json to_json(const FirstKindSpectrum& fk) {
    Json entries = Json::array();
    for (const auto& e : fk.entries) entries.push_back(complex_json(e));
    return {{"entries", entries}, {"angles", fk.angles}};
}

Json to_json(const RotationLift& lift) {
    return {{"delta", lift.delta},
            {"samples", lift.grid.size()},
            {"max_step_phase", lift.max_step_phase},
            {"alpha_start", lift.alpha.empty() ? 0.0 : lift.alpha.front()},
            {"alpha_end", lift.alpha.empty() ? 0.0 : lift.alpha.back()}};
}

Json to_json(const IndexReport& r) {
    return {{"mu", r.mu},
            {"theta", r.theta},
            {"delta_main", r.delta_main},
            {"delta_beta", r.delta_beta},
            {"tails_delta", r.tails_delta},
            {"integer_residual", r.integer_residual},
            {"endpoint_spectra", {to_json(r.start_spectrum), to_json(r.end_spectrum)}},
            {"a_angles", r.a_angles},
            {"b_angles", r.b_angles},
            {"w_angles", r.w_angles},
            {"w_target", matrix_to_json(r.w_target)},
            {"lift", to_json(r.lift)}};
}

Json to_json(const ClassicalReport& r) {
    Json j{{"kind", std::string(to_string(r.kind))},
           {"value", r.value},
           {"route", std::string(to_string(r.route))},
           {"details", r.details}};
    if (!r.candidates.empty()) j["candidates"] = r.candidates;
    return j;
}

Json to_json(const std::vector<Crossing>& cs) {
    Json out = Json::array();
    for (const auto& c : cs)
        out.push_back({{"t", c.t},
                       {"intersection_dim", c.intersection_dim},
                       {"signature", c.signature},
                       {"regular", c.regular},
                       {"stable", c.stable},
                       {"form_eigenvalues", c.form_eigenvalues}});
    return out;
}

Json to_json(const ClmReport& r) {
    return {{"value", r.value}, {"d", r.d}, {"p", r.p}, {"q", r.q}, {"theta", r.theta}};
}

}  // namespace sympidx
