#include "sympidx/cli.hpp"

#include "sympidx/error.hpp"
#include "sympidx/io.hpp"
#include "sympidx/verify.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>

namespace sympidx {

namespace {

constexpr int kMaxTextMatrix = 8;

struct Options {
    std::string command;
    std::string input;
    std::string index;
    std::optional<double> theta_max;
    std::optional<double> tol_eig;
    std::string emit_lift;
    std::string emit_angles;
    std::string format = "json";
    std::string fault;
    std::string long_route = "comparison";
};

bool is_number_matrix(const Json& j) {
    if (!j.is_array() || j.empty()) return false;
    return std::all_of(j.begin(), j.end(), [](const Json& row) {
        return row.is_array() && !row.empty() &&
               std::all_of(row.begin(), row.end(), [](const Json& x) { return x.is_number(); });
    });
}

std::string scalar_text(const Json& j) {
    if (j.is_number_float()) {
        std::ostringstream os;
        os << std::setprecision(12) << j.get<double>();
        return os.str();
    }
    if (j.is_string()) return j.get<std::string>();
    return j.dump();
}

void render_text(std::ostream& os, const Json& j, const std::string& prefix) {
    if (j.is_object()) {
        for (const auto& [k, v] : j.items()) render_text(os, v, prefix.empty() ? k : prefix + "." + k);
        return;
    }
    if (is_number_matrix(j)) {
        const auto rows = j.size(), cols = j[0].size();
        os << prefix << ":";
        if (rows > kMaxTextMatrix || cols > kMaxTextMatrix)
            os << " [" << rows << "x" << cols << " matrix, showing " << kMaxTextMatrix << "x" << kMaxTextMatrix
               << ", truncated]";
        os << '\n';
        for (std::size_t r = 0; r < std::min<std::size_t>(rows, kMaxTextMatrix); ++r) {
            os << "   ";
            for (std::size_t c = 0; c < std::min<std::size_t>(j[r].size(), kMaxTextMatrix); ++c)
                os << ' ' << std::setw(14) << scalar_text(j[r][c]);
            if (j[r].size() > kMaxTextMatrix) os << " ...";
            os << '\n';
        }
        if (rows > kMaxTextMatrix) os << "    ...\n";
        return;
    }
    if (j.is_array() && std::any_of(j.begin(), j.end(), [](const Json& x) { return x.is_structured(); })) {
        for (std::size_t i = 0; i < j.size(); ++i) render_text(os, j[i], prefix + "[" + std::to_string(i) + "]");
        return;
    }
    os << std::left << std::setw(32) << prefix << ' ';
    if (j.is_array()) {
        os << '[';
        for (std::size_t i = 0; i < j.size(); ++i) os << (i ? ", " : "") << scalar_text(j[i]);
        os << "]\n";
    } else {
        os << scalar_text(j) << '\n';
    }
}

void emit(std::ostream& out, const Options& o, const Json& doc) {
    if (o.format == "text") {
        render_text(out, doc, "");
    } else {
        out << doc.dump(2) << '\n';
    }
}

std::ofstream open_side_file(const std::string& file) {
    std::ofstream f(file);
    if (!f) fail(ErrorCode::IoError, "cannot write '" + file + "'");
    return f;
}

Json envelope(const Options& o, const Config& cfg) {
    Json j{{"command", o.command}, {"config", to_json(cfg)}};
    if (!o.input.empty()) j["input"] = o.input;
    return j;
}

LongRoute parse_route(const std::string& s) {
    if (s == "perturbation") return LongRoute::Perturbation;
    if (s == "both") return LongRoute::Both;
    return LongRoute::Comparison;
}

Json classical_json(const std::string& which, const SympPath& p, const Options& o, const Config& cfg) {
    if (which == "cz") return to_json(conley_zehnder(p, cfg));
    if (which == "long") return to_json(long_index(p, parse_route(o.long_route), cfg));
    if (which == "l0") return to_json(l0_index(p, cfg));
    if (which == "sps") {
        const auto s = sps_indices(p, cfg);
        return {{"long_sps", to_json(s.long_sps)}, {"l0_sps", to_json(s.liu_sps)}};
    }
    fail(ErrorCode::SchemaError, "unknown index '" + which + "'");
}

int cmd_index(const Options& o, const Config& cfg, std::ostream& out) {
    Json doc = envelope(o, cfg);
    const SympPath p = parse_spec(load_json(o.input), cfg);
    const std::string which = o.index.empty() ? "mu" : o.index;
    doc["index"] = which;
    if (which == "mu") {
        const auto rep = maslov_index(p, cfg);
        doc["report"] = to_json(rep);
        if (!o.emit_lift.empty()) {
            auto f = open_side_file(o.emit_lift);
            write_lift_csv(f, rep.lift);
        }
    } else if (which == "rs") {
        doc["report"] = {{"value", rs_index_symp(p, cfg)},
                         {"crossings", to_json(crossings(FramePath{p, LagrangianFrame::vertical(p.n())},
                                                         LagrangianFrame::vertical(p.n()), cfg))}};
    } else if (which == "clm") {
        const auto osp = sp_to_osp(p, cfg);
        doc["report"] = to_json(clm_from_angles(osp, cfg));
        if (!o.emit_angles.empty()) {
            auto f = open_side_file(o.emit_angles);
            write_angles_csv(f, osp);
        }
    } else {
        doc["report"] = classical_json(which, p, o, cfg);
    }
    emit(out, o, doc);
    return 0;
}

Json matrix_spectrum(const Mat& m, const Config& cfg) {
    check_symplectic(m, cfg);
    const auto sd = spectral_data(m, cfg);
    const auto nm = normalization_matrix(m, cfg);
    const auto rho_v = sd.rho;
    return {{"spectral", to_json(sd)},
            {"first_kind", to_json(first_kind(sd, cfg))},
            {"r", count_r(sd, cfg)},
            {"rho", Json::array({rho_v.real(), rho_v.imag()})},
            {"normalization_angles", nm.angles}};
}

int cmd_spectrum(const Options& o, const Config& cfg, std::ostream& out) {
    Json doc = envelope(o, cfg);
    const Json in = load_json(o.input);
    if (in.is_object() && in.contains("matrix") && !in.contains("kind")) {
        doc["report"] = matrix_spectrum(parse_matrix(in.at("matrix")), cfg);
    } else {
        const SympPath p = parse_spec(in, cfg);
        doc["report"] = {{"start", matrix_spectrum(p.start(), cfg)}, {"end", matrix_spectrum(p.end(), cfg)}};
    }
    emit(out, o, doc);
    return 0;
}

int cmd_rotation(const Options& o, const Config& cfg, std::ostream& out) {
    Json doc = envelope(o, cfg);
    const SympPath p = parse_spec(load_json(o.input), cfg);
    const auto lift = lift_delta(p, cfg);
    Json rep = to_json(lift);
    rep["delta_prime"] = delta_prime(p, cfg);
    const Mat gap = p.start() - p.end();
    if (max_abs(gap) <= cfg.tol.path * std::max(1.0, max_abs(p.start()))) rep["loop_delta"] = check_loop_integral(p, cfg);
    doc["report"] = rep;
    if (!o.emit_lift.empty()) {
        auto f = open_side_file(o.emit_lift);
        write_lift_csv(f, lift);
    }
    emit(out, o, doc);
    return 0;
}

int cmd_rs(const Options& o, const Config& cfg, std::ostream& out) {
    Json doc = envelope(o, cfg);
    const Json in = load_json(o.input);
    if (is_frame_pair(in)) {
        const auto fp = parse_frame_pair(in, cfg);
        const auto cs = relative_crossings(fp.l1, fp.l2, cfg);
        doc["report"] = {{"value", relative_rs(fp.l1, fp.l2, cfg)}, {"crossings", to_json(cs)}};
    } else {
        const SympPath p = parse_spec(in, cfg);
        const auto v = LagrangianFrame::vertical(p.n());
        doc["report"] = {{"value", rs_index_symp(p, cfg)}, {"crossings", to_json(crossings(FramePath{p, v}, v, cfg))}};
    }
    emit(out, o, doc);
    return 0;
}

int cmd_clm(const Options& o, const Config& cfg, std::ostream& out) {
    Json doc = envelope(o, cfg);
    const Json in = load_json(o.input);
    std::optional<OspPath> osp;
    if (is_frame_pair(in)) {
        const auto fp = parse_frame_pair(in, cfg);
        osp = relative_osp(fp.l1, fp.l2, cfg);
    } else {
        osp = sp_to_osp(parse_spec(in, cfg), cfg);
    }
    doc["report"] = to_json(clm_from_angles(*osp, cfg));
    if (!o.emit_angles.empty()) {
        auto f = open_side_file(o.emit_angles);
        write_angles_csv(f, *osp);
    }
    emit(out, o, doc);
    return 0;
}

int cmd_classical(const Options& o, const Config& cfg, std::ostream& out) {
    Json doc = envelope(o, cfg);
    const SympPath p = parse_spec(load_json(o.input), cfg);
    if (!o.index.empty()) {
        doc["index"] = o.index;
        doc["report"] = classical_json(o.index, p, o, cfg);
    } else {
        Json all = Json::object();
        for (const char* k : {"cz", "long", "l0", "sps"}) {
            try {
                all[k] = classical_json(k, p, o, cfg);
            } catch (const Error& e) {
                all[k] = {{"error", std::string(to_string(e.code()))}, {"message", e.what()}};
            }
        }
        doc["report"] = all;
    }
    emit(out, o, doc);
    return 0;
}

int cmd_verify(const Options& o, const Config& cfg, std::ostream& out, std::ostream& err) {
    const auto rows = verify_paper(cfg);
    std::vector<std::string> failed;
    for (const auto& r : rows)
        if (!r.pass) failed.push_back(r.name);
    if (o.format == "text") {
        std::size_t w = 4;
        for (const auto& r : rows) w = std::max(w, r.name.size());
        for (const auto& r : rows) {
            out << (r.pass ? "PASS" : "FAIL") << "  [" << r.criterion << "] " << std::left
                << std::setw(static_cast<int>(w)) << r.name << "  expected: " << r.expected << '\n'
                << std::string(w + 11, ' ') << "computed: " << r.computed << '\n';
        }
    } else {
        Json doc = envelope(o, cfg);
        Json js = Json::array();
        for (const auto& r : rows)
            js.push_back({{"criterion", r.criterion},
                          {"name", r.name},
                          {"expected", r.expected},
                          {"computed", r.computed},
                          {"pass", r.pass}});
        doc["rows"] = js;
        doc["passed"] = failed.empty();
        out << doc.dump(2) << '\n';
    }
    if (failed.empty()) return 0;
    std::string names;
    for (const auto& f : failed) names += (names.empty() ? "" : ", ") + f;
    err << Json{{"error", "VerificationFailed"}, {"message", "failed rows: " + names}, {"exit", 2}}.dump() << '\n';
    return 2;
}

void error_line(std::ostream& err, const std::string& code, const std::string& msg, int status) {
    err << Json{{"error", code}, {"message", msg}, {"exit", status}}.dump() << '\n';
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Options o;
    CLI::App app{"Maslov-type and classical indices of symplectic paths", "sympidx"};
    app.fallthrough();
    app.require_subcommand(1);
    app.add_option("--input", o.input, "path-spec or frame-spec JSON file");
    app.add_option("--index", o.index, "index to compute")
        ->check(CLI::IsMember({"mu", "cz", "long", "l0", "sps", "rs", "clm"}));
    app.add_option("--theta-max", o.theta_max, "upper bound for perturbation angles")->check(CLI::PositiveNumber);
    app.add_option("--tol-eig", o.tol_eig, "eigenvalue rank tolerance")->check(CLI::PositiveNumber);
    app.add_option("--emit-lift", o.emit_lift, "write the rotation lift CSV");
    app.add_option("--emit-angles", o.emit_angles, "write the angle functions CSV");
    app.add_option("--format", o.format, "output format")->check(CLI::IsMember({"json", "text"}));
    app.add_option("--long-route", o.long_route, "route for the Long index")
        ->check(CLI::IsMember({"comparison", "perturbation", "both"}));
    app.add_option("--inject-fault", o.fault)->group("")->check(CLI::IsMember({"delta-beta", "r-pair"}));

    const std::vector<std::pair<const char*, const char*>> commands{
        {"index", "Maslov-type index (or --index selection)"},
        {"spectrum", "eigenvalue clusters, first-kind spectrum and r"},
        {"rotation", "rotation number of a path"},
        {"rs", "crossing-form index"},
        {"clm", "index of a Lagrangian pair via angle functions"},
        {"classical", "classical indices"},
        {"verify-paper", "reference example table"},
    };
    for (const auto& [name, help] : commands) app.add_subcommand(name, help);

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        error_line(err, "UsageError", e.what(), 3);
        return 3;
    }
    o.command = app.get_subcommands().front()->get_name();

    Config cfg;
    if (o.theta_max) cfg.theta_max = *o.theta_max;
    if (o.tol_eig) cfg.tol.eig = *o.tol_eig;
    cfg.fault.flip_half_circle = o.fault == "delta-beta";
    cfg.fault.flip_r_pair_rule = o.fault == "r-pair";

    try {
        if (o.command == "verify-paper") return cmd_verify(o, cfg, out, err);
        if (o.input.empty()) fail(ErrorCode::SchemaError, "--input is required for '" + o.command + "'");
        if (o.command == "index") return cmd_index(o, cfg, out);
        if (o.command == "spectrum") return cmd_spectrum(o, cfg, out);
        if (o.command == "rotation") return cmd_rotation(o, cfg, out);
        if (o.command == "rs") return cmd_rs(o, cfg, out);
        if (o.command == "clm") return cmd_clm(o, cfg, out);
        return cmd_classical(o, cfg, out);
    } catch (const Error& e) {
        const int status = is_input_error(e.code()) ? 3 : 2;
        error_line(err, std::string(to_string(e.code())), e.what(), status);
        return status;
    } catch (const std::exception& e) {
        error_line(err, "InternalError", e.what(), 2);
        return 2;
    }
}

}  // namespace sympidx
