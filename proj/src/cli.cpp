#include "cellform/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "cellform/calculus.hpp"
#include "cellform/curvature.hpp"
#include "cellform/forms.hpp"
#include "cellform/generators.hpp"
#include "cellform/homology.hpp"
#include "cellform/io.hpp"
#include "cellform/random.hpp"

namespace cellform {

using nlohmann::json;

namespace {

struct RunConfig {
    std::string command;
    std::string input;
    std::string generate;
    std::string weights;
    std::string form;
    std::uint64_t seed = 0;
    double tolerance = 1e-8;
    std::string format = "text";
    bool require_quasiconvex = false;
    int trials = 100;
    double threshold = 1e-12;
};

// Thrown for usage problems detected after argument parsing.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Loaded {
    CellComplex complex;
    std::string name;
};

std::string join(const std::vector<int>& v, const char* sep) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? sep : "") + std::to_string(v[i]);
    return s;
}

std::string flag(bool b) { return b ? "true" : "false"; }

class Printer {
public:
    Printer(std::ostream& out, bool color) : out_(out), color_(color) {}
    std::string status(bool ok) const {
        if (!color_) return ok ? "pass" : "fail";
        return ok ? "\x1b[32mpass\x1b[0m" : "\x1b[31mfail\x1b[0m";
    }
    std::ostream& out() { return out_; }

private:
    std::ostream& out_;
    bool color_;
};

CellComplex::Weights random_weights(const CellComplex& complex, Rng& rng) {
    CellComplex::Weights w;
    for (int p = 0; p <= complex.dimension(); ++p) {
        std::vector<double> row(complex.cell_count(p));
        for (double& x : row) x = rng.uniform(0.1, 10.0);
        w.push_back(std::move(row));
    }
    return w;
}

Loaded load(const RunConfig& cfg, Rng& rng, std::ostream& err) {
    if (cfg.input.empty() == cfg.generate.empty()) throw UsageError("give exactly one of --input or --generate");
    std::optional<CellComplex> complex;
    std::string name;
    if (!cfg.generate.empty()) {
        complex.emplace(generate(cfg.generate, cfg.seed));
        name = cfg.generate;
    } else {
        const std::string& path = cfg.input;
        if (path.size() >= 4 && path.compare(path.size() - 4, 4, ".off") == 0) {
            OffMesh mesh = parse_off(read_file(path));
            for (auto [a, b] : mesh.non_manifold_edges)
                err << "warning: NonManifoldEdge: edge " << a << "-" << b << " does not lie in exactly two faces\n";
            complex.emplace(std::move(mesh.complex));
        } else {
            complex.emplace(load_complex_file(path));
        }
        name = path.substr(path.find_last_of('/') + 1);
    }

    const std::string& w = cfg.weights;
    if (w.empty()) return {std::move(*complex), name};
    CellComplex::Weights weights;
    if (w == "random") {
        weights = random_weights(*complex, rng);
    } else if (w.rfind("const:", 0) == 0) {
        double x = 0;
        const std::string v = w.substr(6);
        auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
        if (ec != std::errc() || p != v.data() + v.size() || v.empty()) throw UsageError("bad --weights value " + w);
        for (int d = 0; d <= complex->dimension(); ++d) weights.emplace_back(complex->cell_count(d), x);
    } else {
        weights = parse_weights_json(*complex, read_file(w));
    }
    return {complex->with_weights(std::move(weights)), name};
}

std::optional<OneForm> load_form(const RunConfig& cfg, const CellComplex& complex, Rng& rng) {
    if (cfg.form.empty()) return std::nullopt;
    if (cfg.form == "random") {
        OneForm omega{Eigen::VectorXd(complex.vectors().size())};
        for (Eigen::Index i = 0; i < omega.values.size(); ++i) omega.values[i] = rng.uniform(-1.0, 1.0);
        return omega;
    }
    const std::string text = read_file(cfg.form);
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw Error(ErrorCode::ParseError, "malformed JSON in " + cfg.form + " at byte " + std::to_string(e.byte));
    }
    return one_form_from_json(complex, j);
}

void emit_json(std::ostream& out, const json& j) { out << j.dump(2) << "\n"; }

// ---------------------------------------------------------------------------

int cmd_validate(const RunConfig& cfg, Printer& pr, const CellComplex& complex, std::ostream& err) {
    const auto counts = complex.cell_counts();
    const auto chi = complex.euler_characteristic();
    const QuasiconvexityReport qc = complex.quasiconvexity();
    const bool closed = complex.dimension() == 2 && complex.is_closed_surface();
    std::ostream& out = pr.out();
    if (cfg.format == "json") {
        emit_json(out, {{"cell_counts", counts},
                        {"dimension", complex.dimension()},
                        {"chi", chi},
                        {"quasiconvex", qc.quasiconvex},
                        {"closed", closed}});
    } else if (cfg.format == "csv") {
        out << "cell_counts,chi,quasiconvex,closed\n"
            << join(counts, " ") << "," << chi << "," << flag(qc.quasiconvex) << "," << flag(closed) << "\n";
    } else {
        out << join(counts, " ") << ", chi=" << chi << ", quasiconvex=" << flag(qc.quasiconvex)
            << ", closed=" << flag(closed) << "\n";
    }
    if (cfg.require_quasiconvex && !qc.quasiconvex) {
        err << "error: NotQuasiconvex: closures of " << to_string(qc.first) << " and " << to_string(qc.second)
            << " meet in more than one face\n";
        return kExitValidation;
    }
    return kExitOk;
}

int cmd_hodge(const RunConfig& cfg, Printer& pr, const CellComplex& complex) {
    const HodgeOperators hodge(complex);
    const std::vector<int> betti = betti_numbers(complex);
    std::vector<int> harmonic;
    json degrees = json::array();
    std::vector<std::optional<double>> min_nonzero;
    for (int d = 0; d <= complex.dimension(); ++d) {
        const Spectrum s = hodge.spectrum(d, cfg.tolerance);
        harmonic.push_back(harmonic_dimension(s));
        const double lmax = s.eigenvalues.size() ? s.eigenvalues.cwiseAbs().maxCoeff() : 0.0;
        const double thr = cfg.tolerance * std::max(1.0, lmax);
        std::optional<double> smallest;
        for (double l : s.eigenvalues)
            if (std::abs(l) > thr && (!smallest || l < *smallest)) smallest = l;
        min_nonzero.push_back(smallest);
        degrees.push_back({{"degree", d},
                           {"eigenvalues", std::vector<double>(s.eigenvalues.data(), s.eigenvalues.data() + s.eigenvalues.size())},
                           {"harmonic_dim", harmonic.back()},
                           {"betti", betti[d]},
                           {"min_nonzero_eigenvalue", smallest ? json(*smallest) : json(nullptr)},
                           {"tolerance", cfg.tolerance}});
    }
    const bool match = harmonic == betti;
    std::ostream& out = pr.out();
    if (cfg.format == "json") {
        emit_json(out, {{"degrees", degrees}, {"harmonic", harmonic}, {"betti", betti}, {"match", match}});
    } else if (cfg.format == "csv") {
        out << "degree,harmonic_dim,betti,min_nonzero_eigenvalue\n";
        for (int d = 0; d <= complex.dimension(); ++d)
            out << d << "," << harmonic[d] << "," << betti[d] << ","
                << (min_nonzero[d] ? format_double(*min_nonzero[d]) : "") << "\n";
    } else {
        for (int d = 0; d <= complex.dimension(); ++d)
            out << "degree " << d << ": harmonic=" << harmonic[d] << " betti=" << betti[d] << " min_nonzero="
                << (min_nonzero[d] ? format_double(*min_nonzero[d]) : "none") << "\n";
        out << "harmonic (" << join(harmonic, ",") << ") " << (match ? "==" : "!=") << " betti (" << join(betti, ",")
            << ") " << pr.status(match) << "\n";
    }
    return match ? kExitOk : kExitHodgeMismatch;
}

const char* kind_name(ComplexClass k) {
    switch (k) {
        case ComplexClass::Graph: return "graph";
        case ComplexClass::ClosedSurface: return "closed_surface";
        default: return "other";
    }
}

int cmd_curvature(const RunConfig& cfg, Printer& pr, const CellComplex& complex, Rng& rng) {
    CurvatureReport report = gauss_bonnet(complex);
    const std::optional<OneForm> omega = load_form(cfg, complex, rng);
    if (omega) {
        const RicciCurvature ricci(complex);
        attach_ricci(report, ricci, *omega);
    }
    const int factor = report.kind == ComplexClass::Graph ? 2 : 4;
    const auto& vecs = complex.vectors();
    std::ostream& out = pr.out();

    if (cfg.format == "json") {
        auto cells = [](const std::vector<CellCurvature>& list) {
            json arr = json::array();
            for (const auto& c : list)
                arr.push_back({{"id", to_string(c.cell)}, {"degree", c.degree}, {"g", c.gauss}, {"S", c.scalar}});
            return arr;
        };
        json j = {{"kind", kind_name(report.kind)},
                  {"vertices", cells(report.vertices)},
                  {"faces", cells(report.faces)},
                  {"total_vertex_g", report.total_vertex_gauss},
                  {"total_face_g", report.total_face_gauss},
                  {"total_g", report.total_gauss()},
                  {"chi", report.euler_characteristic},
                  {"target", report.target},
                  {"gauss_bonnet", report.gauss_bonnet_ok}};
        if (omega) {
            json arr = json::array();
            for (const auto& r : report.ricci)
                arr.push_back({{"vector", vector_key(vecs[r.vector])},
                               {"definition", r.definition},
                               {"closed_form", r.closed_form}});
            j["ricci"] = arr;
            j["max_route_discrepancy"] = report.max_route_discrepancy;
        }
        emit_json(out, j);
    } else if (cfg.format == "csv") {
        out << "kind,id,degree,g,S\n";
        for (const auto& c : report.vertices)
            out << "vertex," << to_string(c.cell) << "," << c.degree << "," << c.gauss << "," << c.scalar << "\n";
        for (const auto& c : report.faces)
            out << "face," << to_string(c.cell) << "," << c.degree << "," << c.gauss << "," << c.scalar << "\n";
        out << "total,,," << report.total_gauss() << ",\n";
        out << "chi,,," << report.euler_characteristic << ",\n";
        out << "gauss_bonnet,,," << (report.gauss_bonnet_ok ? "pass" : "fail") << ",\n";
        if (omega) {
            out << "\nvector,ricci_definition,ricci_closed_form\n";
            for (const auto& r : report.ricci)
                out << vector_key(vecs[r.vector]) << "," << format_double(r.definition) << ","
                    << format_double(r.closed_form) << "\n";
            out << "max_route_discrepancy," << format_double(report.max_route_discrepancy) << ",\n";
        }
    } else {
        out << "kind=" << kind_name(report.kind) << " chi=" << report.euler_characteristic << "\n";
        for (const auto& c : report.vertices)
            out << "vertex " << to_string(c.cell) << " degree=" << c.degree << " g=" << c.gauss << " S=" << c.scalar
                << "\n";
        for (const auto& c : report.faces)
            out << "face " << to_string(c.cell) << " degree=" << c.degree << " g=" << c.gauss << " S=" << c.scalar
                << "\n";
        out << "sum g_v=" << report.total_vertex_gauss;
        if (report.kind == ComplexClass::ClosedSurface) out << " sum g_f=" << report.total_face_gauss;
        out << " total=" << report.total_gauss() << " target=" << report.target << " (" << factor << "*chi) "
            << pr.status(report.gauss_bonnet_ok) << "\n";
        if (omega) {
            for (const auto& r : report.ricci)
                out << "ricci " << vector_key(vecs[r.vector]) << " definition=" << format_double(r.definition)
                    << " closed_form=" << format_double(r.closed_form) << "\n";
            out << "max_route_discrepancy=" << format_double(report.max_route_discrepancy) << "\n";
        }
    }
    return report.gauss_bonnet_ok ? kExitOk : kExitGaussBonnet;
}

int cmd_check(const RunConfig& cfg, Printer& pr, const CellComplex& complex, Rng& rng) {
    const HodgeOperators hodge(complex);
    const int top = complex.dimension();
    const auto nvec = static_cast<Eigen::Index>(complex.vectors().size());
    std::vector<std::pair<std::string, double>> residuals = {
        {"d_squared", 0.0},        {"adjointness", 0.0},        {"dstar_routes", 0.0}, {"green", 0.0},
        {"integral_div", 0.0},     {"integral_laplacian", 0.0}, {"df_of_x", 0.0},
    };
    auto bump = [&](int k, double v) { residuals[k].second = std::max(residuals[k].second, v); };

    for (int d = 0; d + 1 < top; ++d)
        bump(0, (hodge.d_op(d + 1).matrix * hodge.d_op(d).matrix).cwiseAbs().maxCoeff());
    for (int d = 1; d <= top; ++d)
        bump(2, (hodge.dstar_op(d).matrix - hodge.dstar_op_projected(d).matrix).cwiseAbs().maxCoeff());

    auto random_vector = [&](Eigen::Index n) {
        Eigen::VectorXd v(n);
        for (Eigen::Index i = 0; i < n; ++i) v[i] = rng.uniform(-1.0, 1.0);
        return v;
    };
    for (int t = 0; t < cfg.trials; ++t) {
        for (int d = 0; d < top; ++d) {
            const Form u{d, random_vector(hodge.basis(d).size())};
            const Form v{d + 1, random_vector(hodge.basis(d + 1).size())};
            const Form du = hodge.apply_d(u);
            const double rhs = hodge.inner_product(v, du);
            const double lhs = hodge.inner_product(hodge.apply_dstar(v), u);
            bump(1, std::abs(lhs - rhs) / std::max(1.0, hodge.norm(v) * hodge.norm(du)));
        }
        const CellFunction f{random_vector(complex.total_cells())};
        const VectorField x{random_vector(nvec)};
        bump(3, green_residual(complex, f, x).relative());
        bump(4, std::abs(integrate(div(complex, x))) / std::max(1.0, x.values.lpNorm<1>()));
        const CellFunction lap = laplacian_of_function(complex, f);
        bump(5, std::abs(integrate(lap)) / std::max(1.0, lap.values.lpNorm<1>()));
        const CellFunction a = directional_derivative(complex, f, x);
        const CellFunction b = inner_product(complex, x, grad(complex, f));
        bump(6, (a.values - b.values).cwiseAbs().maxCoeff());
    }

    bool ok = true;
    for (const auto& [name, value] : residuals) ok = ok && !(value > cfg.threshold);
    std::ostream& out = pr.out();
    if (cfg.format == "json") {
        json r = json::object();
        for (const auto& [name, value] : residuals) r[name] = value;
        emit_json(out, {{"trials", cfg.trials},
                        {"seed", cfg.seed},
                        {"threshold", cfg.threshold},
                        {"residuals", r},
                        {"pass", ok}});
    } else if (cfg.format == "csv") {
        out << "metric,max_residual,pass\n";
        for (const auto& [name, value] : residuals)
            out << name << "," << format_double(value) << "," << (value > cfg.threshold ? "fail" : "pass") << "\n";
    } else {
        out << "trials=" << cfg.trials << " seed=" << cfg.seed << " threshold=" << format_double(cfg.threshold) << "\n";
        for (const auto& [name, value] : residuals)
            out << name << " max=" << format_double(value) << " " << pr.status(!(value > cfg.threshold)) << "\n";
    }
    return ok ? kExitOk : kExitProperty;
}

int cmd_export(Printer& pr, const Loaded& loaded) {
    pr.out() << serialize_complex_json(loaded.complex, loaded.name);
    return kExitOk;
}

int exit_code_for(const Error& e) {
    switch (e.code()) {
        case ErrorCode::ParseError: return kExitIo;
        case ErrorCode::ToleranceAmbiguous: return kExitToleranceAmbiguous;
        case ErrorCode::BadParameter: return kExitUsage;
        default: return kExitValidation;
    }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, bool color) {
    RunConfig cfg;
    CLI::App app{"Combinatorial differential forms, Hodge theory and curvature on cell complexes", "cellform"};
    app.require_subcommand(1);

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--input", cfg.input, "complex file (.json, .off, otherwise edge list)");
        sub->add_option("--generate", cfg.generate, "generator spec, e.g. cube or torus_grid:4x4");
        sub->add_option("--weights", cfg.weights, "const:<x> | random | <weights.json>");
        sub->add_option("--seed", cfg.seed, "64-bit seed for every random draw");
        sub->add_option("--tolerance", cfg.tolerance, "relative eigenvalue zero threshold")->check(CLI::PositiveNumber);
        sub->add_option("--format", cfg.format, "output format")->check(CLI::IsMember({"text", "json", "csv"}));
        sub->add_flag("--require-quasiconvex", cfg.require_quasiconvex, "fail validation on non-quasiconvex input");
    };
    CLI::App* validate = app.add_subcommand("validate", "cell counts, chi, quasiconvexity, closed-surface flag");
    CLI::App* hodge = app.add_subcommand("hodge", "harmonic dimensions against Betti numbers");
    CLI::App* curvature = app.add_subcommand("curvature", "Gauss and scalar curvature, Gauss-Bonnet, Ricci");
    CLI::App* check = app.add_subcommand("check", "seeded property checks");
    CLI::App* exporter = app.add_subcommand("export", "canonical JSON document of the complex");
    for (CLI::App* sub : {validate, hodge, curvature, check, exporter}) add_common(sub);
    curvature->add_option("--form", cfg.form, "random | <form.json>: also report Ricci by both routes");
    check->add_option("--trials", cfg.trials, "number of random trials")->check(CLI::NonNegativeNumber);
    check->add_option("--threshold", cfg.threshold, "largest admissible residual");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }
    cfg.command = app.get_subcommands().front()->get_name();

    Printer pr(out, color && cfg.format == "text");
    try {
        Rng rng(cfg.seed);
        const Loaded loaded = load(cfg, rng, err);
        const CellComplex& complex = loaded.complex;
        if (cfg.command == "validate") return cmd_validate(cfg, pr, complex, err);
        if (cfg.require_quasiconvex && !complex.is_quasiconvex()) {
            err << "error: NotQuasiconvex: input is not quasiconvex\n";
            return kExitValidation;
        }
        if (cfg.command == "hodge") return cmd_hodge(cfg, pr, complex);
        if (cfg.command == "curvature") return cmd_curvature(cfg, pr, complex, rng);
        if (cfg.command == "check") return cmd_check(cfg, pr, complex, rng);
        return cmd_export(pr, loaded);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return exit_code_for(e);
    }
}

}  // namespace cellform
