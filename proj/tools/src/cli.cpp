#include "lamespec_cli/cli.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "lamespec/fem.hpp"
#include "lamespec/heat_kernel.hpp"
#include "lamespec/mesh.hpp"
#include "lamespec/oracles.hpp"
#include "lamespec/serialization.hpp"
#include "lamespec/svg_plot.hpp"
#include "lamespec/symbol.hpp"
#include "lamespec/trace_fit.hpp"

namespace lamespec::cli {

namespace {

using nlohmann::json;

/// Options shared by every subcommand; each command reads the fields it needs.
struct RunConfig {
    int n = 2;
    int draws = 1000;
    std::uint64_t seed = 42;
    double tolerance = 1e-10;
    double tau = 1.0;
    double mu = 0.0;
    std::string bc = "dirichlet";
    std::string domain;
    std::string domain_file;
    double h = 0.1;
    int refine = 0;
    int k = 20;
    int levels = 1;
    double length = 1.0;
    double radius = 1.0;
    double lambda_max = 1000.0;
    int m_max = -1;
    int count = 100;
    std::string spectrum_file;
    std::string truth_file;
    std::string validate_file;
    std::string out;
    std::string svg;
    double window_tol = 1e-4;
    bool no_guard = false;
    double volume = 0.0;
    int points = 20;

    void validate() const {
        if (!(tolerance > 0.0) || !(window_tol > 0.0)) {
            throw Error(ErrorKind::InvalidArgument, "tolerances must be positive");
        }
        if (!(h > 0.0)) throw Error(ErrorKind::InvalidArgument, "--mesh-size must be positive");
    }
};

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::Io, "cannot open '" + path + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_artifact(const std::string& path, const std::string& content, std::ostream& out) {
    if (path.empty() || path == "-") {
        out << content;
        return;
    }
    const std::string target = resolve_output_path(path);
    std::ofstream file(target);
    if (!file) throw Error(ErrorKind::Io, "cannot write '" + target + "'");
    file << content;
    if (!file) throw Error(ErrorKind::Io, "write to '" + target + "' failed");
}

LameParameters params_of(const RunConfig& cfg) {
    try {
        return LameParameters(cfg.tau, cfg.mu);
    } catch (const Error& e) {
        throw Error(e.kind(), e.what(), "need tau > 0 and tau + mu > 0");
    }
}

Domain domain_of(const RunConfig& cfg) {
    if (!cfg.domain_file.empty()) return read_domain(read_file(cfg.domain_file));
    if (cfg.domain.empty()) throw Error(ErrorKind::InvalidArgument, "a domain is required", "pass --domain disk:1");
    return parse_domain_spec(cfg.domain);
}

Spectrum load_spectrum(const RunConfig& cfg) {
    if (cfg.spectrum_file.empty()) throw Error(ErrorKind::InvalidArgument, "--spectrum is required");
    return read_spectrum(read_file(cfg.spectrum_file));
}

int run_symbol_check(const RunConfig& cfg, std::ostream& out) {
    const auto report = symbol_property_check(cfg.n, cfg.draws, cfg.seed, cfg.tolerance);
    json j = {{"n", report.n},
              {"draws", report.draws},
              {"seed", report.seed},
              {"max_rel_err_trace", report.max_rel_err_trace},
              {"max_rel_err_determinant", report.max_rel_err_determinant},
              {"max_parametrix_residual", report.max_parametrix_residual},
              {"max_rel_err_scaling", report.max_rel_err_scaling},
              {"max_rel_err_eigenvalues", report.max_rel_err_eigenvalues},
              {"tolerance", report.tolerance},
              {"pass", report.pass}};
    write_artifact(cfg.out, dump_json(j), out);
    return report.pass ? kSuccess : kValidation;
}

int run_coeffs(const RunConfig& cfg, std::ostream& out) {
    const auto params = params_of(cfg);
    json j = {{"dim", cfg.n},
              {"tau", params.tau()},
              {"mu", params.mu()},
              {"a0_density", interior_coefficient(params, cfg.n)},
              {"a1_density_dirichlet", boundary_coefficient(params, cfg.n, BoundaryCondition::Dirichlet)},
              {"a1_density_neumann", boundary_coefficient(params, cfg.n, BoundaryCondition::Neumann)}};
    write_artifact(cfg.out, dump_json(j), out);
    return kSuccess;
}

int run_mesh(const RunConfig& cfg, std::ostream& out) {
    Mesh mesh;
    if (!cfg.validate_file.empty()) {
        std::istringstream in(read_file(cfg.validate_file));
        mesh = read_mesh_text(in);
    } else {
        mesh = generate_mesh(domain_of(cfg), cfg.h);
        for (int i = 0; i < cfg.refine; ++i) mesh = refine(mesh);
        std::ostringstream text;
        write_mesh_text(mesh, text);
        if (!cfg.out.empty()) write_artifact(cfg.out, text.str(), out);
    }
    json summary = {{"valid", true},
                    {"nodes", mesh.node_count()},
                    {"triangles", mesh.triangle_count()},
                    {"boundary_edges", mesh.boundary_edges.size()},
                    {"boundary_loops", boundary_loop_count(mesh)},
                    {"volume", mesh_volume(mesh)},
                    {"boundary_length", mesh_boundary_length(mesh)},
                    {"max_edge", max_edge_length(mesh)}};
    out << dump_json(summary);
    return kSuccess;
}

int run_eigs(const RunConfig& cfg, std::ostream& out) {
    const auto params = params_of(cfg);
    const auto bc = parse_boundary_condition(cfg.bc);
    const Domain domain = domain_of(cfg);
    Spectrum spectrum;
    if (cfg.levels >= 3) {
        const auto study = convergence_study(domain, params, bc, cfg.k, cfg.levels, cfg.h);
        spectrum = study.extrapolated;
        for (const auto& w : study.warnings) spectrum.notes.push_back("warning: " + w);
        if (!study.observed_order.empty() && std::isfinite(study.observed_order.front())) {
            std::ostringstream note;
            note << "observed order (lambda_1): " << std::setprecision(4) << study.observed_order.front();
            spectrum.notes.push_back(note.str());
        }
    } else if (cfg.levels == 1) {
        Mesh mesh = generate_mesh(domain, cfg.h);
        for (int i = 0; i < cfg.refine; ++i) mesh = refine(mesh);
        spectrum = solve_lowest(assemble(mesh, params, bc), cfg.k);
    } else {
        throw Error(ErrorKind::InvalidArgument, "--levels must be 1 or at least 3");
    }
    write_artifact(cfg.out, write_spectrum(spectrum), out);
    return kSuccess;
}

int run_oracle_interval(const RunConfig& cfg, std::ostream& out) {
    const auto spectrum =
        interval_spectrum_1d(params_of(cfg), cfg.length, parse_boundary_condition(cfg.bc), cfg.count);
    write_artifact(cfg.out, write_spectrum(spectrum), out);
    return kSuccess;
}

int run_oracle_disk(const RunConfig& cfg, std::ostream& out) {
    DiskOracleOptions options;
    options.m_max = cfg.m_max;
    options.threads = thread_count_from_env();
    const auto result = disk_dirichlet_roots(params_of(cfg), cfg.radius, cfg.lambda_max, options);
    write_artifact(cfg.out, write_spectrum(result.spectrum), out);
    return kSuccess;
}

int run_trace_fit(const RunConfig& cfg, std::ostream& out) {
    const Spectrum spectrum = load_spectrum(cfg);
    const TimeWindow window = select_window(spectrum, cfg.window_tol);
    const auto samples = sample_window(spectrum, window);
    FitOptions options;
    options.guard_term = !cfg.no_guard;
    const FitResult fit = fit_asymptotics(samples, spectrum.dim, options);
    json j = {{"dim", spectrum.dim},
              {"a0_hat", fit.a0_hat},
              {"a1_hat", fit.a1_hat},
              {"c_hat", fit.c_hat ? json(*fit.c_hat) : json(nullptr)},
              {"window", json::array({fit.window.t_min, fit.window.t_max})},
              {"residual_rms", fit.residual_rms},
              {"condition", fit.condition},
              {"n_samples", fit.n_samples},
              {"a0_sigma", fit.a0_sigma},
              {"a1_sigma", fit.a1_sigma}};
    json rows = json::array();
    for (const auto& s : samples) rows.push_back({{"t", s.t}, {"theta", s.theta}, {"truncation_bound", s.truncation_bound}});
    j["samples"] = rows;
    j["schema_version"] = kSchemaVersion;
    j["type"] = "fit";
    write_artifact(cfg.out, dump_json(j), out);
    if (!cfg.svg.empty()) write_artifact(cfg.svg, trace_fit_svg(samples, fit, spectrum.dim), out);
    return kSuccess;
}

RecoveredGeometry recover_from(const RunConfig& cfg, Spectrum spectrum) {
    if (!cfg.truth_file.empty()) spectrum.domain_meta = read_domain(read_file(cfg.truth_file));
    RecoverOptions options;
    options.tol = cfg.window_tol;
    options.guard_term = !cfg.no_guard;
    return end_to_end_recover(spectrum, spectrum.params, spectrum.dim, spectrum.bc, options);
}

int run_recover(const RunConfig& cfg, std::ostream& out) {
    const Spectrum spectrum = load_spectrum(cfg);
    const RecoveredGeometry result = recover_from(cfg, spectrum);
    write_artifact(cfg.out, write_recovered(result), out);
    if (!cfg.svg.empty()) {
        const auto samples = sample_window(spectrum, result.fit.window, result.fit.n_samples);
        write_artifact(cfg.svg, trace_fit_svg(samples, result.fit, spectrum.dim), out);
    }
    return kSuccess;
}

int run_weyl(const RunConfig& cfg, std::ostream& out) {
    Spectrum spectrum = load_spectrum(cfg);
    double volume = cfg.volume;
    if (!(volume > 0.0)) {
        std::optional<Domain> domain = spectrum.domain_meta;
        if (!cfg.truth_file.empty()) domain = read_domain(read_file(cfg.truth_file));
        if (!domain) {
            throw Error(ErrorKind::InvalidArgument, "volume unknown", "pass --volume or --truth domain.json");
        }
        volume = exact_geometry(*domain).volume;
    }
    std::ostringstream csv;
    csv << "eta,empirical,predicted,relative_deviation\n" << std::setprecision(17);
    for (const auto& p : weyl_table(spectrum, volume, cfg.points)) {
        csv << p.eta << ',' << p.empirical << ',' << p.predicted << ',' << p.relative_deviation << '\n';
    }
    write_artifact(cfg.out, csv.str(), out);
    return kSuccess;
}

int run_audit_ball(const RunConfig& cfg, std::ostream& out) {
    const RecoveredGeometry result = recover_from(cfg, load_spectrum(cfg));
    json j = {{"ratio", result.audit.ratio},
              {"ball_ratio", result.audit.ball_ratio},
              {"relative_excess", result.audit.relative_excess},
              {"ratio_sigma", result.ratio_sigma},
              {"tolerance", result.audit.tolerance},
              {"is_ball", result.audit.is_ball_within_tol},
              {"verdict", result.audit.is_ball_within_tol ? "spectrum consistent with a ball"
                                                          : "spectrum rules out a ball"}};
    write_artifact(cfg.out, dump_json(j), out);
    return kSuccess;
}

void add_params(CLI::App* cmd, RunConfig& cfg) {
    cmd->add_option("--tau", cfg.tau, "Lame tau (> 0)")->capture_default_str();
    cmd->add_option("--mu", cfg.mu, "Lame mu (tau + mu > 0)")->capture_default_str();
}

void add_out(CLI::App* cmd, RunConfig& cfg) {
    cmd->add_option("--out", cfg.out, "output file (default: stdout)");
}

}  // namespace

int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    RunConfig cfg;
    CLI::App app{"Navier-Lame heat-trace toolkit", "lamespec"};
    app.require_subcommand(1);

    auto* symbol = app.add_subcommand("symbol-check", "randomized closed-form vs dense symbol checks");
    symbol->add_option("--n", cfg.n, "dimension")->capture_default_str();
    symbol->add_option("--draws", cfg.draws, "random draws")->capture_default_str();
    symbol->add_option("--seed", cfg.seed, "RNG seed")->capture_default_str();
    symbol->add_option("--tol", cfg.tolerance, "relative tolerance")->capture_default_str();
    add_out(symbol, cfg);

    auto* coeffs = app.add_subcommand("coeffs", "heat-trace coefficient densities");
    coeffs->add_option("--n", cfg.n, "dimension")->capture_default_str();
    add_params(coeffs, cfg);
    add_out(coeffs, cfg);

    auto* mesh = app.add_subcommand("mesh", "generate or validate a triangle mesh");
    mesh->add_option("--domain", cfg.domain, "disk:R | rectangle:LX,LY | ellipse:A,B | polygon:x,y;...");
    mesh->add_option("--domain-file", cfg.domain_file, "domain JSON file");
    mesh->add_option("--mesh-size", cfg.h, "target edge length")->capture_default_str();
    mesh->add_option("--refine", cfg.refine, "uniform refinements after generation")->capture_default_str();
    mesh->add_option("--validate", cfg.validate_file, "validate an existing mesh file");
    add_out(mesh, cfg);

    auto* eigs = app.add_subcommand("eigs", "lowest FEM eigenvalues");
    eigs->add_option("--domain", cfg.domain, "domain spec");
    eigs->add_option("--domain-file", cfg.domain_file, "domain JSON file");
    add_params(eigs, cfg);
    eigs->add_option("--bc", cfg.bc, "dirichlet | neumann")->capture_default_str();
    eigs->add_option("--k", cfg.k, "number of eigenvalues")->capture_default_str();
    eigs->add_option("--levels", cfg.levels, "1, or >= 3 for a convergence study with extrapolation")
        ->capture_default_str();
    eigs->add_option("--mesh-size", cfg.h, "initial target edge length")->capture_default_str();
    eigs->add_option("--refine", cfg.refine, "extra refinements (single level)")->capture_default_str();
    add_out(eigs, cfg);

    auto* interval = app.add_subcommand("oracle-interval", "exact 1-D spectrum");
    interval->add_option("--L", cfg.length, "interval length")->capture_default_str();
    add_params(interval, cfg);
    interval->add_option("--bc", cfg.bc, "dirichlet | neumann")->capture_default_str();
    interval->add_option("--K", cfg.count, "number of eigenvalues")->capture_default_str();
    add_out(interval, cfg);

    auto* disk = app.add_subcommand("oracle-disk", "clamped-disk spectrum from Bessel determinants");
    disk->add_option("--R", cfg.radius, "disk radius")->capture_default_str();
    add_params(disk, cfg);
    disk->add_option("--lambda-max", cfg.lambda_max, "largest eigenvalue to return")->capture_default_str();
    disk->add_option("--m-max", cfg.m_max, "largest angular index (default: automatic)");
    add_out(disk, cfg);

    auto* fit = app.add_subcommand("trace-fit", "fit the two-term heat-trace model");
    fit->add_option("--spectrum", cfg.spectrum_file, "spectrum JSON")->required();
    fit->add_option("--tol", cfg.window_tol, "truncation tolerance for the window")->capture_default_str();
    fit->add_flag("--no-guard", cfg.no_guard, "drop the C t guard term");
    fit->add_option("--svg", cfg.svg, "write a plot of the fit");
    add_out(fit, cfg);

    auto* recover = app.add_subcommand("recover", "recover volume and boundary measure");
    recover->add_option("--spectrum", cfg.spectrum_file, "spectrum JSON")->required();
    recover->add_option("--truth", cfg.truth_file, "domain JSON with the true geometry");
    recover->add_option("--tol", cfg.window_tol, "truncation tolerance for the window")->capture_default_str();
    recover->add_flag("--no-guard", cfg.no_guard, "drop the C t guard term");
    recover->add_option("--svg", cfg.svg, "write a plot of the fit");
    add_out(recover, cfg);

    auto* weyl = app.add_subcommand("weyl", "empirical vs predicted eigenvalue counts (CSV)");
    weyl->add_option("--spectrum", cfg.spectrum_file, "spectrum JSON")->required();
    weyl->add_option("--volume", cfg.volume, "domain volume (default: from the spectrum's domain)");
    weyl->add_option("--truth", cfg.truth_file, "domain JSON");
    weyl->add_option("--points", cfg.points, "table rows")->capture_default_str();
    add_out(weyl, cfg);

    auto* audit = app.add_subcommand("audit-ball", "isoperimetric ball test on a spectrum");
    audit->add_option("--spectrum", cfg.spectrum_file, "spectrum JSON")->required();
    audit->add_option("--tol", cfg.window_tol, "truncation tolerance for the window")->capture_default_str();
    add_out(audit, cfg);

    if (argc <= 1) {
        err << app.help();
        return kValidation;
    }

    std::string stage = "cli";
    try {
        try {
            app.parse(argc, argv);
        } catch (const CLI::CallForHelp& e) {
            return app.exit(e, out, err);
        } catch (const CLI::ParseError& e) {
            throw Error(ErrorKind::InvalidArgument, e.what(), "run with --help for usage");
        }
        cfg.validate();
        const auto* cmd = app.get_subcommands().front();
        stage = cmd->get_name();
        if (cmd == symbol) return run_symbol_check(cfg, out);
        if (cmd == coeffs) return run_coeffs(cfg, out);
        if (cmd == mesh) return run_mesh(cfg, out);
        if (cmd == eigs) return run_eigs(cfg, out);
        if (cmd == interval) return run_oracle_interval(cfg, out);
        if (cmd == disk) return run_oracle_disk(cfg, out);
        if (cmd == fit) return run_trace_fit(cfg, out);
        if (cmd == recover) return run_recover(cfg, out);
        if (cmd == weyl) return run_weyl(cfg, out);
        if (cmd == audit) return run_audit_ball(cfg, out);
        throw Error(ErrorKind::InvalidArgument, "unhandled subcommand");
    } catch (const StageError& e) {
        err << dump_json(error_to_json(e, stage + "/" + e.stage()));
        return kValidation;
    } catch (const Error& e) {
        err << dump_json(error_to_json(e, stage));
        return kValidation;
    } catch (const std::exception& e) {
        err << dump_json({{"kind", "internal"}, {"stage", stage}, {"message", e.what()}, {"hint", ""}});
        return kInternal;
    }
}

}  // namespace lamespec::cli
