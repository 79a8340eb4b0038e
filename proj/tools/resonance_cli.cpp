// Command-line front end: sweeps over excitation numbers for one model,
// printing a summary table and emitting CSV/JSON/SVG files.

#include <cstdlib>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include <resonance/resonance.hpp>

namespace {

using namespace resonance;

// The config file is applied before CLI11 parses the flags, so flags win.
// Options live on subcommands, hence a plain pre-scan of argv.
std::string find_config_path(int argc, char** argv) {
    for (int i = 1; i < argc; ++i) {
        const std::string_view arg = argv[i];
        if (arg == "--config" && i + 1 < argc) return argv[i + 1];
        if (arg.rfind("--config=", 0) == 0) return std::string(arg.substr(9));
    }
    return {};
}

void add_sweep_options(CLI::App& cmd, SweepSettings& s, std::string& config_path) {
    cmd.add_option("--config", config_path, "flat key=value config file; flags override its entries");
    cmd.add_option("--model", s.model, "model: winter, double, triple");
    cmd.add_option("--z", s.z, "single-barrier coupling");
    cmd.add_option("--z0", s.z0, "coupling of the barrier at x = 0");
    cmd.add_option("--zp", s.zp, "coupling of the barrier at x = +pi");
    cmd.add_option("--zm", s.zm, "coupling of the barrier at x = -pi");
    cmd.add_option("--n", s.n_range, "excitation range: single value or lo..hi");
    cmd.add_option("--order", s.order, "expansion order K");
    cmd.add_option("--branches", s.branches, "branch subset for the triple model: plus,minus");
    cmd.add_option("--out", s.outputs, "output formats: csv,json,svg (comma separated)");
    cmd.add_option("--path", s.path, "output directory");
    cmd.add_option("--tol", s.tolerance, "refinement residual tolerance");
    cmd.add_option("--max-iter", s.max_iterations, "refinement iteration cap");
}

void apply_basin_env(SweepConfig& cfg) {
    const char* env = std::getenv("RESONANCE_SEED_BASIN");
    if (env == nullptr) return;
    cfg.newton.basin_radius = parse_double(env, "RESONANCE_SEED_BASIN");
    if (cfg.newton.basin_radius <= 0.0)
        throw std::invalid_argument("RESONANCE_SEED_BASIN must be > 0");
}

void print_warnings(const SweepConfig& cfg) {
    for (const std::string& w : coupling_warnings(cfg.model)) std::cerr << "warning: " << w << '\n';
}

void print_row_errors(const std::vector<RowError>& errors) {
    for (const RowError& e : errors)
        std::cerr << "error: n=" << e.n << " branch=" << to_string(e.branch) << ": " << e.message
                  << '\n';
}

std::filesystem::path prepare_output_dir(const SweepConfig& cfg) {
    const std::filesystem::path dir(cfg.output_path);
    if (!dir.empty()) std::filesystem::create_directories(dir);
    return dir;
}

int cmd_solve(const SweepConfig& cfg) {
    print_warnings(cfg);
    const SolveReport report = run_solve(cfg);

    std::cout << std::setw(5) << "n" << std::setw(8) << "branch" << std::setw(15) << "re_k"
              << std::setw(15) << "im_k" << std::setw(15) << "gamma" << std::setw(15) << "rel_error"
              << '\n';
    std::cout << std::setprecision(6);
    for (const ResonanceRecord& r : report.records) {
        std::cout << std::setw(5) << r.n << std::setw(8) << to_string(r.branch) << std::setw(15)
                  << r.k.real() << std::setw(15) << r.k.imag() << std::setw(15) << r.gamma
                  << std::setw(15) << (r.rel_error ? *r.rel_error : 0.0) << '\n';
    }

    const auto dir = prepare_output_dir(cfg);
    for (OutputKind kind : cfg.outputs) {
        switch (kind) {
            case OutputKind::Csv:
                write_text_file(dir / "poles.csv", records_to_csv(cfg.model, report.records));
                std::cerr << "wrote " << (dir / "poles.csv").string() << '\n';
                break;
            case OutputKind::Json:
                write_text_file(dir / "poles.json", records_to_json(cfg.model, report.records));
                std::cerr << "wrote " << (dir / "poles.json").string() << '\n';
                break;
            case OutputKind::Svg:
                write_text_file(dir / "poles.svg", pole_scatter_svg(report.records));
                std::cerr << "wrote " << (dir / "poles.svg").string() << '\n';
                break;
        }
    }

    print_row_errors(report.errors);
    return report.ok() ? 0 : 1;
}

int cmd_compare(const SweepConfig& cfg) {
    print_warnings(cfg);
    const CompareReport report = run_compare(cfg);

    std::cout << std::setw(5) << "n";
    for (int k = 0; k <= cfg.order; ++k) std::cout << std::setw(13) << ("err_k" + std::to_string(k));
    std::cout << std::setw(13) << "err_z2" << '\n';
    std::cout << std::setprecision(4);
    for (const CompareRow& row : report.rows) {
        std::cout << std::setw(5) << row.n;
        for (double e : row.rel_error_by_order) std::cout << std::setw(13) << e;
        std::cout << std::setw(13) << row.z_order2_rel_error << '\n';
    }

    const auto dir = prepare_output_dir(cfg);
    for (OutputKind kind : cfg.outputs) {
        switch (kind) {
            case OutputKind::Csv:
                write_text_file(dir / "convergence.csv", compare_to_csv(report, cfg.order));
                std::cerr << "wrote " << (dir / "convergence.csv").string() << '\n';
                break;
            case OutputKind::Json:
                write_text_file(dir / "convergence.json", compare_to_json(report));
                std::cerr << "wrote " << (dir / "convergence.json").string() << '\n';
                break;
            case OutputKind::Svg:
                std::cerr << "warning: no svg output for compare; skipped\n";
                break;
        }
    }

    print_row_errors(report.errors);
    return report.ok() ? 0 : 1;
}

int cmd_plot(const SweepConfig& cfg) {
    print_warnings(cfg);
    const SolveReport report = run_solve(cfg);

    const auto dir = prepare_output_dir(cfg);
    write_text_file(dir / "poles.svg", pole_scatter_svg(report.records));
    std::cout << "wrote " << (dir / "poles.svg").string() << " (" << report.records.size()
              << " poles)\n";

    print_row_errors(report.errors);
    return report.ok() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Resonance poles of delta-barrier models via the expansion in the inverse "
                 "excitation number"};
    app.require_subcommand(1);

    SweepSettings settings;
    try {
        const std::string config_path = find_config_path(argc, argv);
        if (!config_path.empty()) apply_config_file(settings, config_path);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }

    std::string config_dummy;
    CLI::App* solve = app.add_subcommand("solve", "expansion poles refined against the exact "
                                                  "pole condition");
    CLI::App* compare = app.add_subcommand("compare", "relative error of each expansion order "
                                                      "(single-barrier model)");
    CLI::App* plot = app.add_subcommand("plot", "momentum-plane pole scatter (SVG)");
    add_sweep_options(*solve, settings, config_dummy);
    add_sweep_options(*compare, settings, config_dummy);
    add_sweep_options(*plot, settings, config_dummy);

    CLI11_PARSE(app, argc, argv);

    try {
        // compare defaults to a deeper order sweep than solve/plot
        const int default_order = compare->parsed() ? 8 : 2;
        SweepConfig cfg = build_sweep_config(settings, default_order);
        apply_basin_env(cfg);

        if (solve->parsed()) return cmd_solve(cfg);
        if (compare->parsed()) return cmd_compare(cfg);
        return cmd_plot(cfg);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}
