// Batch CLI for sphere-plate Casimir computations: single points, parameter
// sweeps, table dumps, result-file comparison, and the exact-determinant
// reference method.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "casimir/batch.hpp"
#include "casimir/errors.hpp"
#include "casimir/pc_series.hpp"
#include "casimir/version.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitConvergence = 3;
constexpr int kExitIo = 4;

using casimir::batch::RunConfig;

struct CommonOpts {
    std::string material1 = "pc";
    std::string material2 = "pc";
    std::string quantity = "all";
    double radius = 1e-3;
    std::string output;
    std::string format = "csv";
    int jobs = 0;
    // engine overrides
    int phi_nodes = 0;
    int t_nodes = 0;
    int s_max = 0;
    double rel_tol_leading = 0.0;
    double rel_tol_ntlo = 0.0;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--material1,-1", o.material1,
                    "sphere material (pc|vacuum|plasma:9eV|drude:9eV,0.035eV|table:path)");
    cmd->add_option("--material2,-2", o.material2, "plate material");
    cmd->add_option("--quantity,-q", o.quantity, "energy|force|gradient|all");
    cmd->add_option("--radius,-R", o.radius, "sphere radius [m]")->check(CLI::PositiveNumber);
    cmd->add_option("--output,-o", o.output, "output file (default: stdout)");
    cmd->add_option("--format,-f", o.format, "csv|json");
    cmd->add_option("--jobs,-j", o.jobs, "worker threads (0 = machine parallelism)");
    cmd->add_option("--phi-nodes", o.phi_nodes, "tau-quadrature nodes");
    cmd->add_option("--t-nodes", o.t_nodes, "t-quadrature nodes");
    cmd->add_option("--s-max", o.s_max, "series cap");
    cmd->add_option("--rel-tol-leading", o.rel_tol_leading, "leading-term tolerance");
    cmd->add_option("--rel-tol-ntlo", o.rel_tol_ntlo, "NTLO-term tolerance");
}

casimir::batch::Quantity parse_quantity(const std::string& s) {
    using casimir::batch::Quantity;
    if (s == "energy") return Quantity::Energy;
    if (s == "force") return Quantity::Force;
    if (s == "gradient") return Quantity::Gradient;
    if (s == "all") return Quantity::All;
    throw std::invalid_argument("quantity '" + s + "': expected energy|force|gradient|all");
}

casimir::batch::Method parse_method(const std::string& s) {
    using casimir::batch::Method;
    if (s == "pfa") return Method::Pfa;
    if (s == "ntlo") return Method::Ntlo;
    if (s == "pc-series") return Method::PcSeries;
    if (s == "exact") return Method::Exact;
    throw std::invalid_argument("method '" + s + "': expected pfa|ntlo|pc-series|exact");
}

RunConfig build_config(const CommonOpts& o, const std::string& method) {
    RunConfig cfg;
    cfg.quantity = parse_quantity(o.quantity);
    cfg.method = parse_method(method);
    cfg.material1 = casimir::batch::parse_material(o.material1);
    cfg.material2 = casimir::batch::parse_material(o.material2);
    cfg.radius = o.radius;
    cfg.jobs = o.jobs;
    if (o.phi_nodes > 0) cfg.engine.phi_nodes = o.phi_nodes;
    if (o.t_nodes > 0) cfg.engine.t_nodes = o.t_nodes;
    if (o.s_max > 0) cfg.engine.s_max = o.s_max;
    if (o.rel_tol_leading > 0) cfg.engine.rel_tol_leading = o.rel_tol_leading;
    if (o.rel_tol_ntlo > 0) cfg.engine.rel_tol_ntlo = o.rel_tol_ntlo;
    cfg.output_path = o.output;
    if (o.format == "json")
        cfg.format = casimir::batch::OutputFormat::Json;
    else if (o.format == "csv")
        cfg.format = casimir::batch::OutputFormat::Csv;
    else
        throw std::invalid_argument("format '" + o.format + "': expected csv|json");
    return cfg;
}

int emit(const RunConfig& cfg, const casimir::batch::RunOutput& out) {
    std::ostringstream body;
    if (cfg.format == casimir::batch::OutputFormat::Json)
        casimir::batch::write_json(body, cfg, out.records);
    else
        casimir::batch::write_csv(body, cfg, out.records);
    if (cfg.output_path.empty()) {
        std::cout << body.str();
    } else {
        std::ofstream f(cfg.output_path);
        if (!f) {
            std::cerr << "error: cannot open output file " << cfg.output_path << "\n";
            return kExitIo;
        }
        f << body.str();
    }
    if (out.any_error) {
        std::cerr << "error: one or more points failed to converge (flagged in output)\n";
        return kExitConvergence;
    }
    return 0;
}

int run_tables(const std::string& which) {
    using namespace casimir::pc_series;
    auto dump = [&](const char* name, ExactCoeff (*get)(int, int), bool symmetric) {
        std::cout << name << " coefficients (i+j <= " << max_order << ")\n";
        std::cout << "i,j,exact,decimal\n";
        for (int i = 0; i <= max_order; ++i) {
            for (int j = 0; i + j <= max_order; ++j) {
                if (symmetric && j > i) continue;
                const ExactCoeff c = get(i, j);
                std::cout << i << ',' << j << ',' << c.exact_string() << ','
                          << casimir::batch::format_g17(c.value()) << '\n';
            }
        }
    };
    if (which == "beta" || which == "all") dump("beta", casimir::pc_series::beta, true);
    if (which == "lambda" || which == "all") dump("lambda", casimir::pc_series::lambda, false);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Casimir sphere-plate interaction: PFA, analytic NTLO correction, "
                 "perfect-conductor series, and exact scattering determinant"};
    app.set_version_flag("--version", casimir::version);
    app.require_subcommand(1);

    const char* env_config = std::getenv("CASIMIR_CLI_CONFIG");
    app.set_config("--config", env_config ? env_config : "",
                   "configuration file (flags override file values)");

    CommonOpts compute_opts, sweep_opts, oracle_opts;
    std::string compute_method = "ntlo";
    double compute_gap = 1e-6;

    CLI::App* compute = app.add_subcommand("compute", "single-point computation");
    add_common(compute, compute_opts);
    compute->add_option("--gap,-d", compute_gap, "sphere-plate gap [m]")
        ->required()
        ->check(CLI::PositiveNumber);
    compute->add_option("--method,-m", compute_method, "pfa|ntlo|pc-series|exact");

    CLI::App* sweep = app.add_subcommand("sweep", "gap sweep");
    add_common(sweep, sweep_opts);
    std::string sweep_method = "ntlo";
    double gap_min = 1e-8, gap_max = 1e-4;
    int gap_points = 60;
    bool linear = false;
    sweep->add_option("--gap-min", gap_min, "sweep start [m]")->required();
    sweep->add_option("--gap-max", gap_max, "sweep end [m]")->required();
    sweep->add_option("--points,-n", gap_points, "number of points")->check(CLI::Range(2, 100000));
    sweep->add_flag("--linear", linear, "linear spacing (default: log)");
    sweep->add_option("--method,-m", sweep_method, "pfa|ntlo|pc-series");

    CLI::App* compare = app.add_subcommand("compare", "ratio report between two result files");
    std::string file_a, file_b, keys_csv, compare_out;
    compare->add_option("fileA", file_a)->required();
    compare->add_option("fileB", file_b)->required();
    compare->add_option("--keys", keys_csv, "comma-separated column names (default: all shared)");
    compare->add_option("--output,-o", compare_out, "ratio records output (default: stdout)");

    CLI::App* tables = app.add_subcommand("tables", "dump the beta/lambda coefficient tables");
    std::string which = "all";
    tables->add_option("--which", which, "beta|lambda|all");

    CLI::App* oracle = app.add_subcommand("oracle", "exact scattering-determinant energy");
    add_common(oracle, oracle_opts);
    double oracle_gap = 1e-4;
    int l_max = 0, xi_nodes = 0, theta_nodes = 0;
    double oracle_tol = 0.0;
    oracle->add_option("--gap,-d", oracle_gap, "sphere-plate gap [m]")
        ->required()
        ->check(CLI::PositiveNumber);
    oracle->add_option("--l-max", l_max, "multipole truncation (0 = heuristic)");
    oracle->add_option("--xi-nodes", xi_nodes, "frequency-integral nodes");
    oracle->add_option("--theta-nodes", theta_nodes, "translation-integral nodes");
    oracle->add_option("--tolerance", oracle_tol, "xi-integral relative tolerance");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& err) {
        return app.exit(err) == 0 ? 0 : kExitConfig;
    }

    try {
        if (compute->parsed()) {
            RunConfig cfg = build_config(compute_opts, compute_method);
            cfg.gap = {compute_gap, compute_gap, 1, false};
            return emit(cfg, casimir::batch::run_sweep(cfg));
        }
        if (sweep->parsed()) {
            RunConfig cfg = build_config(sweep_opts, sweep_method);
            cfg.gap = {gap_min, gap_max, gap_points, !linear};
            return emit(cfg, casimir::batch::run_sweep(cfg));
        }
        if (oracle->parsed()) {
            oracle_opts.quantity = "energy";
            RunConfig cfg = build_config(oracle_opts, "exact");
            cfg.gap = {oracle_gap, oracle_gap, 1, false};
            if (l_max > 0) cfg.trunc.l_max = l_max;
            if (xi_nodes > 0) cfg.trunc.xi_nodes = xi_nodes;
            if (theta_nodes > 0) cfg.trunc.theta_nodes = theta_nodes;
            if (oracle_tol > 0) cfg.trunc.tolerance = oracle_tol;
            cfg.trunc.jobs = cfg.jobs;
            return emit(cfg, casimir::batch::run_sweep(cfg));
        }
        if (tables->parsed()) return run_tables(which);
        if (compare->parsed()) {
            const auto ta = casimir::batch::read_result_file(file_a);
            const auto tb = casimir::batch::read_result_file(file_b);
            std::vector<std::string> keys;
            if (!keys_csv.empty()) {
                std::istringstream ss(keys_csv);
                std::string k;
                while (std::getline(ss, k, ',')) keys.push_back(k);
            }
            const auto rep = casimir::batch::compare_tables(ta, tb, keys);
            std::ostringstream body;
            body << "d_m";
            for (const auto& c : rep.columns) body << ",ratio_" << c;
            body << "\n";
            for (const auto& row : rep.ratios) {
                for (size_t i = 0; i < row.size(); ++i)
                    body << (i ? "," : "") << casimir::batch::format_g17(row[i]);
                body << "\n";
            }
            for (size_t c = 0; c < rep.columns.size(); ++c)
                body << "# max |ratio-1| " << rep.columns[c] << " = "
                     << casimir::batch::format_g17(rep.max_abs_dev[c]) << "\n";
            body << "# max |ratio-1| overall = " << casimir::batch::format_g17(rep.overall)
                 << "\n";
            if (compare_out.empty()) {
                std::cout << body.str();
            } else {
                std::ofstream f(compare_out);
                if (!f) {
                    std::cerr << "error: cannot open " << compare_out << "\n";
                    return kExitIo;
                }
                f << body.str();
            }
            return 0;
        }
    } catch (const casimir::ConvergenceError& err) {
        std::cerr << "convergence error: " << err.what() << "\n";
        return kExitConvergence;
    } catch (const casimir::DataError& err) {
        std::cerr << "data error: " << err.what() << "\n";
        return kExitIo;
    } catch (const std::invalid_argument& err) {
        std::cerr << "config error: " << err.what() << "\n";
        return kExitConfig;
    } catch (const std::domain_error& err) {
        std::cerr << "config error: " << err.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 1;
    }
    return 0;
}
