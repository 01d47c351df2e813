// ssd — command-line front end for the three-level laser heat engine library.
// Subcommands: eval, optimize, sweep, surface. A flat JSON config supplies
// defaults; flags override. Exit status: 0 success, 2 validation error,
// 3 numeric or I/O failure.

#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "ssd/commands.hpp"

namespace {

using ssd::cli::RunConfig;

struct Flags {
    std::optional<std::string> config;
    RunConfig overrides;
};

void add_common(CLI::App* cmd, Flags& f) {
    cmd->add_option("--config", f.config, "flat JSON config file");
    cmd->add_option("--out", f.overrides.out, "output file path");
    cmd->add_option("--precision", f.overrides.precision, "significant digits (6..17)");
}

void add_engine_params(CLI::App* cmd, RunConfig& o, bool with_frequencies) {
    cmd->add_option("--gamma_h", o.gamma_h, "hot-contact decay rate");
    cmd->add_option("--gamma_c", o.gamma_c, "cold-contact decay rate");
    cmd->add_option("--lambda", o.lambda, "matter-field coupling");
    cmd->add_option("--t_h", o.t_h, "hot bath temperature");
    cmd->add_option("--t_c", o.t_c, "cold bath temperature");
    if (with_frequencies) {
        cmd->add_option("--w_h", o.w_h, "hot transition frequency");
        cmd->add_option("--w_c", o.w_c, "cold transition frequency");
    }
}

RunConfig resolve(const Flags& f) {
    RunConfig base{};
    if (f.config) base = ssd::cli::load_config(*f.config);
    return ssd::cli::merge(base, f.overrides);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"three-level laser heat engine: exact steady state, "
                 "closed-form optima, figure-data sweeps"};
    app.require_subcommand(1);

    Flags ev, op, sw, su;

    CLI::App* eval = app.add_subcommand("eval", "evaluate observables at one point");
    add_common(eval, ev);
    add_engine_params(eval, ev.overrides, true);

    CLI::App* optimize =
        app.add_subcommand("optimize", "closed-form vs numeric one-parameter optimum");
    add_common(optimize, op);
    add_engine_params(optimize, op.overrides, true);
    optimize->add_option("--objective", op.overrides.objective, "\"ef\" or \"power\"");
    optimize->add_option("--fix", op.overrides.fix, "fixed frequency: \"wh\" or \"wc\"");
    optimize->add_option("--fixed_value", op.overrides.fixed_value,
                         "value of the fixed frequency (default 1)");
    optimize->add_option("--tau", op.overrides.tau, "t_c/t_h");
    optimize->add_option("--gamma", op.overrides.gamma, "gamma_h/gamma_c");

    CLI::App* sweep = app.add_subcommand("sweep", "write figure-data CSV");
    add_common(sweep, sw);
    sweep->add_option("--kind", sw.overrides.kind, "\"fig2\", \"fig3\" or \"fig4\"");
    sweep->add_option("--count", sw.overrides.count, "number of eta_C rows (default 101)");

    CLI::App* surface =
        app.add_subcommand("surface", "exact-EF grid scan and maximum search");
    add_common(surface, su);
    add_engine_params(surface, su.overrides, false);
    surface->add_option("--wh_min", su.overrides.wh_min, "w_h lower bound (default 0.1)");
    surface->add_option("--wh_max", su.overrides.wh_max, "w_h upper bound (default 60)");
    surface->add_option("--wc_min", su.overrides.wc_min, "w_c lower bound (default 0.1)");
    surface->add_option("--wc_max", su.overrides.wc_max, "w_c upper bound (default 30)");
    surface->add_option("--coarse_n", su.overrides.coarse_n,
                        "grid points per axis (default 200)");
    surface->add_option("--refine_tol", su.overrides.refine_tol,
                        "gradient-norm stationarity tolerance (default 1e-8)");
    surface->add_option("--summary", su.overrides.summary, "summary JSON path");

    CLI11_PARSE(app, argc, argv);

    try {
        if (eval->parsed()) ssd::cli::cmd_eval(resolve(ev), std::cout);
        else if (optimize->parsed()) ssd::cli::cmd_optimize(resolve(op), std::cout);
        else if (sweep->parsed()) ssd::cli::cmd_sweep(resolve(sw), std::cout);
        else if (surface->parsed()) ssd::cli::cmd_surface(resolve(su), std::cout);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
