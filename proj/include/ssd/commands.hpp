// commands.hpp — batch front end behind the `ssd` CLI: single-point
// evaluation, closed-form/numeric optimization runs, figure-data sweeps and
// the exact-EF surface scan. Commands read a flat JSON config merged with
// flag overrides and write byte-stable CSV/JSON (no timestamps in data files).

#pragma once

#include <optional>
#include <ostream>
#include <string>

namespace ssd::cli {

struct RunConfig {
    // engine parameters
    std::optional<double> gamma_h, gamma_c, lambda, t_h, t_c, w_h, w_c;
    // reduced parameters (derived from the above when absent)
    std::optional<double> tau, gamma;
    // optimize
    std::optional<std::string> objective;  // "ef" | "power"
    std::optional<std::string> fix;        // "wh" | "wc" ("both" is rejected)
    std::optional<double> fixed_value;
    // sweep
    std::optional<std::string> kind;  // "fig2" | "fig3" | "fig4"
    std::optional<int> count;
    // surface
    std::optional<double> wh_min, wh_max, wc_min, wc_max;
    std::optional<int> coarse_n;
    std::optional<double> refine_tol;
    std::optional<std::string> summary;  // summary JSON path (surface)
    // output
    std::optional<std::string> out;  // data file path; stdout when absent
    std::optional<int> precision;    // significant digits, 6..17 (default 12)
};

// Parses a flat JSON config document. Unknown keys are rejected.
RunConfig load_config(const std::string& path);

// Values set in `overrides` win over `base` (CLI flags over config file).
RunConfig merge(RunConfig base, const RunConfig& overrides);

// Each command throws std::invalid_argument / std::domain_error for
// validation problems (exit 2) and std::runtime_error for numeric or I/O
// failures (exit 3). `os` receives the primary JSON output for eval/optimize
// and the summary line for sweep/surface.
void cmd_eval(const RunConfig& cfg, std::ostream& os);
void cmd_optimize(const RunConfig& cfg, std::ostream& os);
void cmd_sweep(const RunConfig& cfg, std::ostream& os);
void cmd_surface(const RunConfig& cfg, std::ostream& os);

}  // namespace ssd::cli
