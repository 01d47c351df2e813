#include "ssd/commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "json.hpp"
#include "ssd/engine.hpp"
#include "ssd/high_temp.hpp"
#include "ssd/optimize.hpp"

namespace ssd::cli {

namespace {

using nlohmann::json;
using ht::FixedFrequency;
using ht::GammaLimit;
using ht::Objective;

std::string fmt(double v, int prec) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.*g", prec, v);
    return buf;
}

int precision_of(const RunConfig& cfg) {
    const int p = cfg.precision.value_or(12);
    if (p < 6 || p > 17) throw std::invalid_argument("precision must be between 6 and 17");
    return p;
}

std::ofstream open_output(const std::string& path) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open output file: " + path);
    return os;
}

void require_key(const std::optional<double>& v, const char* name) {
    if (!v) throw std::invalid_argument(std::string("missing required parameter: ") + name);
}

EngineParams engine_params(const RunConfig& cfg, bool with_frequencies) {
    require_key(cfg.gamma_h, "gamma_h");
    require_key(cfg.gamma_c, "gamma_c");
    require_key(cfg.lambda, "lambda");
    require_key(cfg.t_h, "t_h");
    require_key(cfg.t_c, "t_c");
    EngineParams p{};
    p.gamma_h = *cfg.gamma_h;
    p.gamma_c = *cfg.gamma_c;
    p.lambda = *cfg.lambda;
    p.t_h = *cfg.t_h;
    p.t_c = *cfg.t_c;
    if (with_frequencies) {
        require_key(cfg.w_h, "w_h");
        require_key(cfg.w_c, "w_c");
        p.w_h = *cfg.w_h;
        p.w_c = *cfg.w_c;
    }
    p.validate();
    return p;
}

ht::ReducedParams reduced_params(const RunConfig& cfg) {
    ht::ReducedParams r{};
    if (cfg.tau) {
        r.tau = *cfg.tau;
    } else if (cfg.t_h && cfg.t_c) {
        r.tau = *cfg.t_c / *cfg.t_h;
    } else {
        throw std::invalid_argument("missing required parameter: tau (or t_h and t_c)");
    }
    if (cfg.gamma) {
        r.gamma = *cfg.gamma;
    } else if (cfg.gamma_h && cfg.gamma_c) {
        r.gamma = *cfg.gamma_h / *cfg.gamma_c;
    } else {
        throw std::invalid_argument("missing required parameter: gamma (or gamma_h and gamma_c)");
    }
    r.validate();
    return r;
}

}  // namespace

RunConfig load_config(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::invalid_argument("cannot read config file: " + path);
    json j;
    try {
        is >> j;
    } catch (const json::parse_error& e) {
        throw std::invalid_argument("config is not valid JSON: " + std::string(e.what()));
    }
    if (!j.is_object()) throw std::invalid_argument("config must be a JSON object");

    RunConfig cfg{};
    const auto num = [&](const json& v, const std::string& key) -> double {
        if (!v.is_number()) throw std::invalid_argument("config key " + key + " must be a number");
        return v.get<double>();
    };
    const auto str = [&](const json& v, const std::string& key) -> std::string {
        if (!v.is_string()) throw std::invalid_argument("config key " + key + " must be a string");
        return v.get<std::string>();
    };
    const auto integer = [&](const json& v, const std::string& key) -> int {
        if (!v.is_number_integer()) {
            throw std::invalid_argument("config key " + key + " must be an integer");
        }
        return v.get<int>();
    };
    for (const auto& [key, value] : j.items()) {
        if (key == "gamma_h") cfg.gamma_h = num(value, key);
        else if (key == "gamma_c") cfg.gamma_c = num(value, key);
        else if (key == "lambda") cfg.lambda = num(value, key);
        else if (key == "t_h") cfg.t_h = num(value, key);
        else if (key == "t_c") cfg.t_c = num(value, key);
        else if (key == "w_h") cfg.w_h = num(value, key);
        else if (key == "w_c") cfg.w_c = num(value, key);
        else if (key == "tau") cfg.tau = num(value, key);
        else if (key == "gamma") cfg.gamma = num(value, key);
        else if (key == "objective") cfg.objective = str(value, key);
        else if (key == "fix") cfg.fix = str(value, key);
        else if (key == "fixed_value") cfg.fixed_value = num(value, key);
        else if (key == "kind") cfg.kind = str(value, key);
        else if (key == "count") cfg.count = integer(value, key);
        else if (key == "wh_min") cfg.wh_min = num(value, key);
        else if (key == "wh_max") cfg.wh_max = num(value, key);
        else if (key == "wc_min") cfg.wc_min = num(value, key);
        else if (key == "wc_max") cfg.wc_max = num(value, key);
        else if (key == "coarse_n") cfg.coarse_n = integer(value, key);
        else if (key == "refine_tol") cfg.refine_tol = num(value, key);
        else if (key == "summary") cfg.summary = str(value, key);
        else if (key == "out") cfg.out = str(value, key);
        else if (key == "precision") cfg.precision = integer(value, key);
        else throw std::invalid_argument("unknown config key: " + key);
    }
    return cfg;
}

RunConfig merge(RunConfig base, const RunConfig& o) {
    const auto take = [](auto& dst, const auto& src) {
        if (src) dst = src;
    };
    take(base.gamma_h, o.gamma_h);
    take(base.gamma_c, o.gamma_c);
    take(base.lambda, o.lambda);
    take(base.t_h, o.t_h);
    take(base.t_c, o.t_c);
    take(base.w_h, o.w_h);
    take(base.w_c, o.w_c);
    take(base.tau, o.tau);
    take(base.gamma, o.gamma);
    take(base.objective, o.objective);
    take(base.fix, o.fix);
    take(base.fixed_value, o.fixed_value);
    take(base.kind, o.kind);
    take(base.count, o.count);
    take(base.wh_min, o.wh_min);
    take(base.wh_max, o.wh_max);
    take(base.wc_min, o.wc_min);
    take(base.wc_max, o.wc_max);
    take(base.coarse_n, o.coarse_n);
    take(base.refine_tol, o.refine_tol);
    take(base.summary, o.summary);
    take(base.out, o.out);
    take(base.precision, o.precision);
    return base;
}

void cmd_eval(const RunConfig& cfg, std::ostream& os) {
    const int prec = precision_of(cfg);
    const EngineParams p = engine_params(cfg, true);
    const Observables o = observables(p);

    std::ostringstream out;
    out << "{\n";
    const auto field = [&](const char* name, double v, bool last = false) {
        out << "  \"" << name << "\": " << fmt(v, prec) << (last ? "\n" : ",\n");
    };
    field("power", o.power);
    field("qdot_h", o.qdot_h);
    field("qdot_c", o.qdot_c);
    field("efficiency", o.efficiency);
    field("entropy_rate", o.entropy_rate);
    field("eco", o.eco);
    field("tau", p.tau());
    field("gamma", p.gamma());
    field("eta_carnot", 1.0 - p.tau());
    field("first_law_residual", first_law_residual(o), true);
    out << "}\n";

    os << out.str();
    if (cfg.out) {
        auto f = open_output(*cfg.out);
        f << out.str();
        if (!f) throw std::runtime_error("cannot write output file: " + *cfg.out);
    }
}

namespace {

Objective parse_objective(const RunConfig& cfg) {
    if (!cfg.objective) throw std::invalid_argument("missing required parameter: objective");
    if (*cfg.objective == "ef") return Objective::EcologicalFunction;
    if (*cfg.objective == "power") return Objective::Power;
    throw std::invalid_argument("objective must be \"ef\" or \"power\"");
}

FixedFrequency parse_fix(const RunConfig& cfg) {
    if (!cfg.fix) throw std::invalid_argument("missing required parameter: fix");
    if (*cfg.fix == "wh") return FixedFrequency::FixWh;
    if (*cfg.fix == "wc") return FixedFrequency::FixWc;
    if (*cfg.fix == "both") ht::reject_two_parameter_optimization();
    throw std::invalid_argument("fix must be \"wh\" or \"wc\"");
}

}  // namespace

void cmd_optimize(const RunConfig& cfg, std::ostream& os) {
    const int prec = precision_of(cfg);
    const Objective obj = parse_objective(cfg);
    const FixedFrequency fix = parse_fix(cfg);
    const ht::ReducedParams r = reduced_params(cfg);
    double fixed_value = 1.0;
    if (cfg.fixed_value) fixed_value = *cfg.fixed_value;
    else if (fix == FixedFrequency::FixWh && cfg.w_h) fixed_value = *cfg.w_h;
    else if (fix == FixedFrequency::FixWc && cfg.w_c) fixed_value = *cfg.w_c;
    if (!(fixed_value > 0.0) || !std::isfinite(fixed_value)) {
        throw std::invalid_argument("fixed_value must be positive");
    }

    const ht::OptimumPoint closed = ht::optimum(obj, fix, fixed_value, r, 1.0);

    // numeric cross-check on the engine bracket of the free frequency
    const auto objective = [&](double w) {
        const double w_h = fix == FixedFrequency::FixWh ? fixed_value : w;
        const double w_c = fix == FixedFrequency::FixWh ? w : fixed_value;
        return obj == Objective::EcologicalFunction ? ht::reduced_eco(w_h, w_c, r, 1.0)
                                                    : ht::reduced_power(w_h, w_c, r, 1.0);
    };
    const num::ScalarBracket bracket =
        fix == FixedFrequency::FixWh
            ? num::ScalarBracket{r.tau * fixed_value, fixed_value}
            : num::ScalarBracket{fixed_value, fixed_value / r.tau};
    const num::ScalarOptimum numeric = num::maximize_scalar(objective, bracket, 1e-12);

    const auto rel = [](double a, double b) {
        const double scale = std::max(std::fabs(a), std::fabs(b));
        return scale == 0.0 ? 0.0 : std::fabs(a - b) / scale;
    };

    std::ostringstream out;
    out << "{\n";
    out << "  \"objective\": \"" << (obj == Objective::EcologicalFunction ? "ef" : "power")
        << "\",\n";
    out << "  \"fix\": \"" << (fix == FixedFrequency::FixWh ? "wh" : "wc") << "\",\n";
    out << "  \"fixed_value\": " << fmt(fixed_value, prec) << ",\n";
    out << "  \"tau\": " << fmt(r.tau, prec) << ",\n";
    out << "  \"gamma\": " << fmt(r.gamma, prec) << ",\n";
    out << "  \"closed_form\": {\n";
    out << "    \"free_frequency\": " << fmt(closed.free_frequency, prec) << ",\n";
    out << "    \"objective_value\": " << fmt(closed.objective_value, prec) << ",\n";
    out << "    \"efficiency\": " << fmt(closed.efficiency, prec) << ",\n";
    out << "    \"companion_power\": " << fmt(closed.companion_power, prec) << ",\n";
    out << "    \"companion_eco\": " << fmt(closed.companion_eco, prec) << "\n";
    out << "  },\n";
    out << "  \"numeric\": {\n";
    out << "    \"free_frequency\": " << fmt(numeric.argmax, prec) << ",\n";
    out << "    \"objective_value\": " << fmt(numeric.value, prec) << "\n";
    out << "  },\n";
    out << "  \"relative_difference\": {\n";
    out << "    \"free_frequency\": " << fmt(rel(closed.free_frequency, numeric.argmax), prec)
        << ",\n";
    out << "    \"objective_value\": "
        << fmt(rel(closed.objective_value, numeric.value), prec) << "\n";
    out << "  }\n";
    out << "}\n";

    os << out.str();
    if (cfg.out) {
        auto f = open_output(*cfg.out);
        f << out.str();
        if (!f) throw std::runtime_error("cannot write output file: " + *cfg.out);
    }
}

namespace {

struct Column {
    std::string name;
    std::function<double(double)> eval;  // of eta_c in [0, 1]
};

// Finite-gamma sample columns take their tau -> 0 / tau -> 1 endpoint rows
// from the exact limits (the general-gamma ratio operations are undefined on
// the boundary of the engine regime).
std::function<double(double)> emef_col(FixedFrequency fix, double g) {
    return [=](double ec) {
        if (ec <= 0.0) return 0.0;
        if (ec >= 1.0) return 1.0;
        return ht::emef(fix, {1.0 - ec, g});
    };
}

std::function<double(double)> emef_lim_col(FixedFrequency fix, GammaLimit lim) {
    return [=](double ec) {
        if (fix == FixedFrequency::FixWh && lim == GammaLimit::Zero) return 0.75 * ec;
        if ((fix == FixedFrequency::FixWh && lim == GammaLimit::Infinity) ||
            (fix == FixedFrequency::FixWc && lim == GammaLimit::Zero)) {
            return ht::eta_ab(ec);
        }
        return (3.0 - 2.0 * ec) * ec / (4.0 - 3.0 * ec);
    };
}

std::function<double(double)> rprime_col(Objective obj, FixedFrequency fix, double g) {
    return [=](double ec) {
        if (ec <= 0.0) return obj == Objective::Power ? 1.0 : 1.0 / 3.0;
        if (ec >= 1.0) return 0.0;
        return ht::fractional_power_loss(obj, fix, {1.0 - ec, g});
    };
}

std::function<double(double)> rprime_lim_col(Objective obj, FixedFrequency fix,
                                             GammaLimit lim) {
    return [=](double ec) {
        const bool constant_curve = fix == FixedFrequency::FixWh && lim == GammaLimit::Zero;
        if (ec <= 0.0 || constant_curve) {
            return obj == Objective::Power ? 1.0 : 1.0 / 3.0;
        }
        if (ec >= 1.0) return 0.0;
        return ht::fractional_power_loss_limit(obj, fix, 1.0 - ec, lim);
    };
}

std::function<double(double)> rbar_col(FixedFrequency fix, double g) {
    return [=](double ec) {
        if (ec <= 0.0) return 0.75;
        if (ec >= 1.0) return 1.0;
        return ht::power_ratio_eco_vs_maxpower(fix, {1.0 - ec, g});
    };
}

std::function<double(double)> rbar_lim_col(FixedFrequency fix, GammaLimit lim) {
    return [=](double ec) {
        if (fix == FixedFrequency::FixWh && lim == GammaLimit::Zero) return 0.75;
        if (ec <= 0.0) return 0.75;
        if (ec >= 1.0) return 1.0;
        return ht::power_ratio_eco_vs_maxpower_limit(fix, 1.0 - ec, lim);
    };
}

constexpr double kGammaLo = 0.1;  // finite-gamma sample columns
constexpr double kGammaHi = 10.0;

std::vector<Column> sweep_columns(const std::string& kind) {
    using enum FixedFrequency;
    using enum GammaLimit;
    std::vector<Column> cols;
    if (kind == "fig2") {
        cols = {
            {"emef_wh_lim0", emef_lim_col(FixWh, Zero)},
            {"emef_wh_g0p1", emef_col(FixWh, kGammaLo)},
            {"emef_wh_g10", emef_col(FixWh, kGammaHi)},
            {"emef_wh_liminf", emef_lim_col(FixWh, Infinity)},
            {"emef_wc_lim0", emef_lim_col(FixWc, Zero)},
            {"emef_wc_g0p1", emef_col(FixWc, kGammaLo)},
            {"emef_wc_g10", emef_col(FixWc, kGammaHi)},
            {"emef_wc_liminf", emef_lim_col(FixWc, Infinity)},
        };
    } else if (kind == "fig3") {
        const auto block = [&](const char* tag, Objective obj, FixedFrequency fix) {
            const std::string base = std::string("rprime_") + tag;
            cols.push_back({base + "_lim0", rprime_lim_col(obj, fix, Zero)});
            cols.push_back({base + "_g0p1", rprime_col(obj, fix, kGammaLo)});
            cols.push_back({base + "_g10", rprime_col(obj, fix, kGammaHi)});
            cols.push_back({base + "_liminf", rprime_lim_col(obj, fix, Infinity)});
        };
        block("eco_wh", Objective::EcologicalFunction, FixWh);
        block("eco_wc", Objective::EcologicalFunction, FixWc);
        block("pow_wh", Objective::Power, FixWh);
        block("pow_wc", Objective::Power, FixWc);
    } else if (kind == "fig4") {
        cols = {
            {"rbar_wh_lim0", rbar_lim_col(FixWh, Zero)},
            {"rbar_wh_g0p1", rbar_col(FixWh, kGammaLo)},
            {"rbar_wh_g10", rbar_col(FixWh, kGammaHi)},
            {"rbar_wh_liminf", rbar_lim_col(FixWh, Infinity)},
            {"rbar_wc_lim0", rbar_lim_col(FixWc, Zero)},
            {"rbar_wc_g0p1", rbar_col(FixWc, kGammaLo)},
            {"rbar_wc_g10", rbar_col(FixWc, kGammaHi)},
            {"rbar_wc_liminf", rbar_lim_col(FixWc, Infinity)},
        };
    } else {
        throw std::invalid_argument("kind must be \"fig2\", \"fig3\" or \"fig4\"");
    }
    return cols;
}

}  // namespace

void cmd_sweep(const RunConfig& cfg, std::ostream& os) {
    const int prec = precision_of(cfg);
    if (!cfg.kind) throw std::invalid_argument("missing required parameter: kind");
    const std::vector<Column> cols = sweep_columns(*cfg.kind);
    const int count = cfg.count.value_or(101);
    if (count < 2) throw std::invalid_argument("count must be at least 2");
    if (!cfg.out) throw std::invalid_argument("missing required parameter: out");

    auto f = open_output(*cfg.out);
    f << "eta_c";
    for (const auto& c : cols) f << "," << c.name;
    f << "\n";
    for (int i = 0; i < count; ++i) {
        const double ec = static_cast<double>(i) / (count - 1);
        f << fmt(ec, prec);
        for (const auto& c : cols) f << "," << fmt(c.eval(ec), prec);
        f << "\n";
    }
    if (!f) throw std::runtime_error("cannot write output file: " + *cfg.out);
    f.close();

    // sidecar metadata; the data file itself stays byte-stable
    {
        auto meta = open_output(*cfg.out + ".meta.json");
        meta << "{\n  \"command\": \"sweep\",\n  \"kind\": \"" << *cfg.kind
             << "\",\n  \"count\": " << count << ",\n  \"precision\": " << prec
             << ",\n  \"gamma_samples\": [" << fmt(kGammaLo, prec) << ", "
             << fmt(kGammaHi, prec) << "],\n  \"columns\": [\"eta_c\"";
        for (const auto& c : cols) meta << ", \"" << c.name << "\"";
        meta << "]\n}\n";
        if (!meta) throw std::runtime_error("cannot write output file: " + *cfg.out + ".meta.json");
    }

    os << "{\n  \"kind\": \"" << *cfg.kind << "\",\n  \"rows\": " << count
       << ",\n  \"out\": \"" << *cfg.out << "\"\n}\n";
}

void cmd_surface(const RunConfig& cfg, std::ostream& os) {
    const int prec = precision_of(cfg);
    EngineParams base = [&] {
        RunConfig probe = cfg;
        // frequencies come from the grid; placeholders keep validate() happy
        if (!probe.w_h) probe.w_h = 1.0;
        if (!probe.w_c) probe.w_c = 1.0;
        return engine_params(probe, true);
    }();

    num::SurfaceBounds bounds{cfg.wh_min.value_or(0.1), cfg.wh_max.value_or(60.0),
                              cfg.wc_min.value_or(0.1), cfg.wc_max.value_or(30.0)};
    bounds.validate();
    const int coarse_n = cfg.coarse_n.value_or(200);
    if (coarse_n < 2) throw std::invalid_argument("coarse_n must be at least 2");
    const double refine_tol = cfg.refine_tol.value_or(1e-8);

    const auto eco = [&](double wh, double wc) {
        EngineParams p = base;
        p.w_h = wh;
        p.w_c = wc;
        return eco_exact(p);
    };

    if (cfg.out) {
        auto f = open_output(*cfg.out);
        f << "w_h,w_c,eco\n";
        for (int i = 0; i < coarse_n; ++i) {
            const double wh = bounds.w_h_lo +
                              (bounds.w_h_hi - bounds.w_h_lo) * i / (coarse_n - 1);
            for (int j = 0; j < coarse_n; ++j) {
                const double wc = bounds.w_c_lo +
                                  (bounds.w_c_hi - bounds.w_c_lo) * j / (coarse_n - 1);
                f << fmt(wh, prec) << "," << fmt(wc, prec) << ","
                  << fmt(eco(wh, wc), prec) << "\n";
            }
        }
        if (!f) throw std::runtime_error("cannot write output file: " + *cfg.out);
    }

    const num::SurfaceResult r = num::maximize_surface(eco, bounds, coarse_n, refine_tol);

    std::ostringstream out;
    out << "{\n";
    out << "  \"w_h_star\": " << fmt(r.w_h_star, prec) << ",\n";
    out << "  \"w_c_star\": " << fmt(r.w_c_star, prec) << ",\n";
    out << "  \"value\": " << fmt(r.value, prec) << ",\n";
    out << "  \"gradient_norm\": " << fmt(r.gradient_norm, prec) << ",\n";
    out << "  \"grid_resolution\": " << r.grid_resolution << ",\n";
    out << "  \"refined\": " << (r.refined ? "true" : "false") << ",\n";
    out << "  \"on_boundary\": " << (r.on_boundary ? "true" : "false") << ",\n";
    out << "  \"coarse_grid\": " << (coarse_n < 10 ? "true" : "false") << "\n";
    out << "}\n";

    os << out.str();
    if (cfg.summary) {
        auto f = open_output(*cfg.summary);
        f << out.str();
        if (!f) throw std::runtime_error("cannot write output file: " + *cfg.summary);
    }
}

}  // namespace ssd::cli
