#include "ssd/high_temp.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace ssd::ht {

void ReducedParams::validate() const {
    if (!std::isfinite(tau) || !(tau > 0.0 && tau < 1.0)) {
        throw std::domain_error("tau must lie in (0, 1) for engine operation");
    }
    if (!std::isfinite(gamma) || !(gamma > 0.0)) {
        throw std::domain_error("gamma must be positive");
    }
}

namespace {

void require_frequency(double w, const char* name) {
    if (!std::isfinite(w) || !(w > 0.0)) {
        throw std::domain_error(std::string(name) + " must be positive");
    }
}

void require_tau(double tau) {
    if (!std::isfinite(tau) || !(tau > 0.0 && tau < 1.0)) {
        throw std::domain_error("tau must lie in (0, 1) for engine operation");
    }
}

}  // namespace

double reduced_power(double w_h, double w_c, const ReducedParams& r, double gamma_h) {
    require_frequency(w_h, "w_h");
    require_frequency(w_c, "w_c");
    return 2.0 * gamma_h * (w_h - w_c) * (w_c - r.tau * w_h) /
           (3.0 * (r.gamma * w_c + r.tau * w_h));
}

double reduced_eco(double w_h, double w_c, const ReducedParams& r, double gamma_h) {
    require_frequency(w_h, "w_h");
    require_frequency(w_c, "w_c");
    const double bracket = 2.0 * (w_h - w_c) - (1.0 - r.tau) * w_h;
    return 2.0 * gamma_h * (w_c - r.tau * w_h) * bracket /
           (3.0 * (r.gamma * w_c + r.tau * w_h));
}

double reduced_heat_flux(double w_h, double w_c, const ReducedParams& r, double gamma_h) {
    require_frequency(w_h, "w_h");
    require_frequency(w_c, "w_c");
    return 2.0 * gamma_h * w_h * (w_c - r.tau * w_h) /
           (3.0 * (r.gamma * w_c + r.tau * w_h));
}

// All four maximizer formulas are used in rationalized form (conjugate
// multiplication applied to the direct surd) so they stay accurate from
// gamma ~ 1e-300 through gamma ~ 1e300 without a small-gamma branch.
double optimal_frequency(Objective obj, FixedFrequency fix, double fixed_value,
                         const ReducedParams& r) {
    require_frequency(fixed_value, fix == FixedFrequency::FixWh ? "w_h" : "w_c");
    r.validate();
    const double tau = r.tau, g = r.gamma;
    if (obj == Objective::EcologicalFunction) {
        if (fix == FixedFrequency::FixWh) {
            // w_c* = (w_h/2g)(sqrt(2 tau (1+g)(g+(2+g)tau)) - 2 tau)
            const double root = std::sqrt(2.0 * tau * (1.0 + g) * (g + (2.0 + g) * tau));
            return fixed_value * tau * ((1.0 + 3.0 * tau) + g * (1.0 + tau)) /
                   (root + 2.0 * tau);
        }
        // w_h* = w_c (sqrt((1+g)(1+tau)(g+(2+g)tau)) - g(1+tau)) / (tau(1+tau))
        const double root =
            std::sqrt((1.0 + g) * (1.0 + tau) * (g + (2.0 + g) * tau));
        return fixed_value * (g * (1.0 + 3.0 * tau) + 2.0 * tau) /
               (tau * (root + g * (1.0 + tau)));
    }
    if (fix == FixedFrequency::FixWh) {
        // w_c* = (w_h/g)(sqrt(tau (1+g)(tau+g)) - tau)
        const double root = std::sqrt(tau * (1.0 + g) * (tau + g));
        return fixed_value * tau * (1.0 + tau + g) / (root + tau);
    }
    // w_h* = (w_c/tau)(sqrt((1+g)(tau+g)) - g)
    const double root = std::sqrt((1.0 + g) * (tau + g));
    return fixed_value * (g * (1.0 + tau) + tau) / (tau * (root + g));
}

double emef(FixedFrequency fix, const ReducedParams& r) {
    r.validate();
    const double tau = r.tau, g = r.gamma;
    if (fix == FixedFrequency::FixWh) {
        // 1 + tau/g - sqrt((1+g)tau(g+(2+g)tau)) / (sqrt(2) g), rationalized to
        // avoid the tau/g cancellation at small g.
        const double s = std::sqrt(tau * (1.0 + g) * (g + (2.0 + g) * tau) / 2.0);
        return 1.0 - tau * ((1.0 + 3.0 * tau) + g * (1.0 + tau)) / (2.0 * (s + tau));
    }
    const double s = std::sqrt((1.0 + g) * (1.0 + tau) * (g + (2.0 + g) * tau));
    return (g * (1.0 - tau * tau) + 2.0 * (1.0 + g) * tau - tau * s) /
           (g + 2.0 * tau + 3.0 * g * tau);
}

double emef_limit(FixedFrequency fix, double tau, GammaLimit lim) {
    require_tau(tau);
    const double eta_c = 1.0 - tau;
    if (fix == FixedFrequency::FixWh) {
        return lim == GammaLimit::Zero ? 0.75 * eta_c : eta_ab(eta_c);
    }
    return lim == GammaLimit::Zero
               ? eta_ab(eta_c)
               : eta_c * (1.0 + 2.0 * tau) / (1.0 + 3.0 * tau);
}

double emp(FixedFrequency fix, const ReducedParams& r) {
    if (fix == FixedFrequency::FixWh) {
        return 1.0 - optimal_frequency(Objective::Power, fix, 1.0, r);
    }
    return 1.0 - 1.0 / optimal_frequency(Objective::Power, fix, 1.0, r);
}

double eta_ab(double eta_c) {
    if (!std::isfinite(eta_c) || eta_c < 0.0 || eta_c > 1.0) {
        throw std::domain_error("eta_c must lie in [0, 1]");
    }
    return 1.0 - std::sqrt((1.0 - eta_c) * (2.0 - eta_c) / 2.0);
}

EfficiencyBounds emef_bounds(FixedFrequency fix, double eta_c) {
    if (!std::isfinite(eta_c) || !(eta_c > 0.0 && eta_c < 1.0)) {
        throw std::domain_error("eta_c must lie in (0, 1)");
    }
    if (fix == FixedFrequency::FixWh) {
        return {0.75 * eta_c, eta_ab(eta_c)};
    }
    return {eta_ab(eta_c), (3.0 - 2.0 * eta_c) * eta_c / (4.0 - 3.0 * eta_c)};
}

OptimumPoint optimum(Objective obj, FixedFrequency fix, double fixed_value,
                     const ReducedParams& r, double gamma_h) {
    const double free = optimal_frequency(obj, fix, fixed_value, r);
    const double w_h = fix == FixedFrequency::FixWh ? fixed_value : free;
    const double w_c = fix == FixedFrequency::FixWh ? free : fixed_value;
    OptimumPoint pt{};
    pt.free_frequency = free;
    pt.companion_power = reduced_power(w_h, w_c, r, gamma_h);
    pt.companion_eco = reduced_eco(w_h, w_c, r, gamma_h);
    pt.objective_value =
        obj == Objective::EcologicalFunction ? pt.companion_eco : pt.companion_power;
    pt.efficiency = 1.0 - w_c / w_h;
    return pt;
}

std::pair<double, double> optimum_values(Objective obj, FixedFrequency fix,
                                         const ReducedParams& r,
                                         double fixed_value, double gamma_h) {
    const OptimumPoint pt = optimum(obj, fix, fixed_value, r, gamma_h);
    return {pt.companion_eco, pt.companion_power};
}

double ratio_eco_over_power(Objective obj, FixedFrequency fix, const ReducedParams& r) {
    const auto [e, p] = optimum_values(obj, fix, r, 1.0, 1.0);
    if (p == 0.0) throw std::runtime_error("undefined ratio: power at the optimum is zero");
    return e / p;
}

double ratio_eco_over_power_limit(Objective obj, FixedFrequency fix, double tau,
                                  GammaLimit lim) {
    require_tau(tau);
    const bool zero = lim == GammaLimit::Zero;
    if (obj == Objective::EcologicalFunction) {
        if (fix == FixedFrequency::FixWh && zero) return 2.0 / 3.0;
        if (fix == FixedFrequency::FixWc && !zero) return (1.0 + tau) / (1.0 + 2.0 * tau);
        // (FixWh, inf) and (FixWc, 0) coincide
        const double s2 = std::sqrt(2.0 * (1.0 + tau));
        return s2 / (std::sqrt(tau) + s2);
    }
    if (fix == FixedFrequency::FixWh && zero) return 0.0;
    if (fix == FixedFrequency::FixWc && !zero) return 1.0 - tau;
    return 1.0 - std::sqrt(tau);
}

double fractional_power_loss(Objective obj, FixedFrequency fix, const ReducedParams& r) {
    return 1.0 - ratio_eco_over_power(obj, fix, r);
}

double fractional_power_loss_limit(Objective obj, FixedFrequency fix, double tau,
                                   GammaLimit lim) {
    return 1.0 - ratio_eco_over_power_limit(obj, fix, tau, lim);
}

double power_ratio_eco_vs_maxpower(FixedFrequency fix, const ReducedParams& r) {
    const double p_eco =
        optimum(Objective::EcologicalFunction, fix, 1.0, r, 1.0).companion_power;
    const double p_max = optimum(Objective::Power, fix, 1.0, r, 1.0).objective_value;
    if (p_max == 0.0) throw std::runtime_error("undefined ratio: maximum power is zero");
    return p_eco / p_max;
}

double power_ratio_eco_vs_maxpower_limit(FixedFrequency fix, double tau, GammaLimit lim) {
    require_tau(tau);
    if (fix == FixedFrequency::FixWh && lim == GammaLimit::Zero) {
        // both optima sit on the same parabola in the gamma -> 0 limit; the
        // ratio is exactly 3/4, independent of tau
        return 0.75;
    }
    if (fix == FixedFrequency::FixWc && lim == GammaLimit::Infinity) {
        return (1.0 + 2.0 * tau) / ((1.0 + tau) * (1.0 + tau));
    }
    // (FixWh, inf) and (FixWc, 0) coincide. Rationalized form of
    // [(1+tau) - tau(3+tau)/sqrt(2 tau (1+tau))] / (1-sqrt(tau))^2,
    // exact through tau -> 1.
    const double st = std::sqrt(tau);
    const double s2 = std::sqrt(2.0 * (1.0 + tau));
    return (tau + 2.0) * (1.0 + st) * (1.0 + st) /
           (s2 * ((1.0 + tau) * s2 + st * (3.0 + tau)));
}

void reject_two_parameter_optimization() {
    throw std::domain_error(
        "simultaneous optimization of the high-temperature ecological function "
        "over both frequencies has only the trivial stationary point "
        "w_c = w_h = 0; use the exact-EF surface search (surface command) instead");
}

}  // namespace ssd::ht
