// high_temp.hpp — closed-form results in the high-temperature, strong-coupling
// regime (n ~ t/w, lambda >> thermal decay rates). Everything here is a
// function of the reduced pair (tau, gamma) = (t_c/t_h, gamma_h/gamma_c) plus
// an overall rate/frequency scale.

#pragma once

#include <utility>

namespace ssd::ht {

struct ReducedParams {
    double tau;    // t_c/t_h, in (0,1) for engine operation
    double gamma;  // gamma_h/gamma_c, > 0

    double eta_carnot() const { return 1.0 - tau; }

    // Throws std::domain_error; tau must lie in (0,1), gamma must be positive.
    void validate() const;
};

enum class Objective { EcologicalFunction, Power };
enum class FixedFrequency { FixWh, FixWc };

// The gamma -> 0 / gamma -> infinity limits are provided as dedicated
// closed-form branches; never feed 0 or huge values through the general-gamma
// formulas.
enum class GammaLimit { Zero, Infinity };

// Reduced power  P = 2 G_h (w_h - w_c)(w_c - tau w_h) / [3 (gamma w_c + tau w_h)],
// reduced ecological function, and reduced hot heat flux. All vanish on the
// reversible line w_c = tau w_h; the power also vanishes at w_c = w_h.
double reduced_power(double w_h, double w_c, const ReducedParams& r, double gamma_h);
double reduced_eco(double w_h, double w_c, const ReducedParams& r, double gamma_h);
double reduced_heat_flux(double w_h, double w_c, const ReducedParams& r, double gamma_h);

// Closed-form maximizer of the chosen reduced objective in the free frequency,
// the other frequency held at fixed_value. Interior maximum of the reduced
// objective on the engine bracket.
double optimal_frequency(Objective obj, FixedFrequency fix, double fixed_value,
                         const ReducedParams& r);

// Efficiency at maximum ecological function, general gamma.
double emef(FixedFrequency fix, const ReducedParams& r);
// Its gamma -> 0/inf limit branches.
double emef_limit(FixedFrequency fix, double tau, GammaLimit lim);

// Efficiency at maximum power, 1 - w_c*/w_h at the closed-form
// maximum-power frequency.
double emp(FixedFrequency fix, const ReducedParams& r);

// Angulo-Brown efficiency 1 - sqrt((1-eta_c)(2-eta_c)/2); the boundary value
// separating the two EMEF regimes. Domain [0,1].
double eta_ab(double eta_c);

struct EfficiencyBounds {
    double lower;
    double upper;
};

// Asymmetric-dissipation bounds on the EMEF at given Carnot efficiency:
// fixed w_h: [3 eta_C/4, eta_AB]; fixed w_c: [eta_AB, (3-2 eta_C) eta_C/(4-3 eta_C)].
EfficiencyBounds emef_bounds(FixedFrequency fix, double eta_c);

// Operating point at the closed-form optimum of one objective.
struct OptimumPoint {
    double free_frequency;   // maximizing value of the free frequency
    double objective_value;  // objective at the optimum
    double efficiency;       // 1 - w_c/w_h there
    double companion_power;  // reduced power at the same point
    double companion_eco;    // reduced EF at the same point
};

OptimumPoint optimum(Objective obj, FixedFrequency fix, double fixed_value,
                     const ReducedParams& r, double gamma_h);

// (E, P) at the closed-form optimum, computed by substituting the optimal
// frequency into the reduced objectives. Both scale linearly in fixed_value
// and gamma_h.
std::pair<double, double> optimum_values(Objective obj, FixedFrequency fix,
                                         const ReducedParams& r,
                                         double fixed_value, double gamma_h);

// R = E*/P* at the optimum of `obj`; dimensionless, independent of the scale
// arguments, in [0,1]. Throws for tau outside (0,1).
double ratio_eco_over_power(Objective obj, FixedFrequency fix, const ReducedParams& r);
double ratio_eco_over_power_limit(Objective obj, FixedFrequency fix, double tau,
                                  GammaLimit lim);

// Fractional power loss R' = P_lost/P = 1 - R.
double fractional_power_loss(Objective obj, FixedFrequency fix, const ReducedParams& r);
double fractional_power_loss_limit(Objective obj, FixedFrequency fix, double tau,
                                   GammaLimit lim);

// Rbar = (power at maximum EF) / (maximum power), same fixed frequency.
// At least 3/4 everywhere on tau in (0,1).
double power_ratio_eco_vs_maxpower(FixedFrequency fix, const ReducedParams& r);
double power_ratio_eco_vs_maxpower_limit(FixedFrequency fix, double tau, GammaLimit lim);

// Simultaneous optimization of the reduced EF over both frequencies has no
// interior maximum (the stationarity conditions only meet at w_c = w_h = 0);
// always throws std::domain_error pointing callers at the exact-EF surface
// search instead.
[[noreturn]] void reject_two_parameter_optimization();

}  // namespace ssd::ht
