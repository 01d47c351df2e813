// engine.hpp — exact steady state and thermodynamics of the three-level
// (Scovil–Schulz-DuBois) laser heat engine.
//
// Model: a three-level system |g>, |0>, |1> driven by a classical single-mode
// field on the |0><->|1> transition (coupling lambda) and weakly coupled to a
// hot bath on |g><->|1> (rate gamma_h, temperature t_h) and a cold bath on
// |g><->|0> (rate gamma_c, temperature t_c). Everything is evaluated in the
// rotating frame, where the steady state is time independent. Natural units
// throughout: hbar = k_B = 1.

#pragma once

#include <complex>

namespace ssd {

// Full physical parameter set. All fields are strictly positive rates,
// temperatures and transition frequencies in natural units.
struct EngineParams {
    double gamma_h{1.0};  // hot-contact Weisskopf-Wigner decay rate
    double gamma_c{1.0};  // cold-contact decay rate
    double lambda{1.0};   // matter-field coupling strength
    double t_h{20.0};     // hot bath temperature
    double t_c{5.0};      // cold bath temperature
    double w_h{4.0};      // hot transition frequency  (|1> - |g>)
    double w_c{2.0};      // cold transition frequency (|0> - |g>)

    double tau() const { return t_c / t_h; }      // reduced temperature ratio
    double gamma() const { return gamma_h / gamma_c; }  // dissipation asymmetry

    // Throws std::invalid_argument naming the offending field.
    void validate() const;
};

// Mean photon number of a thermal mode: n = 1/(exp(w/t) - 1).
// Strictly positive for positive arguments; underflows to zero for
// w/t beyond ~690 (occupation below double range).
double bose_occupation(double w, double t);

struct OccupationPair {
    double n_h;
    double n_c;
};

OccupationPair occupations(const EngineParams& p);

// The five independent real degrees of freedom of the rotating-frame
// steady-state density matrix. rho_10_re is zero at the steady state
// (the coherence is purely imaginary for real lambda).
struct SteadyState {
    double rho_11;     // population of the top level |1>
    double rho_00;     // population of the intermediate level |0>
    double rho_gg;     // population of the ground level |g>
    double rho_10_re;  // Re <1|rho|0>
    double rho_10_im;  // Im <1|rho|0>

    std::complex<double> rho_10() const { return {rho_10_re, rho_10_im}; }
};

// Solves the steady-state master equation as a dense 5x5 real linear system
// (populations + coherence + trace constraint). The solve is a fixed-order
// Gaussian elimination carried in extended precision with refined residuals;
// every scaled equation residual is verified to 1e-12.
SteadyState steady_state_numeric(const EngineParams& p);

// Closed-form steady-state coherence <1|rho|0>; the independent algebraic
// route against which the linear solve is cross-checked.
std::complex<double> steady_state_closed_form(const EngineParams& p);

// Thermodynamic observables at one parameter point.
// Sign conventions: qdot_h > 0 is heat flowing from the hot bath into the
// system; qdot_c > 0 is heat deposited INTO the cold bath. With these signs
// the first law reads power = qdot_h - qdot_c and entropy_rate is
// qdot_c/t_c - qdot_h/t_h >= 0.
struct Observables {
    double power;         // coherent output power P
    double qdot_h;        // heat flux from the hot bath
    double qdot_c;        // heat flux into the cold bath
    double efficiency;    // eta = 1 - w_c/w_h
    double entropy_rate;  // total entropy production rate
    double eco;           // ecological function E = P - t_c * entropy_rate
};

// Evaluates all observables from the numeric steady state. power and qdot_h
// come from the coherence; qdot_c is computed independently from the cold
// dissipator acting on the populations, so the first law is a genuine
// cross-check rather than an identity.
Observables observables(const EngineParams& p);

// Direct evaluation of the closed-form rational expressions for P and E
// (functions of the occupations and rates only; no linear solve).
double power_exact(const EngineParams& p);
double eco_exact(const EngineParams& p);

// Relative first-law residual |P - Qh + Qc| / max(|P|,|Qh|,|Qc|); zero when
// all fluxes vanish.
double first_law_residual(const Observables& o);

}  // namespace ssd
