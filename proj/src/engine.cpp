#include "ssd/engine.hpp"

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

namespace ssd {

namespace {

void require_positive(double v, const char* field) {
    if (!(v > 0.0) || !std::isfinite(v)) {
        throw std::invalid_argument(std::string(field) + " must be positive");
    }
}

}  // namespace

void EngineParams::validate() const {
    require_positive(gamma_h, "gamma_h");
    require_positive(gamma_c, "gamma_c");
    require_positive(lambda, "lambda");
    require_positive(t_h, "t_h");
    require_positive(t_c, "t_c");
    require_positive(w_h, "w_h");
    require_positive(w_c, "w_c");
}

double bose_occupation(double w, double t) {
    require_positive(w, "w");
    require_positive(t, "t");
    return 1.0 / std::expm1(w / t);
}

OccupationPair occupations(const EngineParams& p) {
    p.validate();
    return {bose_occupation(p.w_h, p.t_h), bose_occupation(p.w_c, p.t_c)};
}

namespace {

// Steady-state equations for the unknown vector
//   x = (rho_11, rho_00, rho_gg, Re rho_10, Im rho_10).
// Row order: hot populations, cold populations, trace, Re coherence,
// Im coherence. This order has a zero-free diagonal and never eliminates a
// small occupation entry against an O(1) row, which keeps the solve accurate
// down to occupations of ~1e-300 (max-norm pivoting does not; see the tests).
constexpr int kN = 5;

// Quad-precision workspace: the solution components span many orders of
// magnitude (populations near 1 against coherences down to ~1e-300 near the
// reversible line), the detailed-balance structure lives in n/(n+1)
// differences that double coefficients cannot encode finely enough, and the
// thermodynamic combinations downstream cancel. Quad coefficients and quad
// elimination keep every component at full relative accuracy.
using quad = __float128;

struct System5 {
    std::array<std::array<quad, kN>, kN> a;
    std::array<quad, kN> b;
};

System5 assemble(const EngineParams& p, const OccupationPair& n) {
    const quad gh = p.gamma_h, gc = p.gamma_c, lam = p.lambda;
    const quad nh = n.n_h, nc = n.n_c;
    const quad decay = gh * (nh + 1.0) + gc * (nc + 1.0);
    System5 s{};
    // d rho_11/dt = 0:  -2 gh (nh+1) r11 + 2 gh nh rgg - 2 lam Im = 0
    s.a[0] = {-2.0 * gh * (nh + 1.0), 0.0, 2.0 * gh * nh, 0.0, -2.0 * lam};
    // d rho_00/dt = 0:  -2 gc (nc+1) r00 + 2 gc nc rgg + 2 lam Im = 0
    s.a[1] = {0.0, -2.0 * gc * (nc + 1.0), 2.0 * gc * nc, 0.0, 2.0 * lam};
    // trace: r11 + r00 + rgg = 1
    s.a[2] = {1.0, 1.0, 1.0, 0.0, 0.0};
    // Re part of d rho_10/dt = 0: -decay * Re = 0
    s.a[3] = {0.0, 0.0, 0.0, -decay, 0.0};
    // Im part: lam r11 - lam r00 - decay * Im = 0
    s.a[4] = {lam, -lam, 0.0, 0.0, -decay};
    s.b = {0.0, 0.0, 1.0, 0.0, 0.0};
    return s;
}

// Fixed-order Gaussian elimination. The row arrangement above guarantees
// nonzero pivots for valid parameters.
std::array<quad, kN> eliminate(const System5& s, const std::array<quad, kN>& rhs) {
    std::array<std::array<quad, kN>, kN> a;
    std::array<quad, kN> b;
    for (int i = 0; i < kN; ++i) {
        for (int j = 0; j < kN; ++j) a[i][j] = s.a[i][j];
        b[i] = rhs[i];
    }
    for (int k = 0; k < kN; ++k) {
        if (a[k][k] == 0.0) throw std::runtime_error("steady-state system is singular");
        for (int i = k + 1; i < kN; ++i) {
            if (a[i][k] == 0.0) continue;
            const quad m = a[i][k] / a[k][k];
            a[i][k] = 0.0;
            for (int j = k + 1; j < kN; ++j) a[i][j] -= m * a[k][j];
            b[i] -= m * b[k];
        }
    }
    std::array<quad, kN> x{};
    for (int i = kN - 1; i >= 0; --i) {
        quad acc = b[i];
        for (int j = i + 1; j < kN; ++j) acc -= a[i][j] * x[j];
        x[i] = acc / a[i][i];
    }
    return x;
}

std::array<quad, kN> solve5(const System5& s) {
    std::array<quad, kN> rhs;
    for (int i = 0; i < kN; ++i) rhs[i] = s.b[i];
    std::array<quad, kN> x = eliminate(s, rhs);
    // one refinement pass against the exact stored coefficients
    std::array<quad, kN> resid;
    for (int i = 0; i < kN; ++i) {
        quad acc = s.b[i];
        for (int j = 0; j < kN; ++j) acc -= s.a[i][j] * x[j];
        resid[i] = acc;
    }
    const std::array<quad, kN> delta = eliminate(s, resid);
    for (int i = 0; i < kN; ++i) x[i] += delta[i];
    return x;
}

void check_residuals(const System5& s, const std::array<quad, kN>& x) {
    for (int i = 0; i < kN; ++i) {
        quad r = s.b[i];
        quad scale = 0.0;
        for (int j = 0; j < kN; ++j) {
            r -= s.a[i][j] * x[j];
            const quad mag = s.a[i][j] < 0.0 ? -s.a[i][j] : s.a[i][j];
            if (mag > scale) scale = mag;
        }
        if (r < 0.0) r = -r;
        if (!(r / scale <= 1e-12)) {
            throw std::runtime_error("steady-state residual exceeds 1e-12");
        }
    }
}

// The ecological-function bracket 2(w_h - w_c) - (1 - tau) w_h cancels near
// the curve where E changes sign; quad-precision cores keep the two E routes
// (closed form vs fluxes) in 1e-12 relative agreement even there.
quad exact_denominator_q(const EngineParams& p, const OccupationPair& n) {
    const quad gh = p.gamma_h, gc = p.gamma_c, lam = p.lambda;
    const quad nh = n.n_h, nc = n.n_c;
    return lam * lam * ((1.0 + 3.0 * nh) * gh + (1.0 + 3.0 * nc) * gc) +
           gc * gh * (1.0 + 2.0 * nh + nc * (2.0 + 3.0 * nh)) *
               ((1.0 + nc) * gc + (1.0 + nh) * gh);
}

quad eco_bracket_q(const EngineParams& p) {
    const quad tau = static_cast<quad>(p.t_c) / static_cast<quad>(p.t_h);
    return 2.0 * (static_cast<quad>(p.w_h) - static_cast<quad>(p.w_c)) -
           (1.0 - tau) * static_cast<quad>(p.w_h);
}

struct Solved {
    System5 s;
    std::array<quad, kN> x;
};

Solved solve_steady(const EngineParams& p, const OccupationPair& n) {
    Solved r{assemble(p, n), {}};
    r.x = solve5(r.s);
    check_residuals(r.s, r.x);
    return r;
}

}  // namespace

SteadyState steady_state_numeric(const EngineParams& p) {
    const OccupationPair n = occupations(p);
    const auto x = solve_steady(p, n).x;
    return {static_cast<double>(x[0]), static_cast<double>(x[1]),
            static_cast<double>(x[2]), static_cast<double>(x[3]),
            static_cast<double>(x[4])};
}

std::complex<double> steady_state_closed_form(const EngineParams& p) {
    const OccupationPair n = occupations(p);
    const quad im = static_cast<quad>(p.lambda) * (static_cast<quad>(n.n_h) - n.n_c) *
                    p.gamma_c * p.gamma_h / exact_denominator_q(p, n);
    return {0.0, static_cast<double>(im)};
}

Observables observables(const EngineParams& p) {
    const OccupationPair n = occupations(p);
    const auto [s, x] = solve_steady(p, n);
    const quad rho_00 = x[1], rho_gg = x[2], rho_10_im = x[4];
    // P and Qh from the coherence: i lam (rho_01 - rho_10) = 2 lam Im rho_10.
    const quad power = 2.0 * static_cast<quad>(p.lambda) *
                       (static_cast<quad>(p.w_h) - p.w_c) * rho_10_im;
    const quad qdot_h = 2.0 * static_cast<quad>(p.lambda) * p.w_h * rho_10_im;
    // Qc from the cold dissipator acting on the populations,
    // -Tr(L_c[rho] H_0) = 2 w_c gamma_c [(nc+1) rho_00 - nc rho_gg], taken
    // from the assembled dissipator row so the detailed-balance bracket is
    // the one the steady state actually satisfies.
    const quad qdot_c =
        -static_cast<quad>(p.w_c) * (s.a[1][1] * rho_00 + s.a[1][2] * rho_gg);
    const quad entropy = qdot_c / p.t_c - qdot_h / p.t_h;
    Observables o{};
    o.power = static_cast<double>(power);
    o.qdot_h = static_cast<double>(qdot_h);
    o.qdot_c = static_cast<double>(qdot_c);
    o.efficiency = 1.0 - p.w_c / p.w_h;
    o.entropy_rate = static_cast<double>(entropy);
    o.eco = static_cast<double>(power - static_cast<quad>(p.t_c) * entropy);
    return o;
}

double power_exact(const EngineParams& p) {
    const OccupationPair n = occupations(p);
    const quad lam = p.lambda;
    return static_cast<double>(2.0 * lam * lam * p.gamma_c * p.gamma_h *
                               (static_cast<quad>(n.n_h) - n.n_c) *
                               (static_cast<quad>(p.w_h) - p.w_c) /
                               exact_denominator_q(p, n));
}

double eco_exact(const EngineParams& p) {
    const OccupationPair n = occupations(p);
    const quad lam = p.lambda;
    return static_cast<double>(2.0 * lam * lam * p.gamma_c * p.gamma_h *
                               (static_cast<quad>(n.n_h) - n.n_c) *
                               eco_bracket_q(p) / exact_denominator_q(p, n));
}

double first_law_residual(const Observables& o) {
    const double scale =
        std::max({std::fabs(o.power), std::fabs(o.qdot_h), std::fabs(o.qdot_c)});
    if (scale == 0.0) return 0.0;
    return std::fabs(o.power - o.qdot_h + o.qdot_c) / scale;
}

}  // namespace ssd
