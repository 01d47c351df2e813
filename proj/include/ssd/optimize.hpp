// optimize.hpp — small deterministic maximizers and derivative checks used to
// validate the closed forms and to locate the exact-EF surface maximum.

#pragma once

#include <array>
#include <functional>

namespace ssd::num {

struct ScalarBracket {
    double lo;
    double hi;

    void validate() const;  // requires 0 < lo < hi
};

struct ScalarOptimum {
    double argmax;
    double value;
};

// Golden-section maximization of a unimodal f on the bracket. |argmax - true|
// <= rel_tol * argmax for unimodal f. On flat plateaus ties resolve toward the
// smaller abscissa (arbitrary but fixed). Throws on a non-finite sample,
// reporting the offending abscissa.
ScalarOptimum maximize_scalar(const std::function<double(double)>& f,
                              ScalarBracket b, double rel_tol = 1e-10);

struct SurfaceBounds {
    double w_h_lo, w_h_hi;
    double w_c_lo, w_c_hi;

    void validate() const;
};

struct SurfaceResult {
    double w_h_star;
    double w_c_star;
    double value;
    double gradient_norm;   // central-difference gradient norm at the argmax
    int grid_resolution;    // coarse grid points per axis
    bool refined;           // gradient_norm < refine_tol reached
    bool on_boundary;       // coarse maximum sat on the bounds boundary
};

// Coarse grid scan (coarse_n x coarse_n, ties broken toward lexicographically
// smaller coordinates) followed by coordinate-descent refinement until the
// central-difference gradient norm drops below refine_tol. Deterministic for
// fixed inputs. A maximum on the bounds boundary is reported unrefined with
// on_boundary set.
SurfaceResult maximize_surface(const std::function<double(double, double)>& f,
                               SurfaceBounds bounds, int coarse_n,
                               double refine_tol = 1e-8);

// Central differences, error O(step^2) for smooth f. Throws on non-finite
// samples.
double finite_diff_derivative(const std::function<double(double)>& f, double x,
                              double step);
std::array<double, 2> finite_diff_gradient(
    const std::function<double(double, double)>& f, std::array<double, 2> point,
    double step);

// Default finite-difference step used by the surface refiner and the
// stationarity checks: 1e-5 * max(|coordinate|, 1).
double default_fd_step(double coordinate);

}  // namespace ssd::num
