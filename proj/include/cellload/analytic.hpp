#pragma once

// Closed-form load model for a noise-limited random cellular network.
//
// Geometry: station locations form a planar Poisson process of density
// lambda; the typical cell's area A follows the Tanemura gamma fit, whose
// reduced density f_s(x) = (343/15) sqrt(7/(2 pi)) x^{5/2} e^{-7x/2} is
// exactly Gamma(shape 7/2, rate 7/2). Radio: the rate at distance r is
// B log2(1 + xi r^-alpha) with xi the mean SNR at 1 m; the load of a region
// is the offered traffic density w times the integral of the inverse rate.
//
// Approximating the typical cell by a disk of equal area and the rate by its
// high-SNR form B log2(xi r^-alpha) gives the closed chain implemented here:
//
//   load_of_area(A)  = K' E1(ln(xi_eff pi / A)),  xi_eff = xi^(2/alpha),
//                      valid for A < pi xi_eff (unit SNR at the disk edge).
//   load_cdf(l)      = area_cdf(A*(l)),  A*(l) = pi xi_eff e^{-u*},
//                      u* = E1^{-1}(l / K').
//   ei_mean_load     = chi2 int_0^inf E1(t) e^{-7t/2} F2(t) dt, the exact
//                      change of variables t = ln(xi_eff pi / A) of
//                      E_A[load_of_area(A)], with
//                      F2(t) = exp(-(7 lambda xi_eff pi / 2) e^{-t}).
//   cf_mean_load     closed form replacing F2 by a 10%..90% percentile ramp
//                      and using the Geller-Ng antiderivatives, evaluated
//                      exactly as printed in the source material; its
//                      accuracy against the quadrature is a measured
//                      quantity, not an assumption.
//   mean_load_mc_baseline
//                      mean-cell route: mean area 1/lambda times the
//                      average inverse rate of the typical user under
//                      nearest-station association and Rayleigh fading.
//                      The fading tail makes the raw integral diverge at
//                      SNR -> 0, so it is truncated at a configured SNR
//                      floor (truncated-Shannon convention).
//
// Two printed-constant conventions are preserved side by side and never
// silently mixed: ConstantMode::Rederived uses constants re-derived from the
// disk integral (the default); ConstantMode::Printed keeps the printed
// ones, which carry extra factors (for K', a factor 2 xi / (alpha lambda)).
// selftests report the ratio. ApproxMode::Reference evaluates exponential
// integrals by the reference routines; ApproxMode::Printed reproduces
// the printed approximant pipeline (Barry form, truncated expansion,
// logistic inverse).

#include "cellload/params.hpp"
#include "cellload/specfun.hpp"

#include <stdexcept>

namespace cellload {

enum class ConstantMode { Rederived, Printed };

struct LoadModel {
    NetworkParams net;
    TrafficParams traffic;
    ConstantMode constant_mode = ConstantMode::Rederived;
    double quad_rel_tol = 1e-8;
    double quad_rel_tol_nested = 1e-6;
    double snr_floor_db = -10.0;  // mean-cell integral truncation

    void validate() const {
        net.validate();
        traffic.validate();
    }
};

// Raised when a cell area reaches the high-SNR validity boundary pi*xi_eff.
class HighSnrError : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

// Reduced-area density of the typical cell (unit mean); x >= 0.
double area_pdf_reduced(double x);

// CDF of the typical cell area (m^2) at station density lambda_bs.
double area_cdf(double area_m2, double lambda_bs);

// Load constant K' in the chosen convention.
double k_prime(const LoadModel& m);

// alpha = 2 constant used by the printed CDF approximation.
double k1_alpha2(const LoadModel& m);

// Prefactor of the mean-load integral in the chosen convention.
double chi2_constant(const LoadModel& m);

// Load of a disk-shaped cell of the given area; 0 when w = 0; HighSnrError
// when the area reaches pi * xi_eff.
double load_of_area(double area_m2, const LoadModel& m);

// CDF of the typical-cell load at level l >= 0. Reference mode inverts the
// load-area map through E1^{-1}; Printed (alpha = 2 only) reproduces the
// printed logistic form.
double load_cdf(double load, const LoadModel& m, ApproxMode mode = ApproxMode::Reference);

// Fraction of cells with load < 1.
double stable_fraction(const LoadModel& m, ApproxMode mode = ApproxMode::Reference);

// Mean-cell baseline (see header comment; truncated at m.snr_floor_db).
double mean_load_mc_baseline(const LoadModel& m);

// Coverage probability P(SNR > t) of the typical user under nearest-station
// association and Rayleigh fading (closed form for alpha = 2, quadrature
// otherwise). Exposed for tests and diagnostics.
double coverage_probability(double t, const LoadModel& m);

// Mean typical-cell load under the equal-area-disk map (alpha = 2 only).
// Reference: quadrature with reference E1. Printed: the printed
// piecewise integrand (Barry form for t >= 1, truncated expansion below).
double ei_mean_load(const LoadModel& m, ApproxMode mode = ApproxMode::Reference);

// 10%..90% ramp replacement of F2 (alpha = 2 only; requires the lower
// percentile point t1 > 0, i.e. lambda * xi * pi > 2 ln 10 / 7).
struct RampApprox {
    double t1 = 0.0;
    double t2 = 0.0;
    double y1 = 0.0;
};
RampApprox ramp_approx(const LoadModel& m);

// Closed-form mean load via the ramp and the Geller-Ng antiderivatives,
// evaluated exactly as printed (alpha = 2 only).
double cf_mean_load(const LoadModel& m);

// Flow-level quantities of a processor-sharing cell with mean load rho_bar.
struct DynThroughput {
    double throughput_bits_s = 0.0;
    double mean_users = 0.0;
};
DynThroughput dyn_throughput(double rho_bar, const LoadModel& m);

}  // namespace cellload
