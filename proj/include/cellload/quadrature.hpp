#pragma once

// Adaptive Gauss-Kronrod 15(7) quadrature on finite and semi-infinite
// intervals. Globally adaptive: the interval with the largest error estimate
// is bisected until the summed error meets the tolerance. Kronrod nodes are
// interior points, so integrable endpoint singularities are handled without
// special casing. Non-convergence is reported, never silently ignored.

#include <functional>
#include <stdexcept>
#include <string>

namespace cellload {

struct QuadOptions {
    double rel_tol = 1e-8;
    double abs_tol = 0.0;        // secondary floor, useful when the value may be ~0
    int max_intervals = 4096;
};

struct QuadResult {
    double value = 0.0;
    double error = 0.0;          // estimated absolute error
    int intervals = 0;
    bool converged = false;
};

class QuadratureError : public std::runtime_error {
  public:
    QuadratureError(const std::string& what, const QuadResult& partial)
        : std::runtime_error(what), partial_(partial) {}
    const QuadResult& partial() const { return partial_; }

  private:
    QuadResult partial_;
};

// Diagnostic form: returns the result with its convergence flag.
QuadResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                              const QuadOptions& opts = {});

// Throwing form: QuadratureError on non-convergence or non-finite integrand.
double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadOptions& opts = {});

// Integral over [a, inf), mapped onto (0, 1] via t = a + u/(1-u).
double integrate_to_inf(const std::function<double(double)>& f, double a,
                        const QuadOptions& opts = {});

}  // namespace cellload
