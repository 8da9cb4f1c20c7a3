#include "cellload/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace cellload {
namespace {

// 15-point Kronrod abscissae/weights and the embedded 7-point Gauss weights.
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Interval {
    double a, b, value, error;
};

// Single Gauss-Kronrod 15(7) panel; error = |kronrod - gauss|.
bool gk15(const std::function<double(double)>& f, double a, double b, double* value,
          double* error) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    double fv[15];
    for (int i = 0; i < 7; ++i) {
        fv[i] = f(c - h * kXgk[i]);
        fv[14 - i] = f(c + h * kXgk[i]);
    }
    fv[7] = f(c);
    double kron = kWgk[7] * fv[7];
    double gauss = kWg[3] * fv[7];
    for (int i = 0; i < 7; ++i) {
        kron += kWgk[i] * (fv[i] + fv[14 - i]);
        if (i % 2 == 1) gauss += kWg[i / 2] * (fv[i] + fv[14 - i]);
    }
    *value = kron * h;
    *error = std::abs((kron - gauss) * h);
    for (double v : fv)
        if (!std::isfinite(v)) return false;
    return true;
}

}  // namespace

QuadResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                              const QuadOptions& opts) {
    QuadResult res;
    if (a == b) {
        res.converged = true;
        return res;
    }
    std::vector<Interval> ivs;
    double v, e;
    if (!gk15(f, a, b, &v, &e)) throw QuadratureError("non-finite integrand value", res);
    ivs.push_back({a, b, v, e});

    while (true) {
        double total = 0.0, err = 0.0;
        std::size_t worst = 0;
        for (std::size_t i = 0; i < ivs.size(); ++i) {
            total += ivs[i].value;
            err += ivs[i].error;
            if (ivs[i].error > ivs[worst].error) worst = i;
        }
        res.value = total;
        res.error = err;
        res.intervals = static_cast<int>(ivs.size());
        const double goal = std::max(opts.abs_tol, opts.rel_tol * std::abs(total));
        if (err <= goal || err == 0.0) {
            res.converged = true;
            return res;
        }
        if (static_cast<int>(ivs.size()) >= opts.max_intervals) return res;

        const Interval w = ivs[worst];
        const double m = 0.5 * (w.a + w.b);
        if (m <= w.a || m >= w.b) return res;  // interval exhausted at machine precision
        Interval left{w.a, m, 0, 0}, right{m, w.b, 0, 0};
        if (!gk15(f, left.a, left.b, &left.value, &left.error) ||
            !gk15(f, right.a, right.b, &right.value, &right.error))
            throw QuadratureError("non-finite integrand value", res);
        ivs[worst] = left;
        ivs.push_back(right);
    }
}

double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadOptions& opts) {
    QuadResult r = integrate_adaptive(f, a, b, opts);
    if (!r.converged)
        throw QuadratureError("quadrature did not converge (error " + std::to_string(r.error) +
                                  " after " + std::to_string(r.intervals) + " intervals)",
                              r);
    return r.value;
}

double integrate_to_inf(const std::function<double(double)>& f, double a,
                        const QuadOptions& opts) {
    auto mapped = [&f, a](double u) {
        const double om = 1.0 - u;
        return f(a + u / om) / (om * om);
    };
    return integrate(mapped, 0.0, 1.0, opts);
}

}  // namespace cellload
