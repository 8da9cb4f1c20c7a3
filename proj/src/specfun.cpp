#include "cellload/specfun.hpp"

#include <cmath>
#include <limits>

namespace cellload {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kTiny = 1e-300;

// E1 via the alternating power series, for 0 < x <= 1.
double e1_series(double x) {
    double sum = -kEulerGamma - std::log(x);
    double term = 1.0;
    for (int k = 1; k < 64; ++k) {
        term *= -x / k;
        const double add = -term / k;
        sum += add;
        if (std::abs(add) < kEps * std::abs(sum)) break;
    }
    return sum;
}

// E1 via modified Lentz on e^x E1(x) = 1/(x+1- 1/(x+3- 4/(x+5- ...))),
// for x > 1.
double e1_contfrac(double x) {
    double b = x + 1.0;
    double c = 1.0 / kTiny;
    double d = 1.0 / b;
    double f = d;
    for (int j = 1; j < 400; ++j) {
        const double a = -static_cast<double>(j) * j;
        b += 2.0;
        d = a * d + b;
        if (std::abs(d) < kTiny) d = kTiny;
        c = b + a / c;
        if (std::abs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double delta = c * d;
        f *= delta;
        if (std::abs(delta - 1.0) < kEps) break;
    }
    return std::exp(-x) * f;
}

// Ei power series for x > 0: gamma + ln x + sum x^k/(k k!).
double ei_series(double x) {
    double sum = kEulerGamma + std::log(x);
    double term = 1.0;
    for (int k = 1; k < 200; ++k) {
        term *= x / k;
        const double add = term / k;
        sum += add;
        if (add < kEps * std::abs(sum)) break;
    }
    return sum;
}

// Ei asymptotic expansion e^x/x sum k!/x^k for large x, truncated at the
// smallest term.
double ei_asymptotic(double x) {
    double sum = 1.0;
    double term = 1.0;
    for (int k = 1; k < 200; ++k) {
        const double next = term * k / x;
        if (next >= term) break;
        term = next;
        sum += term;
        if (term < kEps * sum) break;
    }
    return std::exp(x) / x * sum;
}

}  // namespace

double e1(double x) {
    if (!(x > 0.0)) throw std::domain_error("e1: requires x > 0");
    return x <= 1.0 ? e1_series(x) : e1_contfrac(x);
}

double ei(double x) {
    if (x == 0.0 || !std::isfinite(x)) throw std::domain_error("ei: requires finite x != 0");
    if (x < 0.0) return -e1(-x);
    return x <= 40.0 ? ei_series(x) : ei_asymptotic(x);
}

double e1_inverse(double z) {
    if (!(z > 0.0) || !std::isfinite(z)) throw std::domain_error("e1_inverse: requires z > 0");
    // Deep in the left tail E1(x) = -gamma - ln x + O(x), so the asymptotic
    // root exp(-z - gamma) is already exact to double precision; past
    // z ~ 744 the true root drops below the subnormal range and the result
    // underflows to 0, which is the correctly rounded answer. Bisection
    // cannot bracket there (ln 0), so return the asymptote directly.
    if (z >= 50.0) return std::exp(-z - kEulerGamma);
    // Initial guess from the small-x and large-x asymptotics of E1.
    double x0;
    if (z >= 0.2193839343955203) {  // E1(1): root lies in (0, 1]
        x0 = std::exp(-z - kEulerGamma);
    } else {
        const double l = std::log(1.0 / z);
        x0 = l > 1.0 ? l - std::log(l) : 1.0;
    }
    double lo = x0, hi = x0;
    while (e1(lo) < z) lo *= 0.5;          // E1 grows as x -> 0
    while (e1(hi) > z) hi *= 2.0;
    // Bisection on ln x for uniform relative accuracy across magnitudes.
    double tlo = std::log(lo), thi = std::log(hi);
    for (int i = 0; i < 200 && thi - tlo > 1e-13; ++i) {
        const double tm = 0.5 * (tlo + thi);
        (e1(std::exp(tm)) > z ? tlo : thi) = tm;
    }
    return std::exp(0.5 * (tlo + thi));
}

double ei_inverse(double y, ApproxMode mode) {
    if (mode == ApproxMode::Printed) {
        // Logistic asymptote; exact at y -> -inf, 0.5 at y = 0.
        const double q = std::exp(y);
        return q / (1.0 + q);
    }
    if (!(y < 0.0)) throw std::domain_error("ei_inverse: requires y < 0 on this branch");
    return -e1_inverse(-y);
}

double ei_inverse_principal(double y) {
    if (!std::isfinite(y)) throw std::domain_error("ei_inverse_principal: requires finite y");
    double lo, hi;
    if (y < 0.0) {
        lo = kTiny;
        hi = 0.5;  // past the root of Ei, where Ei > 0
        while (ei(lo) > y) lo *= 0.5;
        double tlo = std::log(lo), thi = std::log(hi);
        for (int i = 0; i < 200 && thi - tlo > 1e-13; ++i) {
            const double tm = 0.5 * (tlo + thi);
            (ei(std::exp(tm)) < y ? tlo : thi) = tm;
        }
        return std::exp(0.5 * (tlo + thi));
    }
    lo = 0.25;
    hi = 1.0;
    while (ei(hi) < y) {
        lo = hi;
        hi *= 2.0;
    }
    for (int i = 0; i < 200 && hi - lo > 1e-13 * hi; ++i) {
        const double m = 0.5 * (lo + hi);
        (ei(m) < y ? lo : hi) = m;
    }
    return 0.5 * (lo + hi);
}

double gamma_lower_inc(double x, double a) {
    if (!(a > 0.0) || x < 0.0) throw std::domain_error("gamma_lower_inc: requires a > 0, x >= 0");
    if (x == 0.0) return 0.0;
    const double lg = std::lgamma(a);
    if (x < a + 1.0) {
        // Series for the regularized P(a, x), scaled back at the end.
        double ap = a;
        double sum = 1.0 / a;
        double term = sum;
        for (int k = 0; k < 500; ++k) {
            ap += 1.0;
            term *= x / ap;
            sum += term;
            if (term < kEps * sum) break;
        }
        return sum * std::exp(-x + a * std::log(x));
    }
    // Continued fraction for the upper function Q(a, x), Lentz form.
    double b = x + 1.0 - a;
    double c = 1.0 / kTiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < 500; ++i) {
        const double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < kTiny) d = kTiny;
        c = b + an / c;
        if (std::abs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::abs(delta - 1.0) < kEps) break;
    }
    const double upper = std::exp(-x + a * std::log(x) - lg) * h;
    return std::exp(lg) * (1.0 - upper);
}

double e1_barry(double x) {
    if (!(x >= 1.0 && x <= 50.0))
        throw std::domain_error("e1_barry: valid only on [1, 50]");
    const double q = std::sqrt(31.0 / 26.0);
    const double b = 1.04207;
    const double xq = std::pow(x, q);
    const double h = 1.0 / (1.0 + x * std::sqrt(x)) + 0.46 * xq / (1.0 + 0.43 * xq);
    const double hb = h + b * x;
    const double beta = 1.0 - 1.0 / (hb * hb);
    const double k2 = kBarryK2;
    const double num = std::exp(-x) * std::log(k2 / x + k2 + (1.0 - k2) * beta);
    const double den = k2 + (1.0 - k2) * std::exp(-x / (1.0 - k2));
    return num / den;
}

double e1_asymptotic_smallx(double x, ApproxMode mode) {
    if (!(x > 0.0 && x < 1.0))
        throw std::domain_error("e1_asymptotic_smallx: valid only on (0, 1)");
    const double quad = mode == ApproxMode::Printed ? x * x / 8.0 : x * x / 4.0;
    return -kEulerGamma - std::log(x) + x - quad;
}

double geller_ng_i2(double x) {
    if (!(x > 0.0)) throw std::domain_error("geller_ng_i2: requires x > 0");
    return (2.0 / 7.0) * (e1(4.5 * x) - std::exp(-3.5 * x) * e1(x));
}

double geller_ng_i1(double x) {
    if (!(x > 0.0)) throw std::domain_error("geller_ng_i1: requires x > 0");
    const double c = 2.0 / 7.0;
    return c * c *
           (e1(4.5 * x) - (1.0 + 3.5 * x) * std::exp(-3.5 * x) * e1(x) +
            (7.0 / 9.0) * std::exp(-4.5 * x));
}

}  // namespace cellload
