#include "cellload/analytic.hpp"

#include "cellload/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cellload {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Gamma(7/2, 7/2) normalization (7/2)^{7/2} / Gamma(7/2) = (343/15) sqrt(7/(2 pi)).
const double kAreaPdfC = (343.0 / 15.0) * std::sqrt(7.0 / (2.0 * kPi));
const double kGamma35 = std::tgamma(3.5);

double xi_eff(const LoadModel& m) { return std::pow(xi(m.net), 2.0 / m.net.alpha); }

void require_alpha2(const LoadModel& m, const char* op) {
    if (m.net.alpha != 2.0) {
        throw std::invalid_argument(std::string(op) +
                                    ": closed-form route requires path-loss exponent alpha = 2");
    }
}

// Exponential factor of the gamma area density evaluated at A = pi xi_eff
// e^{-t}, with c = lambda * xi_eff * pi; the polynomial factor and the
// Jacobian combine into the e^{-7t/2} damping of the mean-load integrand.
// F2 rises from e^{-7c/2} to 1 like a smoothed step centred near ln(7c/2),
// which is what the percentile ramp of the closed form imitates.
double f2_ramp_target(double t, double c) { return std::exp(-3.5 * c * std::exp(-t)); }

}  // namespace

double area_pdf_reduced(double x) {
    if (!(x >= 0.0)) throw std::invalid_argument("area_pdf_reduced: reduced area must be >= 0");
    if (x == 0.0) return 0.0;
    return kAreaPdfC * std::pow(x, 2.5) * std::exp(-3.5 * x);
}

double area_cdf(double area_m2, double lambda_bs) {
    if (!(lambda_bs > 0.0)) throw std::invalid_argument("area_cdf: lambda_bs must be > 0");
    if (!(area_m2 > 0.0)) return 0.0;
    double x = 3.5 * lambda_bs * area_m2;
    if (!std::isfinite(x)) return 1.0;
    return gamma_lower_inc(x, 3.5) / kGamma35;
}

double k_prime(const LoadModel& m) {
    m.validate();
    double w = traffic_density(m.traffic);
    double a = m.net.alpha;
    double b = m.net.bandwidth_hz;
    if (m.constant_mode == ConstantMode::Printed) {
        double x = xi(m.net);
        return 4.0 * w * kPi * std::log(2.0) * std::pow(x, 1.0 + 2.0 / a) /
               (a * a * b * m.net.lambda_bs);
    }
    return 2.0 * kPi * w * std::log(2.0) * xi_eff(m) / (a * b);
}

double k1_alpha2(const LoadModel& m) {
    m.validate();
    require_alpha2(m, "k1_alpha2");
    double w = traffic_density(m.traffic);
    double num = w * kPi * std::log(2.0) * xi(m.net) / m.net.bandwidth_hz;
    if (m.constant_mode == ConstantMode::Printed) return num / m.net.lambda_bs;
    return num;
}

double chi2_constant(const LoadModel& m) {
    m.validate();
    double lam = m.net.lambda_bs;
    if (m.constant_mode == ConstantMode::Printed) {
        // Printed alpha = 2 prefactor; kept verbatim, including the missing
        // area-law normalization and the extra 1/lambda.
        double w = traffic_density(m.traffic);
        double x = xi(m.net);
        return (w * kPi * std::log(2.0) * x / (lam * m.net.bandwidth_hz)) *
               std::pow(x * kPi * lam, 3.5);
    }
    return k_prime(m) * kAreaPdfC * std::pow(lam * xi_eff(m) * kPi, 3.5);
}

double load_of_area(double area_m2, const LoadModel& m) {
    m.validate();
    if (!(area_m2 > 0.0) || !std::isfinite(area_m2)) {
        throw std::invalid_argument("load_of_area: area must be positive and finite");
    }
    double bound = kPi * xi_eff(m);
    if (area_m2 >= bound) {
        throw HighSnrError(
            "load_of_area: area reaches the high-SNR validity boundary pi * xi^(2/alpha); "
            "the edge rate would be zero or negative");
    }
    if (traffic_density(m.traffic) == 0.0) return 0.0;
    return k_prime(m) * e1(std::log(bound / area_m2));
}

double load_cdf(double load, const LoadModel& m, ApproxMode mode) {
    m.validate();
    if (!(load >= 0.0)) throw std::invalid_argument("load_cdf: load level must be >= 0");

    if (mode == ApproxMode::Printed) {
        require_alpha2(m, "load_cdf(Printed)");
        // Printed logistic form, reproduced verbatim: F_A(xi pi (1 + q) / q)
        // with q = e^{-l / K1}. Note it does not vanish at l = 0.
        double q = std::exp(-load / k1_alpha2(m));
        if (!(q > 0.0)) return 1.0;
        double a_star = xi(m.net) * kPi * (1.0 + q) / q;
        if (!std::isfinite(a_star)) return 1.0;
        return area_cdf(a_star, m.net.lambda_bs);
    }

    if (load == 0.0) return 0.0;
    double kp = k_prime(m);
    if (kp == 0.0) return 1.0;  // zero traffic: every cell has zero load
    double u_star = e1_inverse(load / kp);
    double a_star = kPi * xi_eff(m) * std::exp(-u_star);
    return area_cdf(a_star, m.net.lambda_bs);
}

double stable_fraction(const LoadModel& m, ApproxMode mode) { return load_cdf(1.0, m, mode); }

double coverage_probability(double t, const LoadModel& m) {
    m.validate();
    if (!(t >= 0.0)) throw std::invalid_argument("coverage_probability: threshold must be >= 0");
    if (t == 0.0) return 1.0;
    double c = m.net.lambda_bs * kPi * xi(m.net);
    if (m.net.alpha == 2.0) return c / (c + t);
    // P(xi h r^-alpha > t), h ~ Exp(1), nearest-station distance law; with
    // v = lambda pi r^2 the integral is smooth and exponentially damped.
    double x = xi(m.net);
    double lp = m.net.lambda_bs * kPi;
    double half_alpha = m.net.alpha / 2.0;
    QuadOptions opts;
    opts.rel_tol = m.quad_rel_tol;
    opts.abs_tol = 1e-300;
    return integrate_to_inf(
        [&](double v) { return std::exp(-v - (t / x) * std::pow(v / lp, half_alpha)); }, 0.0,
        opts);
}

double mean_load_mc_baseline(const LoadModel& m) {
    m.validate();
    double w = traffic_density(m.traffic);
    if (w == 0.0) return 0.0;

    // Mean area 1/lambda times the expected inverse rate of the typical user,
    // g(T) = w ln2 / (B lambda ln(1+T)). Rayleigh fading makes E[g] diverge
    // at T -> 0, so users below the SNR floor are excluded (outage reading of
    // truncated Shannon). Integrating by parts against the coverage curve:
    //   E[g(T); T >= Tmin] = g(Tmin) Pc(Tmin) + int_Tmin^inf g'(T) Pc(T) dT.
    double t_min = db_to_linear(m.snr_floor_db);
    double scale = w * std::log(2.0) / (m.net.bandwidth_hz * m.net.lambda_bs);
    auto g = [&](double t) { return scale / std::log1p(t); };

    QuadOptions opts;
    opts.rel_tol = m.quad_rel_tol_nested;
    opts.abs_tol = 1e-300;
    double c = m.net.lambda_bs * kPi * xi(m.net);
    bool closed_cov = (m.net.alpha == 2.0);
    auto cov = [&](double t) { return closed_cov ? c / (c + t) : coverage_probability(t, m); };

    double tail = integrate_to_inf(
        [&](double t) {
            double l1p = std::log1p(t);
            return cov(t) / ((1.0 + t) * l1p * l1p);
        },
        t_min, opts);
    return g(t_min) * cov(t_min) - scale * tail;
}

double ei_mean_load(const LoadModel& m, ApproxMode mode) {
    m.validate();
    require_alpha2(m, "ei_mean_load");
    if (traffic_density(m.traffic) == 0.0) return 0.0;

    double c = m.net.lambda_bs * xi(m.net) * kPi;
    auto f1 = [&](double t) {
        if (mode == ApproxMode::Reference) return e1(t);
        if (t < 1.0) return e1_asymptotic_smallx(t, ApproxMode::Printed);
        if (t <= 50.0) return e1_barry(t);
        return e1(t);  // beyond the approximant's stated range; contribution ~e^{-225}
    };
    auto integrand = [&](double t) { return f1(t) * std::exp(-3.5 * t) * f2_ramp_target(t, c); };

    // The integrand's mass sits between the ramp region ln(3.5 c) and the
    // e^{-3.5 t} decay; beyond t_hi the remainder is < e^{-4.5 t_hi}.
    double t_hi = 60.0 + std::max(0.0, std::log(3.5 * c));
    QuadOptions opts;
    opts.rel_tol = m.quad_rel_tol;
    opts.abs_tol = 1e-300;
    return chi2_constant(m) * integrate(integrand, 0.0, t_hi, opts);
}

RampApprox ramp_approx(const LoadModel& m) {
    m.validate();
    require_alpha2(m, "ramp_approx");
    double c = m.net.lambda_bs * xi(m.net) * kPi;
    RampApprox r;
    // F2(t1) = 0.1, F2(t2) = 0.9 for F2(t) = exp(-(7c/2) e^{-t}).
    r.t1 = std::log(3.5 * c / std::log(10.0));
    r.t2 = std::log(3.5 * c / std::log(10.0 / 9.0));
    if (!(r.t1 > 0.0)) {
        throw std::domain_error(
            "ramp_approx: lower ramp point t1 <= 0; the closed form needs "
            "lambda * xi * pi > (2/7) ln 10");
    }
    r.y1 = (0.9 * r.t1 - 0.1 * r.t2) / (r.t1 - r.t2);
    return r;
}

double cf_mean_load(const LoadModel& m) {
    m.validate();
    require_alpha2(m, "cf_mean_load");
    if (traffic_density(m.traffic) == 0.0) return 0.0;
    RampApprox r = ramp_approx(m);
    // Printed antiderivative combination, kept verbatim (the ramp slope that
    // a full expansion would carry is absent; the resulting bias is measured
    // against the quadrature route, not patched).
    double val = geller_ng_i1(r.t2) - geller_ng_i1(r.t1) + (r.y1 - 1.0) * geller_ng_i2(r.t2) -
                 r.y1 * geller_ng_i2(r.t1);
    return chi2_constant(m) * val;
}

DynThroughput dyn_throughput(double rho_bar, const LoadModel& m) {
    m.validate();
    if (!(rho_bar > 0.0 && rho_bar < 1.0)) {
        throw std::domain_error(
            "dyn_throughput: mean load must lie in (0, 1); at or above 1 the "
            "processor-sharing cell is unstable and the stationary throughput is undefined");
    }
    DynThroughput out;
    out.mean_users = rho_bar / (1.0 - rho_bar);
    out.throughput_bits_s =
        traffic_density(m.traffic) * (1.0 - rho_bar) / (rho_bar * m.net.lambda_bs);
    return out;
}

}  // namespace cellload
