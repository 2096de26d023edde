#include "delcode/analysis.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace delcode::analysis {

namespace {

std::size_t floor_ell(std::size_t n, double k, double alpha) {
    return static_cast<std::size_t>(std::floor(std::pow(static_cast<double>(n), alpha) / k * (1.0 + 1e-12)));
}

}  // namespace

long double lambert_w(long double x) {
    const long double e = std::numbers::e_v<long double>;
    const long double branch = -1.0L / e;
    if (std::isnan(x) || x < branch) throw ParameterError("lambert_w: argument below -1/e");
    if (x == 0.0L) return 0.0L;
    if (x == branch) return -1.0L;

    long double w;
    if (x >= e) {
        const long double l1 = std::log(x);
        w = l1 - std::log(l1);
    } else if (x < -0.25L) {
        // Series about the branch point.
        const long double q = std::sqrt(2.0L * (e * x + 1.0L));
        w = -1.0L + q - q * q / 3.0L;
    } else {
        w = std::log1p(x);
    }

    for (int it = 0; it < 100; ++it) {
        const long double ew = std::exp(w);
        const long double f = w * ew - x;
        const long double wp1 = w + 1.0L;
        if (wp1 == 0.0L) break;
        const long double step = f / (ew * wp1 - (w + 2.0L) * f / (2.0L * wp1));
        w -= step;
        if (std::fabs(step) <= 4.0L * std::numeric_limits<long double>::epsilon() * (1.0L + std::fabs(w)))
            break;
    }
    return w;
}

double delta_star(std::size_t n, double alpha, double p_n) {
    if (n < 1 || !(p_n > 0.0)) throw ParameterError("delta_star: need n >= 1 and p(n) > 0");
    const double l = 0.5 + (1.0 - alpha) * std::log(static_cast<double>(n)) + std::log(p_n);
    if (!(l > 0.0)) throw ParameterError("delta_star: ln(sqrt(e) n^(1-alpha) p(n)) must be positive");
    return static_cast<double>(2.0L * l / lambert_w(2.0L * std::numbers::e_v<long double> * l));
}

double delta_tail_matched(std::size_t n, double alpha, double p_n) {
    if (n < 1 || !(p_n > 0.0)) throw ParameterError("delta_tail_matched: need n >= 1 and p(n) > 0");
    const double m = (1.0 - alpha) * std::log(static_cast<double>(n)) + std::log(p_n);
    const double a = 2.0 * m - 1.0;
    if (!(a > 0.0)) throw ParameterError("delta_tail_matched: need n^(1-alpha) p(n) > sqrt(e)");
    return static_cast<double>(a / lambert_w(a / std::numbers::e));
}

double chernoff_block_tail(double delta) {
    if (!(delta >= 1.0)) throw ParameterError("chernoff_block_tail: delta must be >= 1");
    return std::exp(-0.5 * (delta * std::log(delta) - delta + 1.0));
}

double boundary_tail(std::size_t n, double k, double alpha, double delta) {
    return (2.0 * k + 1.0) * std::pow(static_cast<double>(n), 1.0 - alpha) * chernoff_block_tail(delta);
}

double pe_bound_boundary(std::size_t n, double k, double alpha, int delta, int t) {
    if (t < 1) throw ParameterError("pe_bound_boundary: t must be >= 1");
    return t * boundary_tail(n, k, alpha, delta);
}

Claim1 claim1_bounds(std::size_t n, double k, double alpha) {
    if (n < 2) throw ParameterError("claim1: n must be > 1");
    if (!(k > 0.0) || !(alpha > 0.0 && alpha <= 1.0)) throw ParameterError("claim1: need k > 0, alpha in (0, 1]");
    const double p = k / std::pow(static_cast<double>(n), alpha);
    if (!(p < 0.5)) throw ParameterError("claim1: p must be < 1/2");

    Claim1 c;
    c.ell = floor_ell(n, k, alpha);
    c.blocks = (n + c.ell - 1) / c.ell;
    c.scale = std::pow(static_cast<double>(n), 1.0 - alpha);
    const double b = static_cast<double>(c.blocks);
    c.blocks_lower = k * c.scale <= b * (1.0 + 1e-12);
    c.blocks_upper = b < (2.0 * k + 1.0) * c.scale;
    c.boundaries_lower = k * c.scale - 1.0 <= (b - 1.0) * (1.0 + 1e-12) + 1e-12;
    c.boundaries_upper = b - 1.0 < 2.0 * k * c.scale;
    return c;
}

BoundReport redundancy_bounds_cprime(const trace::TraceCodeParams& params) {
    const double scale = std::pow(static_cast<double>(params.n), 1.0 - params.alpha);
    const double w = 2.0 * params.delta - 1.0;
    BoundReport r;
    r.lower = (params.k * scale - 1.0) * w;
    r.upper = 2.0 * params.k * scale * w;
    r.r_d = static_cast<std::size_t>(2 * params.delta - 1) * (params.num_blocks() - 1);
    r.tag = "cprime-sandwich";
    return r;
}

double run_probability_factor(std::size_t ell, int delta) {
    return std::pow(2.0, -(std::sqrt(static_cast<double>(ell)) + 1.0 - delta));
}

}  // namespace delcode::analysis
