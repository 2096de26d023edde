#pragma once

#include <cstddef>
#include <string>

#include "delcode/trace_recon.hpp"

namespace delcode::analysis {

/// Principal branch of the Lambert W function: the w >= -1 with w e^w = x.
/// Halley iteration, seeded by ln x - ln ln x for x >= e. Throws
/// ParameterError for x < -1/e. Works in long double so that w e^w stays
/// within 1e-10 of x up to x ~ 1e6.
long double lambert_w(long double x);

/// Optimised detection parameter
///   2 L / W(2 e L),  L = ln(sqrt(e) n^(1 - alpha) p_n).
/// Callers take the ceiling for the integer code parameter. Requires L > 0.
double delta_star(std::size_t n, double alpha, double p_n);

/// The delta at which the per-trace tail (2k+1) n^(1-alpha) chernoff(delta)
/// equals exactly (2k+1)/p_n, i.e. the root of
///   delta ln delta - delta + 1 = 2 ln(n^(1-alpha) p_n).
/// Closed form (2M - 1) / W((2M - 1)/e) with M = ln(n^(1-alpha) p_n).
/// delta_star above solves delta ln delta + delta - 1 = 2M instead; the two
/// differ and this one is only reported for comparison.
double delta_tail_matched(std::size_t n, double alpha, double p_n);

/// Chernoff bound exp(-(delta ln delta - delta + 1)/2) on P(Y >= delta) for a
/// binomial Y with mean at most 1.
double chernoff_block_tail(double delta);

/// Per-trace bound on a boundary failure: (2k+1) n^(1-alpha) chernoff(delta).
double boundary_tail(std::size_t n, double k, double alpha, double delta);

/// Union bound over t traces: t (2k+1) n^(1-alpha) chernoff(delta).
double pe_bound_boundary(std::size_t n, double k, double alpha, int delta, int t);

struct Claim1 {
    std::size_t ell = 0;      // floor(n^alpha / k)
    std::size_t blocks = 0;   // ceil(n / ell)
    double scale = 0;         // n^(1 - alpha)
    bool blocks_lower = false;      // k n^(1-a) <= blocks
    bool blocks_upper = false;      // blocks < (2k+1) n^(1-a)
    bool boundaries_lower = false;  // k n^(1-a) - 1 <= blocks - 1
    bool boundaries_upper = false;  // blocks - 1 < 2k n^(1-a)

    bool holds() const noexcept { return blocks_lower && blocks_upper && boundaries_lower && boundaries_upper; }
};

/// Block count for ell = floor(1/p) and the four inequalities bracketing it.
/// Requires n > 1, k > 0 and p = k / n^alpha < 1/2.
Claim1 claim1_bounds(std::size_t n, double k, double alpha);

struct BoundReport {
    double lower = 0;
    double upper = 0;
    std::size_t r_d = 0;  // exact redundancy of the marker part
    std::string tag;
};

/// Redundancy sandwich for the trace code:
///   lower = (k n^(1-a) - 1)(2 delta - 1), upper = 2 k n^(1-a)(2 delta - 1),
///   r_d   = (2 delta - 1)(ceil(n / ell) - 1).
BoundReport redundancy_bounds_cprime(const trace::TraceCodeParams& params);

/// 2^-(sqrt(ell) + 1 - delta): the per-window factor bounding the chance of a
/// run longer than sqrt(ell) in a uniform marker codeword.
double run_probability_factor(std::size_t ell, int delta);

}  // namespace delcode::analysis
