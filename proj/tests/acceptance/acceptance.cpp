// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any
// criterion fails. Tolerances are fixed below.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "delcode/analysis.hpp"
#include "delcode/bma.hpp"
#include "delcode/channel.hpp"
#include "delcode/experiment.hpp"
#include "delcode/marker_code.hpp"
#include "delcode/trace_recon.hpp"
#include "delcode/verifier.hpp"
#include "oracles.hpp"

using namespace delcode;

namespace {

constexpr double kLambertResidual = 1e-10;
constexpr double kIdentityRelTol = 1e-9;
constexpr double kEpsilonTol = 1e-3;
constexpr double kSigmas = 3.0;
constexpr double kShapeSigmas = 2.0;
constexpr double kMarkerCeiling = 5e-3;
constexpr double kBaselineFloor = 1e-2;
constexpr std::size_t kSimRuns = 1000;
constexpr std::size_t kDeterminismRuns = 20;

struct Outcome {
    bool pass = true;
    std::string detail;
};

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

void fail(Outcome& o, const std::string& why) {
    o.pass = false;
    if (!o.detail.empty()) o.detail += "; ";
    o.detail += why;
}

void note(Outcome& o, const std::string& what) {
    if (!o.detail.empty()) o.detail += "; ";
    o.detail += what;
}

const CodeParams kSmall[] = {CodeParams::make(1, 3, 6), CodeParams::make(1, 3, 9), CodeParams::make(1, 4, 8),
                             CodeParams::make(2, 5, 10)};

Outcome worked_example() {
    Outcome o;
    const auto r = marker::decode_boundaries(BitString::parse("10010011100010100"), CodeParams::make(1, 5, 20));
    if (r.counts.counts != std::vector<int>{1, 0, 1, 1}) fail(o, "counts " + r.counts.str());
    if (r.starts != std::vector<std::size_t>{1, 5, 10, 14}) fail(o, "starts wrong");
    note(o, "counts " + r.counts.str());
    return o;
}

Outcome exhaustive_detectability() {
    Outcome o;
    std::size_t pairs = 0;
    for (const auto& p : kSmall) {
        const auto code = verify::enumerate_marker_code(p);
        const auto v = verify::detects_exhaustive(code, p);
        if (!v.ok) fail(o, fmt("D_%d(%zu,%zu) not detecting", p.delta, p.ell, p.n));
        for (const auto& x : code)
            for (const auto& d : verify::enumerate_patterns(p)) {
                ++pairs;
                if (marker::decode_boundaries(apply_deletions(x, d), p).counts != count_per_block(d, p).counts) {
                    fail(o, fmt("decoder wrong at D_%d(%zu,%zu)", p.delta, p.ell, p.n));
                    return o;
                }
            }
    }
    note(o, fmt("%zu (codeword, pattern) pairs", pairs));
    return o;
}

bool witness_valid(const verify::CollisionWitness& w, const CodeParams& p) {
    return apply_deletions(w.x1, w.d1) == w.y && apply_deletions(w.x2, w.d2) == w.y &&
           count_per_block(w.d1, p).counts == w.c1 && count_per_block(w.d2, p).counts == w.c2 && w.c1 != w.c2;
}

Outcome converse_witnesses() {
    Outcome o;
    const auto p = CodeParams::make(1, 3, 6);
    int violating = 0;
    for (const auto& s : oracle::all_strings(6)) {
        const auto x = BitString::parse(s);
        if (verify::check_boundary_conditions(x, p)) continue;
        ++violating;
        const std::vector<BitString> code{x};
        const auto v = verify::detects_exhaustive(code, p);
        if (v.ok || !v.witness || !witness_valid(*v.witness, p)) fail(o, "no valid witness for " + s);
    }
    std::vector<BitString> mixed = verify::enumerate_marker_code(p);
    for (const auto& x : verify::enumerate_marker_code(p)) mixed.push_back(marker::mirror(x, p));
    const auto v = verify::detects_exhaustive(mixed, p);
    if (v.ok || !v.witness || !witness_valid(*v.witness, p)) fail(o, "mixed-polarity union not refuted");
    note(o, fmt("%d violating words refuted", violating));
    if (v.witness) note(o, "union witness y=" + v.witness->y.str() + " " + v.witness->c1.str() + " vs " + v.witness->c2.str());
    if (v.ok) {
        // The union separates counts; only the block decoder is lost on mirrored words.
        std::size_t miscounts = 0, trials = 0;
        for (const auto& x : verify::enumerate_marker_code(p))
            for (const auto& d : verify::enumerate_patterns(p)) {
                const auto r = marker::decode_boundaries(apply_deletions(marker::mirror(x, p), d), p,
                                                         marker::DecodeMode::best_effort);
                ++trials;
                miscounts += r.counts != count_per_block(d, p).counts;
            }
        note(o, fmt("union detecting over %zu pairs; block decoder miscounts %zu of %zu mirrored cases",
                    v.pairs_checked, miscounts, trials));
    }
    return o;
}

Outcome redundancy_optimality() {
    Outcome o;
    for (const auto& p : kSmall) {
        std::size_t members = 0;
        for (const auto& s : oracle::all_strings(p.n)) members += marker::is_codeword(BitString::parse(s), p);
        const std::size_t expected = std::size_t{1} << (p.n - (2 * p.delta + 1) * (p.n / p.ell - 1));
        if (members != expected) fail(o, fmt("|D_%d(%zu,%zu)| = %zu", p.delta, p.ell, p.n, members));
    }
    int grid = 0;
    for (int d = 1; d <= 5 && grid < 50; ++d)
        for (std::size_t ell = 2 * d + 1; ell <= 2 * d + 5 && grid < 50; ++ell)
            for (std::size_t m : {2u, 3u, 5u}) {
                if (grid >= 50) break;
                const auto p = CodeParams::make(d, ell, m * ell);
                ++grid;
                if (marker::redundancy(p) != verify::lower_bound_bbd(p))
                    fail(o, fmt("redundancy mismatch at (%d,%zu,%zu)", d, ell, m * ell));
            }
    if (grid != 50) fail(o, fmt("grid has %d points", grid));
    note(o, fmt("4 code sizes, %d grid points", grid));
    return o;
}

Outcome epsilon_value() {
    Outcome o;
    const double e = verify::epsilon(1, 4);
    if (std::fabs(e - 0.415) > kEpsilonTol) fail(o, fmt("epsilon(1,4) = %.6f", e));
    note(o, fmt("epsilon(1,4) = %.6f", e));
    return o;
}

Outcome lambert_and_delta_star() {
    Outcome o;
    double worst = 0;
    for (int i = 0; i <= 90; ++i) {
        const long double x = std::pow(10.0L, -3.0L + i / 10.0L);
        const long double w = analysis::lambert_w(x);
        worst = std::max(worst, static_cast<double>(std::fabs(w * std::exp(w) - x)));
    }
    if (worst > kLambertResidual) fail(o, fmt("W residual %.3g", worst));
    note(o, fmt("max W residual %.2g", worst));

    const std::size_t n = 1000;
    const double alpha = 1.0, pn = 1000.0, k = 10.0;
    const double ds = analysis::delta_star(n, alpha, pn);
    const double l = 0.5 + (1 - alpha) * std::log(static_cast<double>(n)) + std::log(pn);
    const double ds_newton = 2 * l / oracle::newton_w(2 * std::numbers::e * l);
    if (std::fabs(ds - ds_newton) > 1e-9 || std::ceil(ds) != 6)
        fail(o, fmt("delta* = %.6f (oracle %.6f)", ds, ds_newton));
    note(o, fmt("delta* = %.4f, ceil %g", ds, std::ceil(ds)));

    const double target = (2 * k + 1) / pn;
    const double tail = analysis::boundary_tail(n, k, alpha, ds);
    const double rel = std::fabs(tail - target) / target;
    if (rel > kIdentityRelTol)
        fail(o, fmt("tail at delta* = %.6g vs (2k+1)/p(n) = %.6g (rel err %.3g); the tail-matching root is %.4f",
                    tail, target, rel, analysis::delta_tail_matched(n, alpha, pn)));
    return o;
}

Outcome channel_statistics() {
    Outcome o;
    const std::size_t n = 1000, ell = 100;
    const double p = 0.01;
    BitString x;
    for (std::size_t i = 0; i < n; ++i) x.push_back(static_cast<std::uint8_t>(i % 3 == 0));
    const int traces = 10000;
    const auto set = gen_traces(x, p, traces, 77);
    double deleted = 0, s1 = 0, s2 = 0, samples = 0;
    for (const auto& d : set.deleted) {
        deleted += static_cast<double>(d.size());
        std::vector<int> per(n / ell, 0);
        for (auto pos : d.positions()) ++per[(pos - 1) / ell];
        for (int c : per) {
            s1 += c;
            s2 += c * c;
            samples += 1;
        }
    }
    const double bits = static_cast<double>(n) * traces;
    const double rate = deleted / bits;
    const double z_rate = (rate - p) / std::sqrt(p * (1 - p) / bits);
    const double mean = s1 / samples, var = s2 / samples - mean * mean;
    const double mu = ell * p, sigma2 = ell * p * (1 - p);
    const double z_mean = (mean - mu) / std::sqrt(sigma2 / samples);
    const double mu4 = sigma2 * (1 + 3 * (ell - 2) * p * (1 - p));
    const double z_var = (var - sigma2) / std::sqrt((mu4 - sigma2 * sigma2) / samples);
    if (std::fabs(z_rate) > kSigmas) fail(o, fmt("rate z = %.2f", z_rate));
    if (std::fabs(z_mean) > kSigmas) fail(o, fmt("block mean z = %.2f", z_mean));
    if (std::fabs(z_var) > kSigmas) fail(o, fmt("block variance z = %.2f", z_var));
    for (std::size_t i = 0; i < set.t(); ++i)
        if (!is_subsequence(set.traces[i], x)) {
            fail(o, "trace is not a subsequence");
            break;
        }
    note(o, fmt("rate %.5f (z %.2f), block mean z %.2f, variance z %.2f", rate, z_rate, z_mean, z_var));
    return o;
}

Outcome bma_contracts() {
    Outcome o;
    const auto b = BitString::parse("1101001011");
    TraceMatrix same(b.size());
    for (int i = 0; i < 5; ++i) same.add_segment(b);
    if (bma(same) != b) fail(o, "unanimity");

    TraceMatrix hand(4);
    hand.add_segment(BitString::parse("1010"));
    hand.add_segment(BitString::parse("1010"));
    hand.add_segment(BitString::parse("010"));
    const auto out = bma(hand);
    if (out != BitString::parse("1010")) fail(o, "hand example gave " + out.str());
    if (bma(hand) != out) fail(o, "determinism");

    TraceMatrix prefixes(b.size());
    prefixes.add_segment(b);
    prefixes.add_segment(b.substr(0, 4));
    prefixes.add_segment(b.substr(0, 7));
    if (bma(prefixes) != b) fail(o, "unanimity over prefixes");

    TraceMatrix pads(6);
    pads.add_padded_row(std::vector<std::uint8_t>(6, kPad));
    if (bma(pads) != BitString(6, 0)) fail(o, "all-pad rows");

    TraceMatrix ragged(8);
    ragged.add_segment(BitString::parse("1"));
    ragged.add_segment(BitString::parse("0110111011"));
    if (bma(ragged).size() != 8) fail(o, "output length");
    return o;
}

Outcome pipeline_exactness() {
    Outcome o;
    for (const auto& p : {trace::TraceCodeParams::make(1000, 10, 1.0, 3), trace::TraceCodeParams::make(1000, 10, 0.7, 3),
                          trace::TraceCodeParams::make(994, 14, 1.0, 3)}) {
        for (std::uint64_t seed = 0; seed < 5; ++seed) {
            const auto x = trace::sample_codeword(p, seed);
            const auto ts = gen_traces(x, 0.0, 4, seed);
            if (trace::reconstruct(ts, p).x_hat != x) fail(o, fmt("zero-deletion set failed at n=%zu", p.n));
        }
    }
    const auto p = trace::TraceCodeParams::make(10, 2, 1.0, 2);
    const auto x = BitString::parse("10101 00101");
    const std::vector<BitString> traces{apply_deletions(x, DeletionPattern({2})),
                                        apply_deletions(x, DeletionPattern({8})), x};
    const auto rep = trace::reconstruct(traces, p);
    if (rep.x_hat != x) fail(o, "two-halves instance gave " + rep.x_hat.str());
    return o;
}

sim::ExperimentConfig base_cfg(sim::Scheme s, std::size_t n, double alpha, int t) {
    sim::ExperimentConfig c;
    c.scheme = s;
    c.n = n;
    c.k = 10;
    c.alpha = alpha;
    c.delta = 3;
    c.t = t;
    c.runs = kSimRuns;
    c.seed = 2024;
    return c;
}

std::string read_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw IoError("cannot open " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

Outcome simulation() {
    Outcome o;
    // (a) quoted n = 3000 numbers.
    const auto m = sim::run_experiment(base_cfg(sim::Scheme::marker, 3000, 0.8, 6));
    const auto r = sim::run_experiment(base_cfg(sim::Scheme::rll_bma, 3000, 0.8, 6));
    if (m.mean_norm_edit > kMarkerCeiling) fail(o, fmt("(a) marker %.3g > %.0e", m.mean_norm_edit, kMarkerCeiling));
    if (r.mean_norm_edit < kBaselineFloor) fail(o, fmt("(a) rll-bma %.3g < %.0e", r.mean_norm_edit, kBaselineFloor));
    note(o, fmt("(a) marker %.3g, rll-bma %.3g", m.mean_norm_edit, r.mean_norm_edit));

    // (b) non-increasing in t.
    std::vector<sim::ExperimentResult> sweep;
    for (int t = 2; t <= 8; ++t) sweep.push_back(sim::run_experiment(base_cfg(sim::Scheme::marker, 1000, 1.0, t)));
    std::string curve = "(b)";
    for (std::size_t i = 0; i < sweep.size(); ++i) {
        curve += fmt(" %.3g", sweep[i].mean_norm_edit);
        if (i == 0) continue;
        const double se = std::hypot(sweep[i].stderr_norm_edit, sweep[i - 1].stderr_norm_edit);
        if (sweep[i].mean_norm_edit > sweep[i - 1].mean_norm_edit + kShapeSigmas * se)
            fail(o, fmt("(b) increase at t=%d", sweep[i].cfg.t));
    }
    note(o, curve);

    // (c) every fig1 point: marker below rll-bma by 2 sigma.
    int points = 0, worst_t = 0;
    double worst_gap = 1e9, worst_alpha = 0;
    for (auto c : sim::parse_config(read_file(std::string(DELCODE_PRESET_DIR) + "/fig1.json"))) {
        if (c.scheme != sim::Scheme::marker) continue;
        c.runs = kSimRuns;
        auto b = c;
        b.scheme = sim::Scheme::rll_bma;
        const auto mr = sim::run_experiment(c);
        const auto br = sim::run_experiment(b);
        const double se = std::hypot(mr.stderr_norm_edit, br.stderr_norm_edit);
        const double gap = se > 0 ? (br.mean_norm_edit - mr.mean_norm_edit) / se : (br.mean_norm_edit > mr.mean_norm_edit ? 1e9 : 0);
        ++points;
        if (gap < worst_gap) {
            worst_gap = gap;
            worst_alpha = c.alpha;
            worst_t = c.t;
        }
        if (gap < kShapeSigmas) fail(o, fmt("(c) alpha=%g t=%d separation %.2f sigma", c.alpha, c.t, gap));
    }
    if (points == 0) fail(o, "(c) no fig1 points");
    note(o, fmt("(c) %d points, min separation %.1f sigma at alpha=%g t=%d", points, worst_gap, worst_alpha, worst_t));
    return o;
}

Outcome analytic_bounds() {
    Outcome o;
    auto c = base_cfg(sim::Scheme::marker, 1000, 1.0, 3);
    c.delta = 6;
    c.runs = 10000;
    const auto r = sim::run_experiment(c);
    const double bound = analysis::pe_bound_boundary(1000, 10, 1.0, 6, 3);
    const double q = r.boundary_fail_rate;
    const double se = std::sqrt(std::max(q * (1 - q), 1.0 / c.runs) / c.runs);
    if (q > bound + kSigmas * se) fail(o, fmt("boundary failure %.4g > bound %.4g", q, bound));
    note(o, fmt("boundary failure %.4g, bound %.4g", q, bound));

    int grid = 0;
    for (double n = 100; n <= 100000; n *= 1.15)
        for (double k : {2.0, 10.0, 14.0})
            for (double alpha : {0.6, 0.8, 1.0}) {
                const auto N = static_cast<std::size_t>(n);
                if (k / std::pow(static_cast<double>(N), alpha) >= 0.5) continue;
                ++grid;
                if (!analysis::claim1_bounds(N, k, alpha).holds()) fail(o, fmt("claim fails at n=%zu k=%g a=%g", N, k, alpha));
            }
    note(o, fmt("block-count bounds on %d grid points", grid));
    return o;
}

Outcome determinism() {
    Outcome o;
    for (const char* name : {"fig1", "fig2", "fig3"}) {
        auto cfgs = sim::parse_config(read_file(std::string(DELCODE_PRESET_DIR) + "/" + name + ".json"));
        std::vector<sim::ExperimentResult> a, b, c;
        for (auto& cfg : cfgs) {
            cfg.runs = kDeterminismRuns;
            a.push_back(sim::run_experiment(cfg, 1));
            b.push_back(sim::run_experiment(cfg, 4));
            c.push_back(sim::run_experiment(cfg, 1));
        }
        for (auto* v : {&a, &b, &c})
            for (auto& res : *v) res.wall_ms = 0;
        if (sim::to_csv(a) != sim::to_csv(b) || sim::to_csv(a) != sim::to_csv(c))
            fail(o, std::string(name) + " differs between executions");
        note(o, fmt("%s: %zu configs", name, cfgs.size()));
    }
    note(o, fmt("%zu runs per config", kDeterminismRuns));
    return o;
}

}  // namespace

int main() {
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
        {"worked-example decode", worked_example},
        {"exhaustive detectability", exhaustive_detectability},
        {"converse witnesses", converse_witnesses},
        {"redundancy optimality", redundancy_optimality},
        {"epsilon formula", epsilon_value},
        {"lambert w and delta*", lambert_and_delta_star},
        {"channel statistics", channel_statistics},
        {"bma contracts", bma_contracts},
        {"pipeline exactness", pipeline_exactness},
        {"simulation reproduction", simulation},
        {"analytic-bound consistency", analytic_bounds},
        {"determinism", determinism},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail = std::string("exception: ") + e.what();
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        failed += !o.pass;
        std::cout << (o.pass ? "PASS" : "FAIL") << " [" << i + 1 << "] " << criteria[i].first << " (" << fmt("%.1fs", secs)
                  << "): " << o.detail << std::endl;
    }
    std::cout << criteria.size() - failed << "/" << criteria.size() << " criteria passed" << std::endl;
    return failed == 0 ? 0 : 1;
}
