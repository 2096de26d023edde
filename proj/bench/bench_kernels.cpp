// Parallel kernels against their serial references.

#include <benchmark/benchmark.h>

#include "delcode/channel.hpp"
#include "delcode/experiment.hpp"
#include "delcode/levenshtein.hpp"
#include "delcode/trace_recon.hpp"
#include "delcode/verifier.hpp"

namespace {

using namespace delcode;

sim::ExperimentConfig sim_config() {
    sim::ExperimentConfig c;
    c.n = 1000;
    c.k = 10;
    c.alpha = 1.0;
    c.delta = 3;
    c.t = 6;
    c.runs = 50;
    c.seed = 11;
    return c;
}

void BM_experiment_parallel(benchmark::State& st) {
    const auto c = sim_config();
    for (auto _ : st) benchmark::DoNotOptimize(sim::run_experiment(c).mean_norm_edit);
}
void BM_experiment_serial(benchmark::State& st) {
    const auto c = sim_config();
    for (auto _ : st) benchmark::DoNotOptimize(sim::run_experiment_serial(c).mean_norm_edit);
}

const CodeParams& detect_params() {
    static const auto p = CodeParams::make(2, 6, 18);
    return p;
}
const std::vector<BitString>& detect_code() {
    static const auto code = verify::enumerate_marker_code(detect_params());
    return code;
}

void BM_detects_parallel(benchmark::State& st) {
    for (auto _ : st) benchmark::DoNotOptimize(verify::detects_exhaustive(detect_code(), detect_params()).ok);
}
void BM_detects_serial(benchmark::State& st) {
    for (auto _ : st)
        benchmark::DoNotOptimize(verify::detects_exhaustive_serial(detect_code(), detect_params()).ok);
}

struct ReconInput {
    trace::TraceCodeParams params;
    TraceSet traces;
};
const ReconInput& recon_input() {
    static const ReconInput in = [] {
        ReconInput r{trace::TraceCodeParams::make(3000, 10, 0.8, 3), {}};
        const auto x = trace::sample_codeword(r.params, 5);
        r.traces = gen_traces(x, r.params.p, 10, 6);
        return r;
    }();
    return in;
}

void BM_reconstruct_parallel(benchmark::State& st) {
    const auto& in = recon_input();
    for (auto _ : st) benchmark::DoNotOptimize(trace::reconstruct(in.traces.traces, in.params).x_hat.size());
}
void BM_reconstruct_serial(benchmark::State& st) {
    const auto& in = recon_input();
    for (auto _ : st)
        benchmark::DoNotOptimize(trace::reconstruct_serial(in.traces.traces, in.params).x_hat.size());
}

std::pair<BitString, BitString> edit_pair(std::size_t n) {
    auto s = make_stream(9);
    std::vector<std::uint8_t> a(n);
    for (auto& b : a) b = static_cast<std::uint8_t>(s() >> 63);
    const BitString x(a);
    return {x, transmit(x, 0.02, s)};
}

void BM_levenshtein_bitparallel(benchmark::State& st) {
    const auto [a, b] = edit_pair(static_cast<std::size_t>(st.range(0)));
    for (auto _ : st) benchmark::DoNotOptimize(levenshtein(a, b));
}
void BM_levenshtein_dp(benchmark::State& st) {
    const auto [a, b] = edit_pair(static_cast<std::size_t>(st.range(0)));
    for (auto _ : st) benchmark::DoNotOptimize(levenshtein_dp(a, b));
}

}  // namespace

BENCHMARK(BM_experiment_parallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_experiment_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_detects_parallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_detects_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_reconstruct_parallel)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_reconstruct_serial)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_levenshtein_bitparallel)->Arg(1000)->Arg(5000)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_levenshtein_dp)->Arg(1000)->Arg(5000)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
