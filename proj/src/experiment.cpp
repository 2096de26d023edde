#include "delcode/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>

#include <json.hpp>
#include <omp.h>

#include "delcode/bma.hpp"
#include "delcode/channel.hpp"
#include "delcode/constrained.hpp"
#include "delcode/levenshtein.hpp"
#include "delcode/trace_recon.hpp"

namespace delcode::sim {

std::string to_string(Scheme s) { return s == Scheme::marker ? "marker" : "rll-bma"; }

Scheme parse_scheme(std::string_view name) {
    if (name == "marker") return Scheme::marker;
    if (name == "rll-bma") return Scheme::rll_bma;
    throw ParameterError("unknown scheme '" + std::string(name) + "' (expected marker or rll-bma)");
}

namespace {

std::size_t isqrt(std::size_t v) {
    auto r = static_cast<std::size_t>(std::sqrt(static_cast<double>(v)));
    while (r * r > v) --r;
    while ((r + 1) * (r + 1) <= v) ++r;
    return r;
}

// Everything a run needs that does not depend on r.
struct Setup {
    ExperimentConfig cfg;
    double p = 0;
    std::optional<trace::TraceCodeParams> code;  // marker scheme only
    std::optional<ConstrainedSampler> sampler;
};

Setup prepare(const ExperimentConfig& cfg) {
    validate(cfg);
    Setup s{cfg, 0, std::nullopt, std::nullopt};
    if (cfg.scheme == Scheme::marker) {
        s.code = trace::TraceCodeParams::make(cfg.n, cfg.k, cfg.alpha, cfg.delta);
        s.p = s.code->p;
        s.sampler.emplace(trace::make_codeword_sampler(*s.code));
    } else {
        s.p = ChannelParams::make(cfg.k, cfg.alpha, cfg.n).p;
        s.sampler.emplace(std::vector<std::int8_t>(cfg.n, -1), isqrt(cfg.n));
    }
    if (cfg.p_override) s.p = *cfg.p_override;
    return s;
}

RunOutcome run_one(const Setup& s, std::size_t r) {
    const auto& cfg = s.cfg;
    const std::uint64_t run_seed = substream(cfg.seed, r);
    auto cw_stream = make_stream(substream(run_seed, 0));
    const BitString x = s.sampler->sample(cw_stream);
    const TraceSet traces = gen_traces(x, s.p, cfg.t, substream(run_seed, 1));

    RunOutcome out;
    BitString x_hat;
    if (cfg.scheme == Scheme::marker) {
        trace::ReconstructOptions opt;
        opt.zero_del_shortcut = cfg.zero_del_shortcut;
        const auto rep = trace::reconstruct_serial(traces.traces, *s.code, opt);
        for (std::size_t i = 0; i < traces.t() && !out.boundary_fail; ++i) {
            const auto truth = count_per_block(traces.deleted[i], s.code->detector);
            out.boundary_fail = truth.counts != rep.boundaries[i].counts;
        }
        x_hat = rep.x_hat;
    } else {
        TraceMatrix m(cfg.n);
        for (const auto& y : traces.traces) m.add_segment(y);
        x_hat = bma(m);
    }
    out.exact = x_hat == x;
    out.norm_edit = static_cast<double>(levenshtein(x, x_hat)) / static_cast<double>(cfg.n);
    return out;
}

ExperimentResult aggregate(const ExperimentConfig& cfg, const std::vector<RunOutcome>& outcomes, double wall_ms) {
    ExperimentResult res;
    res.cfg = cfg;
    res.wall_ms = wall_ms;
    const auto runs = static_cast<double>(outcomes.size());
    double sum = 0, sq = 0, wrong = 0, fails = 0;
    for (const auto& o : outcomes) {
        sum += o.norm_edit;
        sq += o.norm_edit * o.norm_edit;
        wrong += o.exact ? 0 : 1;
        fails += o.boundary_fail ? 1 : 0;
    }
    res.mean_norm_edit = sum / runs;
    if (outcomes.size() > 1) {
        const double var = std::max(0.0, (sq - sum * sum / runs) / (runs - 1));
        res.stderr_norm_edit = std::sqrt(var / runs);
    }
    res.p_e = wrong / runs;
    res.boundary_fail_rate = fails / runs;
    return res;
}

double elapsed_ms(std::chrono::steady_clock::time_point since) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - since).count();
}

}  // namespace

void validate(const ExperimentConfig& cfg) {
    if (cfg.runs < 1) throw ParameterError("config: runs must be >= 1");
    if (cfg.t < 1) throw ParameterError("config: t must be >= 1");
    if (cfg.p_override && !(*cfg.p_override >= 0.0 && *cfg.p_override < 1.0))
        throw ParameterError("config: p_override must lie in [0, 1)");
    if (cfg.scheme == Scheme::marker)
        (void)trace::TraceCodeParams::make(cfg.n, cfg.k, cfg.alpha, cfg.delta);
    else
        (void)ChannelParams::make(cfg.k, cfg.alpha, cfg.n);
}

RunOutcome run_once(const ExperimentConfig& cfg, std::size_t r) { return run_one(prepare(cfg), r); }

ExperimentResult run_experiment(const ExperimentConfig& cfg, int jobs) {
    const auto start = std::chrono::steady_clock::now();
    const Setup s = prepare(cfg);
    std::vector<RunOutcome> outcomes(cfg.runs);
    const int threads = jobs > 0 ? jobs : omp_get_max_threads();
    const auto runs = static_cast<long long>(cfg.runs);
#pragma omp parallel for schedule(dynamic, 8) num_threads(threads)
    for (long long r = 0; r < runs; ++r)
        outcomes[static_cast<std::size_t>(r)] = run_one(s, static_cast<std::size_t>(r));
    return aggregate(cfg, outcomes, elapsed_ms(start));
}

ExperimentResult run_experiment_serial(const ExperimentConfig& cfg) {
    const auto start = std::chrono::steady_clock::now();
    const Setup s = prepare(cfg);
    std::vector<RunOutcome> outcomes;
    outcomes.reserve(cfg.runs);
    for (std::size_t r = 0; r < cfg.runs; ++r) outcomes.push_back(run_one(s, r));
    return aggregate(cfg, outcomes, elapsed_ms(start));
}

namespace {

using nlohmann::json;

std::vector<json> as_list(const json& v) {
    if (v.is_array()) {
        if (v.empty()) throw ParameterError("config: empty list");
        return std::vector<json>(v.begin(), v.end());
    }
    return {v};
}

template <class T>
T get_as(const json& v, const char* field) {
    try {
        return v.get<T>();
    } catch (const json::exception&) {
        throw ParameterError(std::string("config: bad value for '") + field + "'");
    }
}

std::size_t get_count(const json& v, const char* field) {
    if (!v.is_number_integer() || v.get<long long>() < 0)
        throw ParameterError(std::string("config: '") + field + "' must be a non-negative integer");
    return v.get<std::size_t>();
}

void expand(const json& node, std::vector<ExperimentConfig>& out) {
    static const std::map<std::string, int> known = {
        {"scheme", 0}, {"schemes", 0}, {"n", 0},    {"k", 0},          {"alpha", 0},
        {"delta", 0},  {"t", 0},       {"runs", 0}, {"seed", 0},       {"p_override", 0},
        {"zero_del_shortcut", 0},      {"series", 0}, {"description", 0}};
    for (const auto& [key, _] : node.items())
        if (!known.contains(key)) throw ParameterError("config: unknown field '" + key + "'");

    ExperimentConfig base;
    auto field = [&](const char* name) -> std::vector<json> {
        return node.contains(name) ? as_list(node[name]) : std::vector<json>{};
    };
    if (node.contains("runs")) base.runs = get_count(node["runs"], "runs");
    if (node.contains("seed")) base.seed = get_as<std::uint64_t>(node["seed"], "seed");
    if (node.contains("p_override")) base.p_override = get_as<double>(node["p_override"], "p_override");
    if (node.contains("zero_del_shortcut"))
        base.zero_del_shortcut = get_as<bool>(node["zero_del_shortcut"], "zero_del_shortcut");

    std::vector<json> schemes = field(node.contains("schemes") ? "schemes" : "scheme");
    if (schemes.empty()) schemes = {json(to_string(base.scheme))};
    auto or_default = [](std::vector<json> v, json d) { return v.empty() ? std::vector<json>{d} : v; };
    const auto ns = or_default(field("n"), json(base.n));
    const auto ks = or_default(field("k"), json(base.k));
    const auto as = or_default(field("alpha"), json(base.alpha));
    const auto ds = or_default(field("delta"), json(base.delta));
    const auto ts = or_default(field("t"), json(base.t));

    for (const auto& sc : schemes)
        for (const auto& n : ns)
            for (const auto& k : ks)
                for (const auto& a : as)
                    for (const auto& d : ds)
                        for (const auto& t : ts) {
                            ExperimentConfig c = base;
                            c.scheme = parse_scheme(get_as<std::string>(sc, "scheme"));
                            c.n = get_count(n, "n");
                            c.k = get_as<double>(k, "k");
                            c.alpha = get_as<double>(a, "alpha");
                            c.delta = get_as<int>(d, "delta");
                            c.t = get_as<int>(t, "t");
                            out.push_back(c);
                        }
}

}  // namespace

std::vector<ExperimentConfig> parse_config(std::string_view json_text) {
    json root;
    try {
        root = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ParameterError(std::string("config: invalid JSON: ") + e.what());
    }
    if (!root.is_object()) throw ParameterError("config: top level must be an object");

    std::vector<ExperimentConfig> out;
    if (root.contains("series")) {
        const auto& series = root["series"];
        if (!series.is_array() || series.empty()) throw ParameterError("config: 'series' must be a non-empty list");
        for (const auto& s : series) {
            if (!s.is_object()) throw ParameterError("config: series entries must be objects");
            json merged = root;
            merged.erase("series");
            for (const auto& [key, v] : s.items()) {
                if (key == "series") throw ParameterError("config: nested series");
                if (key == "scheme") merged.erase("schemes");
                if (key == "schemes") merged.erase("scheme");
                merged[key] = v;
            }
            expand(merged, out);
        }
    } else {
        expand(root, out);
    }
    return out;
}

namespace {
std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}
}  // namespace

std::string to_csv(std::span<const ExperimentResult> results) {
    std::string s(kCsvHeader);
    s += '\n';
    for (const auto& r : results) {
        const auto& c = r.cfg;
        s += to_string(c.scheme) + ',' + std::to_string(c.n) + ',' + num(c.k) + ',' + num(c.alpha) + ',' +
             std::to_string(c.delta) + ',' + std::to_string(c.t) + ',' + std::to_string(c.runs) + ',' +
             std::to_string(c.seed) + ',' + num(r.mean_norm_edit) + ',' + num(r.stderr_norm_edit) + ',' +
             num(r.p_e) + ',' + num(r.boundary_fail_rate) + ',' + num(r.wall_ms) + '\n';
    }
    return s;
}

void write_csv(std::span<const ExperimentResult> results, const std::string& path) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw IoError("cannot open '" + path + "' for writing");
    f << to_csv(results);
    if (!f.flush()) throw IoError("write to '" + path + "' failed");
}

}  // namespace delcode::sim
