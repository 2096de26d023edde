// delcode: command-line front end for the marker code, the trace
// reconstruction pipeline and the simulation harness.
//
// Exit codes: 0 success, 1 verification failed or I/O error,
// 2 parameter error, 3 capacity or sampling error.

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "delcode/analysis.hpp"
#include "delcode/experiment.hpp"
#include "delcode/marker_code.hpp"
#include "delcode/trace_recon.hpp"
#include "delcode/verifier.hpp"

using namespace delcode;
using nlohmann::json;

namespace {

std::string join(const auto& v) {
    std::string s;
    for (const auto& e : v) {
        if (!s.empty()) s += ',';
        s += std::to_string(e);
    }
    return s;
}

std::string read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

std::vector<BitString> read_lines(const std::string& path) {
    std::istringstream in(read_file(path));
    std::vector<BitString> out;
    for (std::string line; std::getline(in, line);) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        out.push_back(BitString::parse(line));
    }
    return out;
}

CodeParams code_params(int delta, std::size_t ell, std::size_t n, bool relaxed) {
    return CodeParams::make(delta, ell, n, relaxed ? BlockMode::relaxed : BlockMode::strict);
}

struct CodeOpts {
    int delta = 1;
    std::size_t ell = 0;
    std::size_t n = 0;
    bool relaxed = false;
};

void add_code_opts(CLI::App* cmd, CodeOpts& o) {
    cmd->add_option("--delta", o.delta, "deletions detectable per block")->required();
    cmd->add_option("--ell", o.ell, "block length")->required();
    cmd->add_option("--n", o.n, "codeword length")->required();
    cmd->add_flag("--relaxed", o.relaxed, "allow a short last block");
}

void print_witness(const verify::CollisionWitness& w) {
    std::cout << "collision: y=" << w.y.str() << "\n"
              << "  x1=" << w.x1.str() << " deleted={" << join(w.d1.positions()) << "} counts=" << w.c1.str()
              << "\n"
              << "  x2=" << w.x2.str() << " deleted={" << join(w.d2.positions()) << "} counts=" << w.c2.str()
              << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Marker codes for deletion detection and trace reconstruction"};
    app.require_subcommand(1);

    // encode
    CodeOpts enc;
    std::string info;
    auto* c_encode = app.add_subcommand("encode", "place info bits into a marker codeword");
    add_code_opts(c_encode, enc);
    c_encode->add_option("--info", info, "information bits")->required();

    // decode
    CodeOpts dec;
    std::string y;
    bool best_effort = false;
    auto* c_decode = app.add_subcommand("decode", "recover per-block deletion counts");
    add_code_opts(c_decode, dec);
    c_decode->add_option("--y", y, "received bits")->required();
    c_decode->add_flag("--best-effort", best_effort, "clamp instead of failing outside the deletion budget");

    // verify
    CodeOpts ver;
    std::string code_file;
    auto* c_verify = app.add_subcommand("verify", "exhaustively check deletion detectability");
    add_code_opts(c_verify, ver);
    c_verify->add_option("--code-file", code_file, "one codeword per line (default: the full marker code)");

    // simulate
    sim::ExperimentConfig sc;
    std::string scheme = "marker", config_path, out_path;
    std::vector<int> ts;
    std::vector<std::size_t> ns;
    double p_override = -1;
    int jobs = 0;
    bool no_wall = false;
    auto* c_sim = app.add_subcommand("simulate", "Monte-Carlo edit-distance experiment, CSV output");
    c_sim->add_option("--config", config_path, "JSON config (overrides the flags below)");
    c_sim->add_option("--scheme", scheme, "marker or rll-bma");
    c_sim->add_option("--n", ns, "codeword length(s)");
    c_sim->add_option("--k", sc.k, "p = k / n^alpha");
    c_sim->add_option("--alpha", sc.alpha);
    c_sim->add_option("--delta", sc.delta);
    c_sim->add_option("--t", ts, "number(s) of traces");
    c_sim->add_option("--runs", sc.runs);
    c_sim->add_option("--seed", sc.seed);
    c_sim->add_option("--p-override", p_override, "channel deletion probability (testing)");
    c_sim->add_flag("--zero-del-shortcut", sc.zero_del_shortcut, "copy a deletion-free segment instead of BMA");
    c_sim->add_option("--out", out_path, "CSV path (default stdout)");
    c_sim->add_option("--jobs", jobs, "worker threads (results do not depend on it)");
    c_sim->add_flag("--no-wall-time", no_wall, "write wall_ms as 0 for byte-comparable output");

    // reconstruct
    std::size_t rn = 0;
    double rk = 0, ralpha = 1;
    int rdelta = 3;
    std::string traces_file;
    bool shortcut = false;
    auto* c_rec = app.add_subcommand("reconstruct", "reconstruct a trace-code codeword, JSON report");
    c_rec->add_option("--n", rn)->required();
    c_rec->add_option("--k", rk)->required();
    c_rec->add_option("--alpha", ralpha)->required();
    c_rec->add_option("--delta", rdelta)->required();
    c_rec->add_option("--traces", traces_file, "one trace per line")->required();
    c_rec->add_flag("--zero-del-shortcut", shortcut);

    // analyze
    std::string what;
    std::size_t an = 1000, aell = 0;
    double ak = 10, aalpha = 1, apn = -1;
    int adelta = 3, at = 1;
    auto* c_an = app.add_subcommand("analyze", "closed-form quantities as JSON");
    c_an->add_option("--what", what)->required()->check(CLI::IsMember({"delta-star", "bounds", "epsilon", "claim1"}));
    c_an->add_option("--n", an);
    c_an->add_option("--k", ak);
    c_an->add_option("--alpha", aalpha);
    c_an->add_option("--delta", adelta);
    c_an->add_option("--ell", aell, "block length (epsilon)");
    c_an->add_option("--pn", apn, "p(n) for delta-star (default n^(2 alpha - 1))");
    c_an->add_option("--t", at, "traces for the boundary-failure bound");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (*c_encode) {
            const auto p = code_params(enc.delta, enc.ell, enc.n, enc.relaxed);
            std::cout << marker::encode(BitString::parse(info), p).str() << "\n";
        } else if (*c_decode) {
            const auto p = code_params(dec.delta, dec.ell, dec.n, dec.relaxed);
            const auto r = marker::decode_boundaries(BitString::parse(y), p,
                                                     best_effort ? marker::DecodeMode::best_effort
                                                                 : marker::DecodeMode::strict);
            std::cout << "counts: " << r.counts.str() << "\n"
                      << "starts: " << join(r.starts) << "\n";
            bool any = false;
            for (bool s : r.suspect) any = any || s;
            if (any) std::cout << "suspect: " << join(std::vector<int>(r.suspect.begin(), r.suspect.end())) << "\n";
        } else if (*c_verify) {
            const auto p = code_params(ver.delta, ver.ell, ver.n, ver.relaxed);
            const auto code = code_file.empty() ? verify::enumerate_marker_code(p) : read_lines(code_file);
            const auto v = verify::detects_exhaustive(code, p);
            std::cout << (v.ok ? "ok" : "not detecting") << " (" << code.size() << " codewords, "
                      << v.pairs_checked << " pairs)\n";
            if (v.witness) print_witness(*v.witness);
            return v.ok ? 0 : 1;
        } else if (*c_sim) {
            std::vector<sim::ExperimentConfig> cfgs;
            if (!config_path.empty()) {
                cfgs = sim::parse_config(read_file(config_path));
            } else {
                sc.scheme = sim::parse_scheme(scheme);
                if (p_override >= 0) sc.p_override = p_override;
                if (ns.empty()) ns = {sc.n};
                if (ts.empty()) ts = {sc.t};
                for (auto n : ns)
                    for (int t : ts) {
                        auto c = sc;
                        c.n = n;
                        c.t = t;
                        cfgs.push_back(c);
                    }
            }
            for (const auto& c : cfgs) sim::validate(c);
            std::vector<sim::ExperimentResult> results;
            for (const auto& c : cfgs) {
                results.push_back(sim::run_experiment(c, jobs));
                if (no_wall) results.back().wall_ms = 0;
            }
            if (out_path.empty())
                std::cout << sim::to_csv(results);
            else
                sim::write_csv(results, out_path);
        } else if (*c_rec) {
            const auto params = trace::TraceCodeParams::make(rn, rk, ralpha, rdelta);
            const auto traces = read_lines(traces_file);
            if (traces.empty()) throw ParameterError("reconstruct: no traces");
            trace::ReconstructOptions opt;
            opt.zero_del_shortcut = shortcut;
            std::cout << trace::report_to_json(trace::reconstruct(traces, params, opt)) << "\n";
        } else if (*c_an) {
            json j;
            j["what"] = what;
            if (what == "delta-star") {
                const double pn = apn > 0 ? apn : std::pow(static_cast<double>(an), 2 * aalpha - 1);
                const double ds = analysis::delta_star(an, aalpha, pn);
                j["n"] = an;
                j["alpha"] = aalpha;
                j["p_n"] = pn;
                j["delta_star"] = ds;
                j["delta"] = static_cast<int>(std::ceil(ds));
                j["target"] = (2 * ak + 1) / pn;
                j["tail_at_delta_star"] = analysis::boundary_tail(an, ak, aalpha, ds);
                j["tail_at_delta"] = analysis::boundary_tail(an, ak, aalpha, std::ceil(ds));
            } else if (what == "bounds") {
                const auto params = trace::TraceCodeParams::make(an, ak, aalpha, adelta);
                const auto b = analysis::redundancy_bounds_cprime(params);
                const double log2_size = trace::make_codeword_sampler(params).log2_count();
                j["ell"] = params.ell;
                j["blocks"] = params.num_blocks();
                j["run_limit"] = params.run_limit;
                j["lower"] = b.lower;
                j["upper"] = b.upper;
                j["r_d"] = b.r_d;
                j["rate_d"] = 1.0 - static_cast<double>(b.r_d) / static_cast<double>(an);
                j["log2_code_size"] = log2_size;
                j["r_exact"] = static_cast<double>(an) - log2_size;
                j["stuff_capacity"] = trace::stuff_capacity(params);
                j["pe_bound_boundary"] = analysis::pe_bound_boundary(an, ak, aalpha, adelta, at);
                j["tag"] = b.tag;
            } else if (what == "epsilon") {
                if (aell == 0) throw ParameterError("analyze epsilon: --ell is required");
                j["delta"] = adelta;
                j["ell"] = aell;
                j["epsilon"] = verify::epsilon(adelta, aell);
            } else {
                const auto c = analysis::claim1_bounds(an, ak, aalpha);
                j["ell"] = c.ell;
                j["blocks"] = c.blocks;
                j["scale"] = c.scale;
                j["blocks_lower"] = c.blocks_lower;
                j["blocks_upper"] = c.blocks_upper;
                j["boundaries_lower"] = c.boundaries_lower;
                j["boundaries_upper"] = c.boundaries_upper;
                j["holds"] = c.holds();
            }
            std::cout << j.dump(2) << "\n";
        }
    } catch (const CapacityError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const SamplingError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const ParameterError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const DesyncError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
