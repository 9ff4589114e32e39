// Command-line front end: run a scheme end to end, verify decodability or
// privacy, or sweep memory-rate curves to CSV.
//
// Exit codes: 0 pass, 1 check failed, 2 bad input, 3 budget refusal.

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "pcc/direct.hpp"
#include "pcc/exact_k2.hpp"
#include "pcc/lift.hpp"
#include "pcc/tradeoff.hpp"
#include "pcc/verify.hpp"

using nlohmann::json;
using namespace pcc;

namespace {

struct SchemeOptions {
    std::string scheme;
    uint32_t n = 2, k = 2, t = 1;
    std::string r = "1";
    std::string m = "0";
    uint64_t l = 1;
};

// Rational CLI values arrive as "p", "p/q" or decimals.
std::pair<uint64_t, uint64_t> parse_ratio(const std::string& text) {
    Rat r = rat_parse(text);
    if (r < 0) throw ParamError("negative rational");
    if (!r.get_num().fits_ulong_p() || !r.get_den().fits_ulong_p())
        throw ParamError("rational out of range");
    return {r.get_num().get_ui(), r.get_den().get_ui()};
}

SchemeFactory make_factory(const SchemeOptions& o) {
    if (o.scheme == "example1") return [](uint64_t l) { return make_example1(l); };
    if (o.scheme == "a") {
        auto [rn, rd] = parse_ratio(o.r);
        if (rd != 1) throw ParamError("scheme a: r must be an integer");
        uint32_t n = o.n, k = o.k, r = static_cast<uint32_t>(rn);
        return [n, k, r](uint64_t l) { return make_scheme_a(n, k, r, l); };
    }
    if (o.scheme == "b") {
        auto ratio = parse_ratio(o.m);
        uint32_t n = o.n, k = o.k;
        return [n, k, ratio](uint64_t l) { return make_scheme_b(n, k, ratio.first, ratio.second, l); };
    }
    if (o.scheme == "c") {
        auto ratio = parse_ratio(o.r);
        uint32_t n = o.n, k = o.k, t = o.t;
        return [n, k, t, ratio](uint64_t l) {
            return make_scheme_c(n, k, t, ratio.first, ratio.second, l);
        };
    }
    if (o.scheme == "d") {
        uint32_t n = o.n;
        return [n](uint64_t l) { return make_scheme_d(n, l); };
    }
    if (o.scheme == "e") {
        uint32_t n = o.n;
        return [n](uint64_t l) { return make_scheme_e(n, l); };
    }
    if (o.scheme == "leaky") return [](uint64_t l) { return make_leaky_scheme(l); };
    throw ParamError("unknown scheme: " + o.scheme);
}

json params_json(const SchemeOptions& o, const CachingScheme& s) {
    json p;
    p["scheme"] = o.scheme;
    p["n"] = s.n_files();
    p["k"] = s.n_users();
    p["l"] = o.l;
    p["file_bits"] = s.file_bits();
    if (o.scheme == "c") p["t"] = o.t;
    if (o.scheme == "c" || o.scheme == "a") p["r"] = o.r;
    if (o.scheme == "b") p["m"] = o.m;
    return p;
}

void emit(const json& out, const std::string& path) {
    if (path.empty()) {
        std::cout << out.dump(2) << std::endl;
    } else {
        std::ofstream f(path);
        f << out.dump(2) << std::endl;
    }
}

int cmd_run(const SchemeOptions& opts, const std::string& demands_text, uint64_t seed,
            const std::string& out_path) {
    SchemeFactory factory = make_factory(opts);
    SchemePtr s = factory(opts.l);

    DemandVector demands;
    if (demands_text.empty()) {
        CounterRng rng(seed, 0xdeaa);
        for (uint32_t i = 0; i < s->n_users(); i++)
            demands.d.push_back(static_cast<uint32_t>(rng.bounded(s->n_files())));
    } else {
        std::stringstream ss(demands_text);
        std::string tok;
        while (std::getline(ss, tok, ',')) demands.d.push_back(std::stoul(tok));
    }

    CounterRng rng(seed, 1);
    FileSet files = FileSet::random(s->n_files(), s->file_bits(), rng);
    TapeValue tape = s->tape_spec().sample(rng);
    auto caches = s->place(tape, files);
    Broadcast bc = s->deliver(tape, files, demands);

    json out;
    out["params"] = params_json(opts, *s);
    out["seed"] = seed;
    out["demands"] = demands.d;
    json cache_sizes = json::array();
    uint64_t max_main = 0;
    for (const auto& c : caches) {
        cache_sizes.push_back({{"main_bits", c.main_bits.size()},
                               {"shared_bits", c.shared_random.bit_size()}});
        max_main = std::max(max_main, c.main_bits.size());
    }
    out["caches"] = cache_sizes;
    out["broadcast"] = {{"payload_bits", bc.payload.size()}, {"aux_bits", bc.aux.bit_size()}};
    json ok = json::array();
    bool all = true;
    for (uint32_t u = 0; u < s->n_users(); u++) {
        bool good = s->decode(u, demands[u], caches[u], bc) == files[demands[u]];
        ok.push_back(good);
        all = all && good;
    }
    out["decode_ok"] = ok;
    Rat mm = rat_u64(max_main, s->file_bits());
    Rat rr = rat_u64(bc.payload.size(), s->file_bits());
    out["measured"] = {{"M", mm.get_str()},
                       {"M_decimal", rat_decimal(mm)},
                       {"R", rr.get_str()},
                       {"R_decimal", rat_decimal(rr)}};
    emit(out, out_path);
    return all ? 0 : 1;
}

int cmd_verify(const SchemeOptions& opts, const std::string& mode, uint64_t samples,
               uint64_t budget_log2, uint64_t seed, const std::string& out_path) {
    SchemeFactory factory = make_factory(opts);
    SchemePtr s = factory(opts.l);
    u128 budget = budget_log2 >= 127 ? U128_MAX : (static_cast<u128>(1) << budget_log2);

    auto start = std::chrono::steady_clock::now();
    json rep;
    rep["scheme"] = s->name();
    rep["params"] = params_json(opts, *s);
    rep["check"] = mode;
    rep["budget"] = "2^" + std::to_string(budget_log2);
    bool pass = false;

    if (mode == "decode") {
        auto res = verify_decode_basis(*s, samples, seed, budget);
        pass = res.pass;
        rep["value"] = {{"pipelines", res.pipelines}, {"failure", res.failure}};
    } else if (mode == "privacy") {
        auto res = verify_privacy_exact(*s, budget);
        pass = true;
        json users = json::array();
        for (const auto& r : res) {
            pass = pass && r.zero;
            users.push_back({{"user", r.user}, {"zero", r.zero}, {"mi_bits", r.mi_bits}});
        }
        rep["value"] = users;
    } else if (mode == "estimate") {
        StateSpace ss = state_space(*s, true);
        uint32_t bins = ss.total <= (static_cast<u128>(1) << 20) ? 0 : 4096;
        pass = true;
        json users = json::array();
        for (uint32_t u = 0; u < s->n_users(); u++) {
            MiEstimate est = verify_privacy_estimate(*s, u, samples, bins, seed);
            pass = pass && est.mm_bits < 0.01;
            users.push_back({{"user", u},
                             {"samples", est.samples},
                             {"bins", est.bins},
                             {"mi_plugin_bits", est.plugin_bits},
                             {"mi_mm_bits", est.mm_bits},
                             {"ci", {est.ci_lo, est.ci_hi}}});
        }
        rep["value"] = users;
    } else if (mode == "strong") {
        auto res = verify_strong_privacy(*s, 3, seed, budget);
        pass = true;
        json subsets = json::array();
        for (const auto& r : res) {
            pass = pass && r.zero;
            subsets.push_back(
                {{"subset_mask", r.subset_mask}, {"zero", r.zero}, {"max_mi_bits", r.max_mi_bits}});
        }
        rep["value"] = subsets;
    } else if (mode == "weak") {
        auto res = verify_weak_privacy(*s, budget);
        pass = true;
        json pairs = json::array();
        for (const auto& r : res) {
            pass = pass && r.zero;
            pairs.push_back(
                {{"user", r.user}, {"other", r.other}, {"zero", r.zero}, {"mi_bits", r.mi_bits}});
        }
        rep["value"] = pairs;
    } else if (mode == "lemma3") {
        auto res = verify_lemma3(*s, budget);
        pass = res.identical;
        rep["value"] = {{"identical", res.identical}, {"mismatch", res.mismatch}};
    } else {
        throw ParamError("unknown mode: " + mode);
    }

    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                  std::chrono::steady_clock::now() - start)
                  .count();
    rep["runtime_ms"] = ms;
    rep["result"] = pass ? "pass" : "fail";
    emit(rep, out_path);
    return pass ? 0 : 1;
}

int cmd_curve(const std::string& source, uint32_t n, uint32_t k, const std::string& r_text,
              uint32_t points, const std::string& out_path) {
    std::vector<MRPoint> pts;
    auto push_line = [&](const MRPoint& a, const MRPoint& b) {
        pts.push_back(a);
        for (uint32_t j = 1; j < points; j++) {
            Rat lambda = rat(j) / rat(points);
            pts.push_back({a.M + (b.M - a.M) * lambda, a.R + (b.R - a.R) * lambda});
        }
        pts.push_back(b);
    };
    if (points > 0) {
        if (source == "schemeA") {
            pts = scheme_a_points(n, k);
        } else if (source == "schemeB") {
            push_line(scheme_b_point(n, k, rat(0)), scheme_b_point(n, k, rat(n)));
        } else if (source == "schemeC") {
            Rat r = rat_parse(r_text);
            pts = scheme_c_points(n, k, r);
        } else if (source == "man") {
            pts = man_points(n, k);
        } else if (source == "cutset") {
            push_line({rat(0), rat(1)}, {rat(n), rat(0)});
        } else if (source == "exactRegion") {
            RateRegion reg = exact_region(n);
            for (size_t i = 0; i + 1 < reg.corners.size(); i++)
                push_line(reg.corners[i], reg.corners[i + 1]);
        } else {
            throw ParamError("unknown curve source: " + source);
        }
    }
    std::ostringstream csv;
    csv << "M,R\n";
    std::vector<MRPoint> dedup;
    for (const auto& p : pts) {
        if (!dedup.empty() && dedup.back() == p) continue;
        dedup.push_back(p);
        csv << rat_decimal(p.M) << "," << rat_decimal(p.R) << "\n";
    }
    if (out_path.empty()) {
        std::cout << csv.str();
    } else {
        std::ofstream f(out_path);
        f << csv.str();
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"demand-private coded caching: run, verify, sweep"};
    app.require_subcommand(1);

    SchemeOptions opts;
    uint64_t seed = 1;
    std::string out_path, demands_text, mode = "decode", curve_source = "schemeA";
    uint64_t samples = 0, budget_log2 = 34;
    uint32_t curve_points = 32;

    auto add_scheme_flags = [&](CLI::App* cmd) {
        cmd->add_option("--scheme", opts.scheme, "example1|a|b|c|d|e|leaky")->required();
        cmd->add_option("--n", opts.n, "number of files");
        cmd->add_option("--k", opts.k, "number of users");
        cmd->add_option("--t", opts.t, "segment-size cutoff (scheme c)");
        cmd->add_option("--r", opts.r, "cache parameter (scheme a integer, scheme c rational)");
        cmd->add_option("--m", opts.m, "memory (scheme b, rational)");
        cmd->add_option("--l", opts.l, "segment scale");
        cmd->add_option("--seed", seed, "64-bit seed; all randomness derives from it");
        cmd->add_option("--out", out_path, "write the report here instead of stdout");
    };

    CLI::App* run = app.add_subcommand("run", "run placement/delivery/decoding once");
    add_scheme_flags(run);
    run->add_option("--demands", demands_text, "comma-separated demand vector");

    CLI::App* verify = app.add_subcommand("verify", "decodability and privacy checks");
    add_scheme_flags(verify);
    verify->add_option("--mode", mode, "decode|privacy|estimate|strong|weak|lemma3");
    verify->add_option("--samples", samples, "sampled tapes (decode) or samples (estimate)");
    verify->add_option("--budget", budget_log2, "log2 of the state budget");

    CLI::App* curve = app.add_subcommand("curve", "emit memory-rate points as CSV");
    curve->add_option("--source", curve_source, "schemeA|schemeB|schemeC|exactRegion|man|cutset");
    curve->add_option("--n", opts.n, "number of files");
    curve->add_option("--k", opts.k, "number of users");
    curve->add_option("--r", opts.r, "slope parameter for schemeC");
    curve->add_option("--points", curve_points, "boundary samples per segment (0: header only)");
    curve->add_option("--out", out_path, "write CSV here instead of stdout");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) return cmd_run(opts, demands_text, seed, out_path);
        if (verify->parsed()) {
            if (mode == "estimate" && samples == 0) samples = 1000000;
            return cmd_verify(opts, mode, samples, budget_log2, seed, out_path);
        }
        if (curve->parsed())
            return cmd_curve(curve_source, opts.n, opts.k, opts.r, curve_points, out_path);
    } catch (const BudgetError& e) {
        std::cerr << "budget refusal: " << e.what() << std::endl;
        return 3;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << std::endl;
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << std::endl;
        return 2;
    }
    return 2;
}
