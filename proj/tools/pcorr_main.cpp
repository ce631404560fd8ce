// pcorr: reproducible experiments on spacing statistics of dilated
// sequences mod one. Every run writes its outputs plus a JSON manifest
// that `pcorr replay` can re-execute byte-for-byte.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "pcorr/circle_stats.hpp"
#include "pcorr/dyadic.hpp"
#include "pcorr/energy.hpp"
#include "pcorr/errors.hpp"
#include "pcorr/kernels.hpp"
#include "pcorr/manifest.hpp"
#include "pcorr/rng.hpp"
#include "pcorr/selberg.hpp"
#include "pcorr/sequences.hpp"
#include "pcorr/variance.hpp"

namespace {

using namespace pcorr;

int run_cli(const std::vector<std::string>& args); // forward, for replay

std::vector<double> parse_double_list(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(std::stod(tok));
    if (out.empty()) throw BadParams("empty list: " + text);
    return out;
}

std::vector<std::int64_t> parse_int_list(const std::string& text) {
    std::vector<std::int64_t> out;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(std::stoll(tok));
    if (out.empty()) throw BadParams("empty list: " + text);
    return out;
}

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

void write_text(const std::string& path, const std::string& body) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw BadParams("cannot write output file: " + path);
    out << body;
}

// shared per-run state assembled from the common flags
struct RunCtx {
    std::uint64_t seed = 1;
    int threads = 1;
    std::size_t mem_budget = std::size_t(1) << 30;
    bool allow_slow_growth = false;
    std::string out;
    std::string manifest_path;

    RunManifest manifest;

    void add_common(CLI::App* cmd, bool needs_out = true) {
        cmd->add_option("--seed", seed, "root seed; all randomness derives from it");
        cmd->add_option("--threads", threads, "worker count (wall time only, never results)");
        cmd->add_option("--mem-budget", mem_budget, "bytes allowed for in-memory difference multisets");
        cmd->add_flag("--allow-slow-growth", allow_slow_growth,
                      "permit sequences with min gap < 1");
        auto* o = cmd->add_option("--out", out, "output file");
        if (needs_out) o->required();
        cmd->add_option("--manifest", manifest_path, "manifest path (default: <out>.manifest.json)");
    }

    RealSeq make_seq(const std::string& seq_text, std::int64_t N) {
        const auto spec = SequenceSpec::parse(seq_text);
        RealSeq seq = materialize(spec, N);
        if (seq.size() >= 2 && seq.slow_growth() && !allow_slow_growth)
            throw BadParams("sequence has min gap < 1; pass --allow-slow-growth to proceed");
        manifest.spec = spec;
        manifest.has_spec = true;
        return seq;
    }

    void finish(const std::string& command, const std::vector<std::string>& argv) {
        manifest.command = command;
        manifest.argv = argv;
        manifest.seed = seed;
        manifest.finished = iso_timestamp_now();
        if (!out.empty()) manifest.outputs.push_back(out);
        const std::string mpath = manifest_path.empty() ? out + ".manifest.json" : manifest_path;
        if (!mpath.empty() && mpath != ".manifest.json") manifest.save(mpath);
    }
};

// ---- subcommand handlers ------------------------------------------------

void cmd_paircorr(RunCtx& ctx, const std::string& seq_text, std::int64_t N,
                  const std::string& s_text, const std::string& sampler_text, int alphas,
                  const std::vector<double>& explicit_alphas, bool brute) {
    const auto s_list = parse_double_list(s_text);
    RealSeq seq = ctx.make_seq(seq_text, N);
    std::vector<double> as = explicit_alphas;
    if (as.empty()) {
        const auto sampler = AlphaSampler::parse(sampler_text);
        as = sampler.draw(alphas, substream_seed(ctx.seed, "alpha"));
        ctx.manifest.set_param("alpha_sampler", sampler.describe());
    }
    std::string csv = "N,alpha,s,pair_count,r2\n";
    for (double alpha : as) {
        const auto est = brute ? pair_correlation_brute(seq, alpha, s_list)
                               : pair_correlation(seq, alpha, s_list);
        csv += est.csv_rows();
    }
    write_text(ctx.out, csv);
    ctx.manifest.set_param("N", std::to_string(N));
    ctx.manifest.set_param("s", s_text);
    ctx.manifest.set_param("alphas", std::to_string(as.size()));
    ctx.manifest.set_param("brute", brute ? "1" : "0");
}

void cmd_energy(RunCtx& ctx, const std::string& seq_text, std::int64_t N, double gamma) {
    RealSeq seq = ctx.make_seq(seq_text, N);
    EnergyOptions opt;
    opt.mem_budget = ctx.mem_budget;
    opt.threads = ctx.threads;
    const std::int64_t total = energy_fast(seq, gamma, opt);
    const std::int64_t trivial = 2 * N * N - N;
    std::string csv = "N,gamma,total,trivial,nontrivial\n";
    csv += std::to_string(N) + ',' + fmt(gamma) + ',' + std::to_string(total) + ',' +
           std::to_string(trivial) + ',' + std::to_string(total - trivial) + '\n';
    write_text(ctx.out, csv);
    ctx.manifest.set_param("N", std::to_string(N));
    ctx.manifest.set_param("gamma", fmt(gamma));
}

void cmd_energy_scan(RunCtx& ctx, const std::string& seq_text, std::int64_t N,
                     const std::string& gammas_text) {
    RealSeq seq = ctx.make_seq(seq_text, N);
    const auto curve = gamma_scan(seq, parse_double_list(gammas_text));
    write_text(ctx.out, "N,gamma,total,trivial,nontrivial\n" + curve.csv_rows());
    ctx.manifest.set_param("N", std::to_string(N));
    ctx.manifest.set_param("gammas", gammas_text);
}

void cmd_scaling(RunCtx& ctx, const std::string& seq_text, const std::string& n_text,
                 double gamma) {
    const auto Ns = parse_int_list(n_text);
    std::string csv = "N,gamma,total,trivial,nontrivial\n";
    std::vector<std::pair<double, double>> pts;
    for (std::int64_t N : Ns) {
        RealSeq seq = ctx.make_seq(seq_text, N);
        EnergyOptions opt;
        opt.mem_budget = ctx.mem_budget;
        opt.threads = ctx.threads;
        const std::int64_t total = energy_fast(seq, gamma, opt);
        const std::int64_t trivial = 2 * N * N - N;
        csv += std::to_string(N) + ',' + fmt(gamma) + ',' + std::to_string(total) + ',' +
               std::to_string(trivial) + ',' + std::to_string(total - trivial) + '\n';
        pts.emplace_back(static_cast<double>(N), static_cast<double>(total));
    }
    const auto fit = fit_scaling(pts);
    write_text(ctx.out, csv);
    std::cout << "slope=" << fmt(fit.slope) << " intercept=" << fmt(fit.intercept)
              << " residual=" << fmt(fit.residual) << '\n';
    ctx.manifest.set_param("gamma", fmt(gamma));
    ctx.manifest.set_param("N_list", n_text);
    ctx.manifest.set_param("slope", fmt(fit.slope));
    ctx.manifest.set_param("intercept", fmt(fit.intercept));
    ctx.manifest.set_param("residual", fmt(fit.residual));
}

void cmd_dyadic_count(RunCtx& ctx, const std::string& seq_text, std::int64_t N, int u,
                      double z_lo, double z_hi) {
    RealSeq seq = ctx.make_seq(seq_text, N);
    const auto z = abs_differences(seq);
    const std::int64_t count = count_dyadic_brute_band(z, u, z_lo, z_hi);
    std::string csv = "N,u,z_lo,z_hi,count\n";
    csv += std::to_string(N) + ',' + std::to_string(u) + ',' + fmt(z_lo) + ',' + fmt(z_hi) +
           ',' + std::to_string(count) + '\n';
    write_text(ctx.out, csv);
    ctx.manifest.set_param("N", std::to_string(N));
    ctx.manifest.set_param("u", std::to_string(u));
}

BinParams parse_mode(const std::string& mode, double beta, double eps) {
    BinParams p;
    p.beta = beta;
    p.eps = eps;
    if (mode == "case1") p.mode = BinMode::case1;
    else if (mode == "case2") p.mode = BinMode::case2;
    else if (mode == "rescaled") p.mode = BinMode::rescaled;
    else throw BadParams("mode must be case1, case2 or rescaled");
    return p;
}

void cmd_binning_diag(RunCtx& ctx, const std::string& seq_text, std::int64_t N, int u,
                      const std::string& mode, double beta, double eps) {
    RealSeq seq = ctx.make_seq(seq_text, N);
    const auto z = abs_differences(seq);
    DyadicBinning bin = build_binning(z, N, u, parse_mode(mode, beta, eps));
    const auto pn = p_norm_quadrature(bin); // also validates the bilinear identity
    double sum_a2 = 0.0;
    for (const auto& [h, ah] : bin.a) sum_a2 += ah * ah;
    if (sum_a2 > 0.0)
        bin.max_ratio_logs["pnorm_over_T_sum_a2"] =
            pn.quadrature / (bin.T * sum_a2);
    write_text(ctx.out, bin.diagnostics().dump(2) + "\n");
    ctx.manifest.set_param("N", std::to_string(N));
    ctx.manifest.set_param("u", std::to_string(u));
    ctx.manifest.set_param("mode", mode);
    ctx.manifest.set_param("pnorm_quadrature", fmt(pn.quadrature));
    ctx.manifest.set_param("pnorm_bilinear", fmt(pn.bilinear));
}

void cmd_selberg_check(RunCtx& ctx, int K, double s, std::int64_t N) {
    const TrigPoly plus = build_selberg(K, s, N, PolySign::plus);
    const TrigPoly minus = build_selberg(K, s, N, PolySign::minus);
    nlohmann::json j{{"plus", plus.to_json()}, {"minus", minus.to_json()}};
    write_text(ctx.out, j.dump(2) + "\n");
    ctx.manifest.set_param("K", std::to_string(K));
    ctx.manifest.set_param("s", fmt(s));
    ctx.manifest.set_param("N", std::to_string(N));
}

void cmd_expectation(RunCtx& ctx, const std::string& seq_text, std::int64_t N, int r, double s,
                     int quad_nodes) {
    RealSeq seq = ctx.make_seq(seq_text, N);
    const TrigPoly p = build_selberg(r * static_cast<int>(N), s, N, PolySign::plus);
    const MomentReport rep = expectation_mu(seq, p, quad_nodes);
    write_text(ctx.out, rep.to_json().dump(2) + "\n");
    ctx.manifest.set_param("N", std::to_string(N));
    ctx.manifest.set_param("r", std::to_string(r));
    ctx.manifest.set_param("s", fmt(s));
    ctx.manifest.set_param("quad_nodes", std::to_string(quad_nodes));
}

void cmd_variance(RunCtx& ctx, const std::string& seq_text, std::int64_t N, int r, double s,
                  std::int64_t samples) {
    RealSeq seq = ctx.make_seq(seq_text, N);
    const TrigPoly h = center(build_selberg(r * static_cast<int>(N), s, N, PolySign::plus));
    const MomentReport rep = variance_mc(seq, h, samples, ctx.seed, ctx.threads);
    write_text(ctx.out, rep.to_json().dump(2) + "\n");
    ctx.manifest.set_param("N", std::to_string(N));
    ctx.manifest.set_param("r", std::to_string(r));
    ctx.manifest.set_param("s", fmt(s));
    ctx.manifest.set_param("samples", std::to_string(samples));
}

void cmd_converge(RunCtx& ctx, std::string seq_text, std::string n_text, std::string s_text,
                  const std::string& preset, const std::string& sampler_text, int alphas) {
    if (!preset.empty()) {
        // thm3:<theta> runs the power sequence; open-problem:1|2|3 are the
        // exploratory presets (n^0.5, n + log n, n log n)
        if (preset.rfind("thm3:", 0) == 0) {
            seq_text = "power:" + preset.substr(5);
        } else if (preset == "open-problem:1") {
            seq_text = "power:0.5";
            ctx.allow_slow_growth = true;
        } else if (preset == "open-problem:2") {
            seq_text = "n+logn";
        } else if (preset == "open-problem:3") {
            seq_text = "nlogn";
        } else {
            throw BadParams("unknown preset: " + preset);
        }
        if (n_text.empty()) n_text = "2000,5000,10000,20000";
        if (s_text.empty()) s_text = "0.5,1,2";
    }
    if (seq_text.empty() || n_text.empty() || s_text.empty())
        throw BadParams("converge needs --preset or all of --seq, --N-list, --s");

    const auto spec = SequenceSpec::parse(seq_text);
    const auto Ns = parse_int_list(n_text);
    const auto ss = parse_double_list(s_text);
    const auto sampler = AlphaSampler::parse(sampler_text);
    // min-gap policy enforced on the largest instance
    RealSeq probe = materialize(spec, Ns.back());
    if (probe.size() >= 2 && probe.slow_growth() && !ctx.allow_slow_growth)
        throw BadParams("sequence has min gap < 1; pass --allow-slow-growth to proceed");
    ctx.manifest.spec = spec;
    ctx.manifest.has_spec = true;

    const auto rows = convergence_experiment(spec, ss, Ns, sampler, alphas, ctx.seed);
    std::string csv = "N,s,mean_r2,mean_dev,max_dev\n";
    for (const auto& row : rows)
        csv += std::to_string(row.N) + ',' + fmt(row.s) + ',' + fmt(row.mean_r2) + ',' +
               fmt(row.mean_dev) + ',' + fmt(row.max_dev) + '\n';
    write_text(ctx.out, csv);
    ctx.manifest.set_param("N_list", n_text);
    ctx.manifest.set_param("s", s_text);
    ctx.manifest.set_param("alphas", std::to_string(alphas));
    ctx.manifest.set_param("alpha_sampler", sampler.describe());
    if (!preset.empty()) ctx.manifest.set_param("preset", preset);
}

// quick cross-module invariant sweep; exits nonzero on the first failure
int cmd_verify(const std::string& suite) {
    int failures = 0;
    auto check = [&](const std::string& name, bool ok) {
        std::cout << (ok ? "ok   " : "FAIL ") << name << '\n';
        if (!ok) ++failures;
    };
    const bool all = suite == "all";

    if (all || suite == "sequences") {
        const auto s10 = materialize(SequenceSpec::power(1.5), 10);
        const auto s5 = materialize(SequenceSpec::power(1.5), 5);
        bool prefix = true;
        for (int i = 0; i < 5; ++i) prefix &= s10.values[i] == s5.values[i];
        check("sequences: prefix stability", prefix);
        check("sequences: min gap", s10.min_gap == s10.values[1] - s10.values[0]);
    }
    if (all || suite == "circle_stats") {
        const auto seq = materialize(SequenceSpec::power(1.5), 200);
        const std::vector<double> ss{0.5, 1.0, 2.0};
        const auto fast = pair_correlation(seq, 1.41421356, ss);
        const auto brute = pair_correlation_brute(seq, 1.41421356, ss);
        bool eq = true;
        for (std::size_t i = 0; i < ss.size(); ++i)
            eq &= fast.entries[i].pair_count == brute.entries[i].pair_count;
        check("circle_stats: fast equals brute", eq);
    }
    if (all || suite == "selberg") {
        bool ok = true;
        try {
            build_selberg(50, 1.0, 50, PolySign::plus);
            build_selberg(50, 1.0, 50, PolySign::minus);
        } catch (const std::exception&) {
            ok = false;
        }
        check("selberg: self-check passes", ok);
    }
    if (all || suite == "kernels") {
        const auto a = sample_mu(42, 1000);
        const auto b = sample_mu(42, 1000);
        check("kernels: sampler determinism", a == b);
        check("kernels: mu mass", std::fabs(mu_mass(200.0) + 2.0 * mu_tail_mass(200.0) - 1.0) < 1e-8);
    }
    if (all || suite == "energy") {
        const auto seq = materialize(SequenceSpec::power(1.5), 30);
        check("energy: fast equals brute", energy_fast(seq, 0.5) == energy_brute(seq, 0.5));
    }
    if (all || suite == "dyadic") {
        const auto seq = materialize(SequenceSpec::power(1.5), 20);
        const auto z = abs_differences(seq);
        const auto bin = build_binning(z, 20, 2, {BinMode::case2, 0.5, 0.0});
        bool ok = true;
        try {
            p_norm_quadrature(bin);
        } catch (const std::exception&) {
            ok = false;
        }
        check("dyadic: bilinear identity", ok);
        double sum_a2 = 0.0, sum_b2 = 0.0;
        for (const auto& [h, ah] : bin.a) sum_a2 += ah * ah;
        for (const auto& [k, bk] : bin.b) sum_b2 += double(bk) * double(bk);
        check("dyadic: partition identity", std::fabs(sum_a2 - sum_b2) < 1e-9);
    }
    if (all || suite == "variance") {
        const auto seq = materialize(SequenceSpec::power(1.5), 50);
        const auto p = build_selberg(100, 1.0, 50, PolySign::plus);
        double direct = 0.0;
        for (std::size_t m = 0; m < 50; ++m)
            for (std::size_t n = 0; n < 50; ++n)
                if (m != n)
                    direct += eval_trigpoly(p, 1.3 * (seq.values[m] - seq.values[n]));
        direct /= 50.0;
        check("variance: power-sum identity",
              std::fabs(pair_sum(seq, 1.3, p) - direct) < 1e-7);
    }
    return failures == 0 ? 0 : 1;
}

int cmd_replay(const std::string& manifest_path, int threads_override,
               const std::string& out_override) {
    const RunManifest m = RunManifest::load(manifest_path);
    std::vector<std::string> args;
    for (std::size_t i = 0; i < m.argv.size(); ++i) {
        const std::string& a = m.argv[i];
        if ((a == "--threads" || a == "--out" || a == "--manifest") && i + 1 < m.argv.size()) {
            ++i; // overridden below / re-derived
            if (a == "--out" && out_override.empty()) {
                args.push_back(a);
                args.push_back(m.argv[i]);
            }
            continue;
        }
        args.push_back(a);
    }
    args.push_back("--threads");
    args.push_back(std::to_string(threads_override));
    if (!out_override.empty()) {
        args.push_back("--out");
        args.push_back(out_override);
    }
    return run_cli(args);
}

// ---- dispatcher ---------------------------------------------------------

int run_cli(const std::vector<std::string>& args) {
    CLI::App app{"spacing statistics of dilated sequences mod one"};
    app.require_subcommand(1);

    RunCtx ctx;
    ctx.manifest.started = iso_timestamp_now();

    // option storage
    std::string seq_text, s_text, gammas_text, n_text, sampler_text = "uniform:1:2";
    std::string mode_text = "case2", preset, manifest_in, suite = "all", out_override;
    std::int64_t N = 0, samples = 1000;
    double gamma = 1.0, beta = 0.5, eps = 0.1, z_lo = 0.0;
    double z_hi = std::numeric_limits<double>::infinity();
    int u = 1, alphas = 1, r = 1, quad_nodes = 200, replay_threads = 1;
    double s_single = 1.0;
    int K = 10;
    std::vector<double> explicit_alphas;
    bool brute = false;

    auto* pc = app.add_subcommand("paircorr", "pair correlation over sampled dilations");
    pc->add_option("--seq", seq_text)->required();
    pc->add_option("--N", N)->required();
    pc->add_option("--s", s_text, "comma-separated s values")->required();
    pc->add_option("--alpha", explicit_alphas, "explicit dilation value(s)");
    pc->add_option("--alpha-sampler", sampler_text, "mu | uniform:lo:hi");
    pc->add_option("--alphas", alphas, "number of sampled dilations");
    pc->add_flag("--brute", brute, "use the O(N^2) reference path");
    ctx.add_common(pc);

    auto* en = app.add_subcommand("energy", "tolerance-gamma energy count");
    en->add_option("--seq", seq_text)->required();
    en->add_option("--N", N)->required();
    en->add_option("--gamma", gamma)->required();
    ctx.add_common(en);

    auto* es = app.add_subcommand("energy-scan", "energy counts over a gamma grid");
    es->add_option("--seq", seq_text)->required();
    es->add_option("--N", N)->required();
    es->add_option("--gammas", gammas_text)->required();
    ctx.add_common(es);

    auto* sc = app.add_subcommand("scaling", "N-sweep of energy counts with a log-log fit");
    sc->add_option("--seq", seq_text)->required();
    sc->add_option("--N-list", n_text)->required();
    sc->add_option("--gamma", gamma);
    ctx.add_common(sc);

    auto* dc = app.add_subcommand("dyadic-count", "brute dyadic-block solution count");
    dc->add_option("--seq", seq_text)->required();
    dc->add_option("--N", N)->required();
    dc->add_option("--u", u)->required();
    dc->add_option("--z-lo", z_lo);
    dc->add_option("--z-hi", z_hi);
    ctx.add_common(dc);

    auto* bd = app.add_subcommand("binning-diag", "build a binning and dump diagnostics");
    bd->add_option("--seq", seq_text)->required();
    bd->add_option("--N", N)->required();
    bd->add_option("--u", u)->required();
    bd->add_option("--mode", mode_text, "case1 | case2 | rescaled");
    bd->add_option("--beta", beta);
    bd->add_option("--eps", eps);
    ctx.add_common(bd);

    auto* sk = app.add_subcommand("selberg-check", "construct and self-check both polynomials");
    sk->add_option("--K", K)->required();
    sk->add_option("--s", s_single)->required();
    sk->add_option("--N", N)->required();
    ctx.add_common(sk);

    auto* ex = app.add_subcommand("expectation", "averaged pair sum against the weight measure");
    ex->add_option("--seq", seq_text)->required();
    ex->add_option("--N", N)->required();
    ex->add_option("--r", r);
    ex->add_option("--s", s_single);
    ex->add_option("--quad-nodes", quad_nodes);
    ctx.add_common(ex);

    auto* va = app.add_subcommand("variance", "Monte Carlo variance of the centered pair sum");
    va->add_option("--seq", seq_text)->required();
    va->add_option("--N", N)->required();
    va->add_option("--r", r);
    va->add_option("--s", s_single);
    va->add_option("--samples", samples);
    ctx.add_common(va);

    auto* cv = app.add_subcommand("converge", "pair correlation convergence experiment");
    cv->add_option("--preset", preset, "thm3:<theta> | open-problem:1|2|3");
    cv->add_option("--seq", seq_text);
    cv->add_option("--N-list", n_text);
    cv->add_option("--s", s_text);
    cv->add_option("--alphas", alphas);
    cv->add_option("--alpha-sampler", sampler_text, "mu | uniform:lo:hi");
    ctx.add_common(cv);

    auto* vf = app.add_subcommand("verify", "run the module invariant sweep");
    vf->add_option("--suite", suite,
                   "all | sequences | circle_stats | selberg | kernels | energy | dyadic | variance");

    auto* rp = app.add_subcommand("replay", "re-execute a recorded manifest");
    rp->add_option("--manifest", manifest_in)->required();
    rp->add_option("--threads", replay_threads);
    rp->add_option("--out", out_override);

    // CLI11 consumes a reversed copy when fed a vector
    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (app.got_subcommand(vf)) return cmd_verify(suite);
        if (app.got_subcommand(rp)) return cmd_replay(manifest_in, replay_threads, out_override);

        if (app.got_subcommand(pc)) {
            cmd_paircorr(ctx, seq_text, N, s_text, sampler_text, alphas, explicit_alphas, brute);
            ctx.finish("paircorr", args);
        } else if (app.got_subcommand(en)) {
            cmd_energy(ctx, seq_text, N, gamma);
            ctx.finish("energy", args);
        } else if (app.got_subcommand(es)) {
            cmd_energy_scan(ctx, seq_text, N, gammas_text);
            ctx.finish("energy-scan", args);
        } else if (app.got_subcommand(sc)) {
            cmd_scaling(ctx, seq_text, n_text, gamma);
            ctx.finish("scaling", args);
        } else if (app.got_subcommand(dc)) {
            cmd_dyadic_count(ctx, seq_text, N, u, z_lo, z_hi);
            ctx.finish("dyadic-count", args);
        } else if (app.got_subcommand(bd)) {
            cmd_binning_diag(ctx, seq_text, N, u, mode_text, beta, eps);
            ctx.finish("binning-diag", args);
        } else if (app.got_subcommand(sk)) {
            cmd_selberg_check(ctx, K, s_single, N);
            ctx.finish("selberg-check", args);
        } else if (app.got_subcommand(ex)) {
            cmd_expectation(ctx, seq_text, N, r, s_single, quad_nodes);
            ctx.finish("expectation", args);
        } else if (app.got_subcommand(va)) {
            cmd_variance(ctx, seq_text, N, r, s_single, samples);
            ctx.finish("variance", args);
        } else if (app.got_subcommand(cv)) {
            cmd_converge(ctx, seq_text, n_text, s_text, preset, sampler_text, alphas);
            ctx.finish("converge", args);
        }
        return 0;
    } catch (const GuardExceeded& e) {
        std::cerr << "guard: " << e.what() << '\n';
        return 3;
    } catch (const MemoryBudgetExceeded& e) {
        std::cerr << "guard: " << e.what() << '\n';
        return 3;
    } catch (const BadParams& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const NonIncreasing& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const Overflow& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const TooShort& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const IntervalTooWide& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const Degenerate& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal check failed: " << e.what() << '\n';
        return 1;
    }
}

} // namespace

int main(int argc, char** argv) {
    std::vector<std::string> args;
    args.reserve(static_cast<std::size_t>(argc));
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return run_cli(args);
}
