#include "pcorr/variance.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "pcorr/circle_stats.hpp"
#include "pcorr/errors.hpp"
#include "pcorr/kernels.hpp"
#include "pcorr/parallel.hpp"
#include "pcorr/quadrature.hpp"
#include "pcorr/rng.hpp"

namespace pcorr {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kQuadWindow = 50.0; // |alpha| <= A for the mu-mass quadrature

} // namespace

double pair_sum(const RealSeq& seq, double alpha, const TrigPoly& p) {
    const std::int64_t N = seq.size();
    if (N < 2) return 0.0; // no off-diagonal pairs
    const int K = p.K;

    // S_j = sum_n w_n^j, w_n on the unit circle from the reduced phase
    std::vector<std::complex<double>> S(static_cast<std::size_t>(K) + 1, 0.0);
    for (double x : seq.values) {
        const std::complex<double> w = std::polar(1.0, kTwoPi * mul_mod1(alpha, x));
        std::complex<double> cur = 1.0;
        for (int j = 0; j <= K; ++j) {
            S[static_cast<std::size_t>(j)] += cur;
            cur *= w;
        }
    }

    const double dN = static_cast<double>(N);
    double total = p.c(0).real() * (dN * dN - dN);
    for (int j = 1; j <= K; ++j)
        total += 2.0 * p.c(j).real() * (std::norm(S[static_cast<std::size_t>(j)]) - dN);
    return total / dN;
}

MomentReport expectation_mu(const RealSeq& seq, const TrigPoly& p, int quad_nodes) {
    if (quad_nodes < 1) throw BadParams("expectation_mu requires quad_nodes >= 1");
    const std::int64_t N = seq.size();
    const double c0 = p.c(0).real();

    // total mu mass: quadrature over |alpha| <= A plus the closed-form tail;
    // if the two do not reassemble to 1, the requested precision is
    // unreachable at this window
    const auto mu = WeightKernel::Mu();
    const double core = 2.0 * integrate_panels([&](double x) { return density(mu, x); }, 0.0,
                                               kQuadWindow, static_cast<std::size_t>(quad_nodes));
    const double mass = core + 2.0 * mu_tail_mass(kQuadWindow);
    if (std::fabs(mass - 1.0) > 1e-6)
        throw TailTooFat("mu mass quadrature does not reach the requested precision");

    MomentReport rep;
    rep.N = N;
    rep.r = N > 0 ? static_cast<int>(p.K / N) : 0;
    rep.s = p.s;
    rep.reference = static_cast<double>(N) * c0;

    // j = 0: every ordered pair contributes c_0 * mu(R)
    double est = static_cast<double>(N - 1) * c0 * mass;

    // j != 0: tent(2 pi j d) is nonzero only when |d| < 1/(2 pi |j|), so only
    // close pairs enter; enumerate them with a sliding window
    const double cut = 1.0 / kTwoPi;
    const auto& x = seq.values;
    double close = 0.0;
    std::size_t lo = 0;
    for (std::size_t n = 1; n < x.size(); ++n) {
        while (x[n] - x[lo] >= cut) ++lo;
        for (std::size_t m = lo; m < n; ++m) {
            const double d = x[n] - x[m];
            for (int j = 1; j <= p.K; ++j) {
                const double w = kTwoPi * static_cast<double>(j) * d;
                if (w >= 1.0) break;
                close += 2.0 * p.c(j).real() * (1.0 - w);
            }
        }
    }
    est += 2.0 * close / static_cast<double>(N); // both pair orders

    rep.expectation_estimate = est;
    rep.diff = rep.expectation_estimate - rep.reference;
    return rep;
}

MomentReport variance_mc(const RealSeq& seq, const TrigPoly& p_centered, std::int64_t samples,
                         std::uint64_t seed, int threads) {
    if (std::abs(p_centered.c(0)) != 0.0)
        throw BadParams("variance_mc requires a centered polynomial (c_0 = 0)");
    if (samples < 2) throw BadParams("variance_mc requires samples >= 2");

    const auto alphas = sample_mu(substream_seed(seed, "mc-alpha"),
                                  static_cast<std::size_t>(samples));
    std::vector<double> v(static_cast<std::size_t>(samples), 0.0);

    constexpr std::int64_t kBlock = 32;
    const std::int64_t nblocks = (samples + kBlock - 1) / kBlock;
    parallel_blocks(nblocks, threads, [&](std::int64_t b) {
        const std::int64_t end = std::min(samples, (b + 1) * kBlock);
        for (std::int64_t i = b * kBlock; i < end; ++i) {
            const double ps = pair_sum(seq, alphas[static_cast<std::size_t>(i)], p_centered);
            v[static_cast<std::size_t>(i)] = ps * ps;
        }
    });

    const double mean = pairwise_sum(v) / static_cast<double>(samples);
    std::vector<double> sq(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) sq[i] = (v[i] - mean) * (v[i] - mean);
    const double se = std::sqrt(pairwise_sum(sq) /
                                (static_cast<double>(samples) * static_cast<double>(samples - 1)));

    MomentReport rep;
    rep.N = seq.size();
    rep.r = rep.N > 0 ? static_cast<int>(p_centered.K / rep.N) : 0;
    rep.s = p_centered.s;
    rep.variance_estimate = mean;
    rep.mc_std_error = se;
    rep.samples = samples;
    rep.seed = seed;
    return rep;
}

AlphaSampler AlphaSampler::parse(const std::string& text) {
    AlphaSampler s;
    if (text == "mu") {
        s.use_mu = true;
        return s;
    }
    if (text.rfind("uniform:", 0) == 0) {
        const auto rest = text.substr(8);
        const auto colon = rest.find(':');
        if (colon == std::string::npos) throw BadParams("expected uniform:lo:hi");
        s.lo = std::stod(rest.substr(0, colon));
        s.hi = std::stod(rest.substr(colon + 1));
        if (!(s.lo < s.hi)) throw BadParams("uniform sampler requires lo < hi");
        return s;
    }
    throw BadParams("unknown alpha sampler: " + text);
}

std::string AlphaSampler::describe() const {
    if (use_mu) return "mu";
    std::ostringstream os;
    os.precision(17);
    os << "uniform:" << lo << ':' << hi;
    return os.str();
}

std::vector<double> AlphaSampler::draw(int count, std::uint64_t seed) const {
    if (use_mu) return sample_mu(seed, static_cast<std::size_t>(count));
    Rng rng(seed);
    std::vector<double> out(static_cast<std::size_t>(count));
    for (auto& a : out) a = rng.uniform(lo, hi);
    return out;
}

std::vector<ConvergenceRow> convergence_experiment(const SequenceSpec& spec,
                                                   std::span<const double> s_list,
                                                   std::span<const std::int64_t> N_list,
                                                   const AlphaSampler& sampler, int alphas,
                                                   std::uint64_t seed) {
    if (alphas < 1) throw BadParams("convergence_experiment requires alphas >= 1");
    std::vector<ConvergenceRow> rows;
    const auto draws = sampler.draw(alphas, substream_seed(seed, "alpha"));
    for (std::int64_t N : N_list) {
        const RealSeq seq = materialize(spec, N);
        std::vector<std::vector<double>> r2(s_list.size());
        for (double alpha : draws) {
            const auto est = pair_correlation(seq, alpha, s_list);
            for (std::size_t si = 0; si < s_list.size(); ++si)
                r2[si].push_back(est.entries[si].r2);
        }
        for (std::size_t si = 0; si < s_list.size(); ++si) {
            ConvergenceRow row;
            row.N = N;
            row.s = s_list[si];
            double sum = 0.0, devsum = 0.0, devmax = 0.0;
            for (double v : r2[si]) {
                sum += v;
                const double dev = row.s > 0.0 ? std::fabs(v / (2.0 * row.s) - 1.0) : v;
                devsum += dev;
                devmax = std::max(devmax, dev);
            }
            row.mean_r2 = sum / static_cast<double>(r2[si].size());
            row.mean_dev = devsum / static_cast<double>(r2[si].size());
            row.max_dev = devmax;
            rows.push_back(row);
        }
    }
    return rows;
}

nlohmann::json MomentReport::to_json() const {
    return {{"N", N},
            {"r", r},
            {"s", s},
            {"expectation_estimate", expectation_estimate},
            {"reference", reference},
            {"diff", diff},
            {"variance_estimate", variance_estimate},
            {"mc_std_error", mc_std_error},
            {"samples", samples},
            {"seed", seed}};
}

} // namespace pcorr
