#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "pcorr/selberg.hpp"
#include "pcorr/sequences.hpp"

namespace pcorr {

struct MomentReport {
    std::int64_t N = 0;
    int r = 0;    // K / N
    double s = 0.0;
    double expectation_estimate = 0.0;
    double reference = 0.0; // N * c_0
    double diff = 0.0;      // expectation_estimate - reference
    double variance_estimate = 0.0;
    double mc_std_error = 0.0;
    std::int64_t samples = 0;
    std::uint64_t seed = 0;

    nlohmann::json to_json() const;
};

// (1/N) sum_{m != n} p(alpha (x_m - x_n)), via power sums
// S_j = sum_n e^{2 pi i j alpha x_n}: the double sum is
// (1/N) sum_j c_j (|S_j|^2 - N), O(N K) instead of O(N^2 K)
double pair_sum(const RealSeq& seq, double alpha, const TrigPoly& p);

// integral of pair_sum(seq, alpha, p) over alpha against mu, evaluated in
// the frequency domain: each pair contributes c_j * tent(2 pi j (x_m - x_n)),
// which vanishes unless |j (x_m - x_n)| < 1/(2 pi). quad_nodes sets the
// panel count for the mu-mass quadrature entering the j = 0 term.
MomentReport expectation_mu(const RealSeq& seq, const TrigPoly& p, int quad_nodes);

// Monte Carlo mean of pair_sum^2 over alpha ~ mu; jackknife standard error;
// block-parallel with fixed-order reduction, so identical for any thread
// count. p must be centered (c_0 = 0).
MomentReport variance_mc(const RealSeq& seq, const TrigPoly& p_centered, std::int64_t samples,
                         std::uint64_t seed, int threads = 1);

struct AlphaSampler {
    bool use_mu = false; // otherwise Uniform[lo, hi)
    double lo = 1.0, hi = 2.0;

    static AlphaSampler parse(const std::string& text); // "mu" | "uniform:lo:hi"
    std::vector<double> draw(int count, std::uint64_t seed) const;
    std::string describe() const;
};

struct ConvergenceRow {
    std::int64_t N = 0;
    double s = 0.0;
    double mean_r2 = 0.0;
    double mean_dev = 0.0; // mean over alpha of |r2/(2s) - 1|
    double max_dev = 0.0;
};

std::vector<ConvergenceRow> convergence_experiment(const SequenceSpec& spec,
                                                   std::span<const double> s_list,
                                                   std::span<const std::int64_t> N_list,
                                                   const AlphaSampler& sampler, int alphas,
                                                   std::uint64_t seed);

} // namespace pcorr
