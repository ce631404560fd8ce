#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "pcorr/sequences.hpp"

namespace pcorr {

// Counts of |x_{n1} - x_{n2} + x_{n3} - x_{n4}| < gamma over a gamma grid.
// trivial = 2N^2 - N: the families {n1=n2, n3=n4} and {n1=n4, n2=n3} have
// N^2 members each and share the N constant tuples.
struct EnergyCurve {
    std::int64_t N = 0;
    std::vector<double> gammas; // descending
    std::vector<std::int64_t> totals;
    std::int64_t trivial = 0;
    std::vector<std::int64_t> nontrivial; // totals - trivial

    std::string csv_rows() const; // N, gamma, total, trivial, nontrivial
};

struct EnergyOptions {
    std::size_t mem_budget = std::size_t(1) << 30; // bytes for the difference multiset
    bool allow_chunking = true;
    int threads = 1;
};

// exact O(N^4) reference; guard N <= 60
std::int64_t energy_brute(const RealSeq& seq, double gamma);

// Equivalent count via the difference multiset D of all N^2 ordered
// differences: #{(d, d') in D x D : |d - d'| < gamma}. Sorted two-pointer,
// in memory when N^2 doubles fit the budget, otherwise external sort +
// three streaming cursors.
std::int64_t energy_fast(const RealSeq& seq, double gamma, const EnergyOptions& opt = {});

// same count with both differences restricted to |d|, |d'| in [lo, hi)
std::int64_t energy_localized(const RealSeq& seq, double gamma, double lo, double hi);

// one sorted pass, windows evaluated per gamma (given in any order;
// reported descending)
EnergyCurve gamma_scan(const RealSeq& seq, std::vector<double> gammas);

struct ScalingFit {
    double slope = 0.0;
    double intercept = 0.0;
    double residual = 0.0; // RMS residual of the log-log fit
};

// least squares of log(count) against log(N); throws Degenerate on < 3
// points or identical N values
ScalingFit fit_scaling(std::span<const std::pair<double, double>> points);

} // namespace pcorr
