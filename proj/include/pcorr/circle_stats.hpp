#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "pcorr/sequences.hpp"

namespace pcorr {

struct PairCorrEntry {
    double s = 0.0;
    std::int64_t pair_count = 0;
    double r2 = 0.0; // pair_count / N
};

struct PairCorrEstimate {
    std::int64_t N = 0;
    double alpha = 0.0;
    std::vector<PairCorrEntry> entries;

    std::string csv_rows() const; // N, alpha, s, pair_count, r2
};

// distance to the nearest integer, in [0, 1/2]; ties return 1/2
double nearest_int_dist(double x);

// (a * x) mod 1 with two-product compensation; exact to ~2^-50 even when
// the product is ~1e9
double mul_mod1(double a, double x);

// (alpha * x_n) mod 1 with compensated product-and-reduce; preserves order
// with the source index
std::vector<double> frac_parts(const RealSeq& seq, double alpha);

// O(N^2) reference path, evaluated directly on alpha*(x_m - x_n).
// Guard: N <= 5000.
PairCorrEstimate pair_correlation_brute(const RealSeq& seq, double alpha,
                                        std::span<const double> s_list);

// Sorted circular two-pointer path, O(N log N + count) per s.
PairCorrEstimate pair_correlation(const RealSeq& seq, double alpha,
                                  std::span<const double> s_list);

} // namespace pcorr
