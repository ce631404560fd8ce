#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "pcorr/sequences.hpp"

namespace pcorr {

enum class BinMode { case1, case2, rescaled };

struct BinParams {
    BinMode mode = BinMode::case1;
    double beta = 0.0; // case2 / rescaled, in [1/4, 1.01]
    double eps = 0.0;  // case1 / rescaled, in (0, 1/4]
};

// Geometric binning of the absolute-difference multiset at dyadic level u:
// unit (or 2^-u) bins b_k, per-interval l2 masses a_h over the ratio
// (1 + 1/T) partition I_h = [ceil((1+1/T)^h), ceil((1+1/T)^{h+1})).
struct DyadicBinning {
    double T = 0.0;
    double scale = 1.0; // bin width: 1, or 2^-u in rescaled mode
    double z_lo = 0.0, z_hi = 0.0; // localization band [z_lo, z_hi)
    std::map<std::int64_t, std::int64_t> b; // k -> #{z in [k*scale, (k+1)*scale)}
    std::map<std::int64_t, double> a;       // h -> (sum_{k*scale in I_h} b_k^2)^{1/2}
    std::int64_t N = 0;
    int u = 0;
    BinParams params;
    std::map<std::string, double> max_ratio_logs; // observed bound ratios, by check name

    // the h with ceil((1+1/T)^h) <= y < ceil((1+1/T)^{h+1}); y >= 1
    std::int64_t h_index(double y) const;

    nlohmann::json diagnostics() const;
};

// all |x_m - x_n|, m != n, duplicates kept; size N^2 - N
std::vector<double> abs_differences(const RealSeq& seq);

// #{(m, n, j1, j2) : |j1 z_m - j2 z_n| < 1, 2^{u-1} <= j1, j2 < 2^u};
// guard |z| * 4^u <= 1e9
std::int64_t count_dyadic_brute(std::span<const double> z, int u);

// same count with both z values restricted to [lo, hi)
std::int64_t count_dyadic_brute_band(std::span<const double> z, int u, double lo, double hi);

DyadicBinning build_binning(std::span<const double> z, std::int64_t N, int u,
                            const BinParams& params);

// P(t) = sum_h a_h (1 + 1/T)^{iht}
std::complex<double> eval_P(const DyadicBinning& bin, double t);

struct PNormResult {
    double quadrature = 0.0; // trapezoid of |P(t)|^2 exp(-t^2/(2T^2)) over |t| <= 8T
    double bilinear = 0.0;   // T sqrt(2 pi) sum a_h1 a_h2 exp(-(T log(1+1/T)(h1-h2))^2/2)
};

// the two forms must agree to relative 1e-6; QuadratureDivergence otherwise
PNormResult p_norm_quadrature(const DyadicBinning& bin);

// |(1 + 1/T)^{h1 - h2} - j2/j1| <= 4/T with h1, h2 the bins of z_m, z_n;
// swaps the pairs so that j1 >= j2. OutOfBand when a z is outside the band.
bool check_bin_constraint(const DyadicBinning& bin, std::int64_t j1, std::int64_t j2,
                          double z_m, double z_n);

// sum of a_{h1} a_{h2} over the dyadic block's (j1, j2) pairs and all
// (h1, h2) passing the 4/T constraint
double dyadic_upper_bound(const DyadicBinning& bin, int u);

} // namespace pcorr
