#include "pcorr/dyadic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <json.hpp>

#include "pcorr/errors.hpp"

namespace pcorr {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double log_ratio(const DyadicBinning& bin) { return std::log1p(1.0 / bin.T); }

// left endpoint of I_h: ceil((1 + 1/T)^h)
double ceil_pow(double L, std::int64_t h) {
    return std::ceil(std::exp(static_cast<double>(h) * L));
}

} // namespace

std::vector<double> abs_differences(const RealSeq& seq) {
    const std::size_t n = seq.values.size();
    if (n < 2) throw TooShort("abs_differences requires N >= 2");
    std::vector<double> z;
    z.reserve(n * n - n);
    for (std::size_t m = 0; m < n; ++m)
        for (std::size_t k = 0; k < n; ++k)
            if (m != k) z.push_back(std::fabs(seq.values[m] - seq.values[k]));
    return z;
}

std::int64_t count_dyadic_brute(std::span<const double> z, int u) {
    if (u < 1) throw BadParams("count_dyadic_brute requires u >= 1");
    const double cost = static_cast<double>(z.size()) * std::pow(4.0, u);
    if (cost > 1e9) throw GuardExceeded("count_dyadic_brute: |z| * 4^u exceeds 1e9");
    const std::int64_t jlo = std::int64_t(1) << (u - 1);
    const std::int64_t jhi = std::int64_t(1) << u;
    std::int64_t c = 0;
    for (double zm : z) {
        for (double zn : z) {
            for (std::int64_t j1 = jlo; j1 < jhi; ++j1) {
                // j2 window: |j1 zm - j2 zn| < 1; candidates tested exactly
                const double center = j1 * zm / zn;
                const double halfw = 1.0 / zn;
                std::int64_t lo = std::max<std::int64_t>(
                    jlo, static_cast<std::int64_t>(std::floor(center - halfw)) - 1);
                std::int64_t hi = std::min<std::int64_t>(
                    jhi - 1, static_cast<std::int64_t>(std::ceil(center + halfw)) + 1);
                for (std::int64_t j2 = lo; j2 <= hi; ++j2)
                    if (std::fabs(j1 * zm - j2 * zn) < 1.0) ++c;
            }
        }
    }
    return c;
}

std::int64_t count_dyadic_brute_band(std::span<const double> z, int u, double lo, double hi) {
    std::vector<double> zb;
    for (double v : z)
        if (v >= lo && v < hi) zb.push_back(v);
    if (zb.empty()) return 0;
    return count_dyadic_brute(zb, u);
}

std::int64_t DyadicBinning::h_index(double y) const {
    if (!(y >= 1.0)) throw OutOfBand("h_index requires y >= 1");
    const double L = std::log1p(1.0 / T);
    // largest h with ceil((1+1/T)^h) <= y; the partition property then gives
    // ceil((1+1/T)^{h+1}) > y, so this h is the containing interval even when
    // the ceilinged endpoints collapse some intervals to empty
    std::int64_t hi = static_cast<std::int64_t>(std::log(y) / L) + 2;
    while (ceil_pow(L, hi) <= y) hi += 2; // guard against log rounding
    std::int64_t lo = 0;
    while (hi - lo > 1) {
        const std::int64_t mid = lo + (hi - lo) / 2;
        (ceil_pow(L, mid) <= y ? lo : hi) = mid;
    }
    return lo;
}

DyadicBinning build_binning(std::span<const double> z, std::int64_t N, int u,
                            const BinParams& params) {
    if (u < 1) throw BadParams("build_binning requires u >= 1");
    if (N < 2) throw BadParams("build_binning requires N >= 2");
    const double dN = static_cast<double>(N);

    DyadicBinning bin;
    bin.N = N;
    bin.u = u;
    bin.params = params;
    switch (params.mode) {
        case BinMode::case1:
            if (!(params.eps > 0.0 && params.eps <= 0.25))
                throw BadParams("case1 requires eps in (0, 1/4]");
            bin.T = std::pow(2.0, u) * std::pow(dN, 1.0 + params.eps / 2.0);
            bin.scale = 1.0;
            bin.z_lo = std::pow(dN, 1.01);
            bin.z_hi = kInf;
            break;
        case BinMode::case2:
            if (!(params.beta >= 0.25 && params.beta <= 1.01))
                throw BadParams("case2 requires beta in [1/4, 1.01]");
            bin.T = std::pow(2.0, u) * std::pow(dN, params.beta);
            bin.scale = 1.0;
            bin.z_lo = std::pow(dN, params.beta);
            bin.z_hi = 32.0 * bin.z_lo;
            break;
        case BinMode::rescaled:
            if (!(params.beta >= 0.25 && params.beta <= 1.01))
                throw BadParams("rescaled requires beta in [1/4, 1.01]");
            if (!(params.eps > 0.0 && params.eps <= 0.25))
                throw BadParams("rescaled requires eps in (0, 1/4]");
            bin.T = std::pow(2.0, u) *
                    std::pow(dN, std::min(params.beta - params.eps, 1.0 + params.eps));
            bin.scale = std::pow(2.0, -u);
            bin.z_lo = std::pow(dN, params.beta);
            bin.z_hi = 32.0 * bin.z_lo;
            break;
    }

    for (double v : z) {
        if (v < bin.z_lo || v >= bin.z_hi) continue;
        const auto k = static_cast<std::int64_t>(std::floor(v / bin.scale));
        ++bin.b[k];
    }
    std::map<std::int64_t, double> sq;
    for (const auto& [k, count] : bin.b) {
        const std::int64_t h = bin.h_index(static_cast<double>(k) * bin.scale);
        sq[h] += static_cast<double>(count) * static_cast<double>(count);
    }
    for (const auto& [h, s] : sq) bin.a[h] = std::sqrt(s);
    return bin;
}

std::complex<double> eval_P(const DyadicBinning& bin, double t) {
    const double L = log_ratio(bin);
    std::complex<double> s = 0.0;
    for (const auto& [h, ah] : bin.a)
        s += ah * std::polar(1.0, static_cast<double>(h) * L * t);
    return s;
}

PNormResult p_norm_quadrature(const DyadicBinning& bin) {
    PNormResult res;
    if (bin.a.empty()) return res;
    const double L = log_ratio(bin);
    const double T = bin.T;
    const double c = T * L; // ~1; spacing of the bilinear Gaussian

    std::vector<std::int64_t> hs;
    std::vector<double> as;
    for (const auto& [h, ah] : bin.a) {
        hs.push_back(h);
        as.push_back(ah);
    }

    // exact bilinear form T sqrt(2 pi) sum a_h1 a_h2 exp(-(c (h1-h2))^2 / 2)
    double bl = 0.0;
    for (std::size_t i = 0; i < hs.size(); ++i) {
        bl += as[i] * as[i];
        for (std::size_t j = i + 1; j < hs.size(); ++j) {
            const double d = c * static_cast<double>(hs[j] - hs[i]);
            if (d > 14.0) break; // e^{-98}; hs ascending
            bl += 2.0 * as[i] * as[j] * std::exp(-0.5 * d * d);
        }
    }
    res.bilinear = T * std::sqrt(2.0 * std::numbers::pi) * bl;

    // direct trapezoid of |P(t)|^2 Phi(t/T) over |t| <= 8T; the integrand is
    // band-limited (top frequency H L) times a Gaussian window, so sampling
    // >= 16 points per fastest period makes the trapezoid error negligible
    const std::int64_t h0 = hs.front();
    const std::int64_t H = hs.back() - h0;
    std::vector<double> dense(static_cast<std::size_t>(H) + 1, 0.0);
    for (std::size_t i = 0; i < hs.size(); ++i)
        dense[static_cast<std::size_t>(hs[i] - h0)] = as[i];

    const double omega = std::max(static_cast<double>(H) * L, 1e-12);
    const double step = std::min(2.0 * std::numbers::pi / (16.0 * omega), T / 64.0);
    const double tmax = 8.0 * T;
    const auto nodes = static_cast<std::int64_t>(tmax / step);
    if (nodes > 50'000'000) throw GuardExceeded("p_norm_quadrature: instance too large");

    auto integrand = [&](double t) {
        const std::complex<double> w = std::polar(1.0, L * t);
        std::complex<double> p = 0.0; // Horner over the dense a array
        for (std::size_t d = dense.size(); d-- > 0;) p = p * w + dense[d];
        const double tt = t / T;
        return std::norm(p) * std::exp(-0.5 * tt * tt);
    };
    double sum = 0.5 * integrand(0.0); // even integrand: fold t < 0
    for (std::int64_t q = 1; q <= nodes; ++q) sum += integrand(step * static_cast<double>(q));
    res.quadrature = 2.0 * step * sum;

    const double rel = std::fabs(res.quadrature - res.bilinear) /
                       std::max(std::fabs(res.bilinear), 1e-300);
    if (rel > 1e-6)
        throw QuadratureDivergence("p-norm quadrature disagrees with the bilinear form");
    return res;
}

bool check_bin_constraint(const DyadicBinning& bin, std::int64_t j1, std::int64_t j2,
                          double z_m, double z_n) {
    if (z_m < bin.z_lo || z_m >= bin.z_hi || z_n < bin.z_lo || z_n >= bin.z_hi)
        throw OutOfBand("z value outside the binning's band");
    if (j1 < j2) {
        std::swap(j1, j2);
        std::swap(z_m, z_n);
    }
    const double L = log_ratio(bin);
    const auto km = static_cast<std::int64_t>(std::floor(z_m / bin.scale));
    const auto kn = static_cast<std::int64_t>(std::floor(z_n / bin.scale));
    const std::int64_t h1 = bin.h_index(static_cast<double>(km) * bin.scale);
    const std::int64_t h2 = bin.h_index(static_cast<double>(kn) * bin.scale);
    const double lhs = std::exp(static_cast<double>(h1 - h2) * L);
    return std::fabs(lhs - static_cast<double>(j2) / static_cast<double>(j1)) <= 4.0 / bin.T;
}

double dyadic_upper_bound(const DyadicBinning& bin, int u) {
    if (u < 1) throw BadParams("dyadic_upper_bound requires u >= 1");
    if (bin.a.empty()) return 0.0;
    const double L = log_ratio(bin);
    const std::int64_t jlo = std::int64_t(1) << (u - 1);
    const std::int64_t jhi = std::int64_t(1) << u;
    const std::int64_t h_min = bin.a.begin()->first;
    const std::int64_t h_max = bin.a.rbegin()->first;

    // lag correlations C_d = sum_h a_h a_{h+d}, cached on demand
    std::map<std::int64_t, double> corr;
    auto corr_at = [&](std::int64_t d) {
        auto it = corr.find(d);
        if (it != corr.end()) return it->second;
        double s = 0.0;
        for (const auto& [h, ah] : bin.a) {
            auto jt = bin.a.find(h + d);
            if (jt != bin.a.end()) s += ah * jt->second;
        }
        corr[d] = s;
        return s;
    };

    double total = 0.0;
    for (std::int64_t j1 = jlo; j1 < jhi; ++j1) {
        for (std::int64_t j2 = jlo; j2 < jhi; ++j2) {
            // constraint |e^{dL} - j2/j1| <= 4/T confines d = h1 - h2 to a
            // short interval around log(j2/j1)/L
            const double r = static_cast<double>(j2) / static_cast<double>(j1);
            const double rhi = r + 4.0 / bin.T;
            const double rlo = r - 4.0 / bin.T;
            std::int64_t dhi = static_cast<std::int64_t>(std::floor(std::log(rhi) / L)) + 2;
            std::int64_t dlo =
                rlo > 0.0 ? static_cast<std::int64_t>(std::ceil(std::log(rlo) / L)) - 2
                          : h_min - h_max;
            dlo = std::max(dlo, h_min - h_max);
            dhi = std::min(dhi, h_max - h_min);
            for (std::int64_t d = dlo; d <= dhi; ++d) {
                const double lhs = std::exp(static_cast<double>(d) * L);
                if (std::fabs(lhs - r) <= 4.0 / bin.T) total += corr_at(d);
            }
        }
    }
    return total;
}

nlohmann::json DyadicBinning::diagnostics() const {
    std::int64_t sum_b = 0;
    double sum_b2 = 0.0;
    for (const auto& [k, count] : b) {
        sum_b += count;
        sum_b2 += static_cast<double>(count) * static_cast<double>(count);
    }
    nlohmann::json j{{"T", T},
                     {"scale", scale},
                     {"band", {z_lo, std::isfinite(z_hi) ? nlohmann::json(z_hi) : nlohmann::json()}},
                     {"occupied_bins", b.size()},
                     {"sum_b", sum_b},
                     {"sum_b2", sum_b2},
                     {"max_ratio_logs", nlohmann::json::object()}};
    for (const auto& [name, v] : max_ratio_logs) j["max_ratio_logs"][name] = v;
    return j;
}

} // namespace pcorr
