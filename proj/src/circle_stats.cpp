#include "pcorr/circle_stats.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "pcorr/errors.hpp"

namespace pcorr {

double nearest_int_dist(double x) {
    // round() ties go away from zero; either neighbor gives distance 1/2
    return std::fabs(x - std::round(x));
}

// (a*x) mod 1 via two-product compensation: the fma recovers the rounding
// error of a*x, which would otherwise swamp the fractional part when the
// product is large.
double mul_mod1(double a, double x) {
    const double p = a * x;
    const double err = std::fma(a, x, -p);
    double f = p - std::round(p); // exact: round(p) within a factor 2 of p
    f += err;
    f -= std::floor(f);
    if (f >= 1.0) f -= 1.0;
    return f;
}

namespace {

// single comparison function shared by both paths so ties cannot diverge
inline bool window_accepts(double dist, double half_width) { return dist <= half_width; }

} // namespace

std::vector<double> frac_parts(const RealSeq& seq, double alpha) {
    std::vector<double> out(seq.values.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = mul_mod1(alpha, seq.values[i]);
    return out;
}

std::string PairCorrEstimate::csv_rows() const {
    std::ostringstream os;
    os.precision(17);
    for (const auto& e : entries)
        os << N << ',' << alpha << ',' << e.s << ',' << e.pair_count << ',' << e.r2 << '\n';
    return os.str();
}

PairCorrEstimate pair_correlation_brute(const RealSeq& seq, double alpha,
                                        std::span<const double> s_list) {
    const std::int64_t N = seq.size();
    if (N > 5000) throw GuardExceeded("pair_correlation_brute limited to N <= 5000");
    PairCorrEstimate est;
    est.N = N;
    est.alpha = alpha;
    for (double s : s_list) {
        const double w = s / static_cast<double>(N);
        std::int64_t count = 0;
        for (std::int64_t m = 0; m < N; ++m) {
            for (std::int64_t n = 0; n < N; ++n) {
                if (m == n) continue;
                const double d =
                    nearest_int_dist(mul_mod1(alpha, seq.values[static_cast<std::size_t>(m)] -
                                                         seq.values[static_cast<std::size_t>(n)]));
                if (window_accepts(d, w)) ++count;
            }
        }
        est.entries.push_back({s, count, static_cast<double>(count) / static_cast<double>(N)});
    }
    return est;
}

PairCorrEstimate pair_correlation(const RealSeq& seq, double alpha,
                                  std::span<const double> s_list) {
    const std::int64_t N = seq.size();
    PairCorrEstimate est;
    est.N = N;
    est.alpha = alpha;
    if (N < 2) {
        for (double s : s_list) est.entries.push_back({s, 0, 0.0});
        return est;
    }

    std::vector<double> y = frac_parts(seq, alpha);
    std::sort(y.begin(), y.end());
    const std::size_t n = y.size();

    for (double s : s_list) {
        const double w = s / static_cast<double>(N);
        std::int64_t count;
        if (2.0 * w >= 1.0) {
            count = N * (N - 1); // window covers the whole circle
        } else {
            // each qualifying unordered pair has exactly one forward
            // representation with gap <= w (2w < 1 excludes double hits)
            std::int64_t fwd = 0;
            std::size_t j = 0;
            for (std::size_t i = 0; i < n; ++i) {
                if (j < i + 1) j = i + 1;
                while (j < i + n) {
                    const double gap = (j < n) ? y[j] - y[i] : y[j - n] + 1.0 - y[i];
                    if (!window_accepts(gap, w)) break;
                    ++j;
                }
                fwd += static_cast<std::int64_t>(j - i - 1);
            }
            count = 2 * fwd;
        }
        est.entries.push_back({s, count, static_cast<double>(count) / static_cast<double>(N)});
    }
    return est;
}

} // namespace pcorr
