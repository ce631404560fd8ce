#include "pcorr/energy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "pcorr/errors.hpp"
#include "pcorr/external_sort.hpp"

namespace pcorr {

namespace {

// single comparator for the inequality |d - d'| < gamma, shared by every
// counting path: d' qualifies iff d' < d + gamma and not d' <= d - gamma
inline bool below_hi(double dprime, double d, double gamma) { return dprime < d + gamma; }
inline bool below_lo(double dprime, double d, double gamma) { return dprime <= d - gamma; }

// #{(i, j) : |d_i - d_j| < gamma} over a sorted vector
std::int64_t count_pairs_sorted(std::span<const double> d, double gamma) {
    const std::size_t n = d.size();
    std::int64_t c = 0;
    std::size_t hi = 0, lo = 0;
    for (std::size_t i = 0; i < n; ++i) {
        while (hi < n && below_hi(d[hi], d[i], gamma)) ++hi;
        while (lo < n && below_lo(d[lo], d[i], gamma)) ++lo;
        c += static_cast<std::int64_t>(hi - lo);
    }
    return c;
}

std::vector<double> all_differences(const RealSeq& seq) {
    const std::size_t n = seq.values.size();
    std::vector<double> d;
    d.reserve(n * n);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) d.push_back(seq.values[a] - seq.values[b]);
    return d;
}

std::int64_t count_pairs_external(const RealSeq& seq, double gamma, std::size_t mem_budget) {
    ExternalSorter sorter(mem_budget / sizeof(double));
    const std::size_t n = seq.values.size();
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) sorter.push(seq.values[a] - seq.values[b]);
    sorter.finish();

    // three monotone cursors over the merged sorted file
    SortedReader main(sorter.sorted_path());
    SortedReader hic(sorter.sorted_path());
    SortedReader loc(sorter.sorted_path());
    std::int64_t c = 0, hi_n = 0, lo_n = 0;
    while (!main.done()) {
        const double v = main.peek();
        while (!hic.done() && below_hi(hic.peek(), v, gamma)) {
            hic.advance();
            ++hi_n;
        }
        while (!loc.done() && below_lo(loc.peek(), v, gamma)) {
            loc.advance();
            ++lo_n;
        }
        c += hi_n - lo_n;
        main.advance();
    }
    return c;
}

} // namespace

std::int64_t energy_brute(const RealSeq& seq, double gamma) {
    const std::int64_t N = seq.size();
    if (N > 60) throw GuardExceeded("energy_brute limited to N <= 60");
    if (!(gamma > 0.0)) throw BadParams("energy requires gamma > 0");
    const auto& x = seq.values;
    std::int64_t c = 0;
    for (std::int64_t n1 = 0; n1 < N; ++n1)
        for (std::int64_t n2 = 0; n2 < N; ++n2)
            for (std::int64_t n3 = 0; n3 < N; ++n3)
                for (std::int64_t n4 = 0; n4 < N; ++n4) {
                    const double v = x[static_cast<std::size_t>(n1)] - x[static_cast<std::size_t>(n2)] +
                                     x[static_cast<std::size_t>(n3)] - x[static_cast<std::size_t>(n4)];
                    if (std::fabs(v) < gamma) ++c;
                }
    return c;
}

std::int64_t energy_fast(const RealSeq& seq, double gamma, const EnergyOptions& opt) {
    if (!(gamma > 0.0)) throw BadParams("energy requires gamma > 0");
    const std::size_t n = seq.values.size();
    const std::size_t bytes = n * n * sizeof(double);
    if (bytes <= opt.mem_budget) {
        auto d = all_differences(seq);
        std::sort(d.begin(), d.end());
        return count_pairs_sorted(d, gamma);
    }
    if (!opt.allow_chunking)
        throw MemoryBudgetExceeded("difference multiset exceeds the memory budget");
    return count_pairs_external(seq, gamma, opt.mem_budget);
}

std::int64_t energy_localized(const RealSeq& seq, double gamma, double lo, double hi) {
    if (!(gamma > 0.0)) throw BadParams("energy requires gamma > 0");
    if (!(lo >= 0.0) || !(lo < hi)) throw BadParams("band requires 0 <= lo < hi");
    const std::size_t n = seq.values.size();
    std::vector<double> d;
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            const double v = seq.values[a] - seq.values[b];
            const double av = std::fabs(v);
            if (av >= lo && av < hi) d.push_back(v);
        }
    std::sort(d.begin(), d.end());
    return count_pairs_sorted(d, gamma);
}

EnergyCurve gamma_scan(const RealSeq& seq, std::vector<double> gammas) {
    for (double g : gammas)
        if (!(g > 0.0)) throw BadParams("gamma_scan requires positive gammas");
    std::sort(gammas.begin(), gammas.end(), std::greater<>());

    auto d = all_differences(seq);
    std::sort(d.begin(), d.end());

    EnergyCurve curve;
    curve.N = seq.size();
    curve.gammas = std::move(gammas);
    curve.trivial = 2 * curve.N * curve.N - curve.N;
    for (double g : curve.gammas) {
        const std::int64_t total = count_pairs_sorted(d, g);
        curve.totals.push_back(total);
        curve.nontrivial.push_back(total - curve.trivial);
    }
    return curve;
}

std::string EnergyCurve::csv_rows() const {
    std::ostringstream os;
    os.precision(17);
    for (std::size_t i = 0; i < gammas.size(); ++i)
        os << N << ',' << gammas[i] << ',' << totals[i] << ',' << trivial << ','
           << nontrivial[i] << '\n';
    return os.str();
}

ScalingFit fit_scaling(std::span<const std::pair<double, double>> points) {
    if (points.size() < 3) throw Degenerate("fit_scaling requires at least 3 points");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(points.size());
    for (const auto& [N, count] : points) {
        if (!(N > 0.0) || !(count > 0.0))
            throw Degenerate("fit_scaling requires positive N and counts");
        const double lx = std::log(N), ly = std::log(count);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    const double det = n * sxx - sx * sx;
    if (std::fabs(det) < 1e-12 * n * sxx) throw Degenerate("fit_scaling: N values not distinct");
    ScalingFit fit;
    fit.slope = (n * sxy - sx * sy) / det;
    fit.intercept = (sy - fit.slope * sx) / n;
    double ss = 0;
    for (const auto& [N, count] : points) {
        const double r = std::log(count) - (fit.intercept + fit.slope * std::log(N));
        ss += r * r;
    }
    fit.residual = std::sqrt(ss / n);
    return fit;
}

} // namespace pcorr
