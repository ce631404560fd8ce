#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "pcorr/dyadic.hpp"
#include "pcorr/errors.hpp"
#include "pcorr/rng.hpp"

using namespace pcorr;

namespace {

RealSeq explicit_seq(std::vector<double> v) {
    const auto n = static_cast<std::int64_t>(v.size());
    return materialize(SequenceSpec::explicit_seq(std::move(v)), n);
}

std::vector<double> uniform_band(Rng& rng, std::size_t n, double lo, double hi) {
    std::vector<double> z;
    for (std::size_t i = 0; i < n; ++i) z.push_back(rng.uniform(lo, hi));
    return z;
}

} // namespace

TEST_CASE("absolute difference multiset") {
    const auto a = abs_differences(explicit_seq({1.0, 2.0}));
    CHECK(a == std::vector<double>{1.0, 1.0});

    auto b = abs_differences(explicit_seq({1.0, 4.0, 9.0}));
    std::sort(b.begin(), b.end());
    CHECK(b == std::vector<double>{3.0, 3.0, 5.0, 5.0, 8.0, 8.0});
    CHECK(b.size() == 3 * 3 - 3);

    CHECK_THROWS_AS(abs_differences(explicit_seq({1.0})), TooShort);
}

TEST_CASE("dyadic block counts on tiny multisets") {
    const std::vector<double> ones{1.0, 1.0};
    CHECK(count_dyadic_brute(ones, 1) == 4); // all four (m, n) at j1 = j2 = 1

    const std::vector<double> z{1.0, 2.0};
    // only the equal-value pairs resolve below 1
    CHECK(count_dyadic_brute(z, 1) == 2);
    // u = 2: j in {2, 3}; each equal-value pair hits at j1 = j2 twice
    CHECK(count_dyadic_brute(z, 2) == 4);

    CHECK_THROWS_AS(count_dyadic_brute(z, 0), BadParams);
    const std::vector<double> one{1.0};
    CHECK_THROWS_AS(count_dyadic_brute(one, 16), GuardExceeded);
}

TEST_CASE("banded count filters before counting") {
    const std::vector<double> z{1.0, 2.0, 40.0};
    CHECK(count_dyadic_brute_band(z, 1, 0.5, 3.0) == 2);
    CHECK(count_dyadic_brute_band(z, 1, 100.0, 200.0) == 0);
}

TEST_CASE("single-occupied-bin binning") {
    const std::vector<double> z{5.0, 5.0};
    BinParams p;
    p.mode = BinMode::case2;
    p.beta = 1.0;
    const auto bin = build_binning(z, 2, 1, p);
    CHECK(bin.T == 4.0);
    CHECK(bin.scale == 1.0);
    CHECK(bin.z_lo == 2.0);
    CHECK(bin.z_hi == 64.0);
    REQUIRE(bin.b.size() == 1);
    CHECK(bin.b.at(5) == 2);
    REQUIRE(bin.a.size() == 1);
    CHECK(bin.a.begin()->second == 2.0);
    CHECK(bin.a.begin()->first == bin.h_index(5.0));

    // constant |P| and the closed-form weighted l2 mass
    const auto pn = p_norm_quadrature(bin);
    CHECK(pn.bilinear ==
          doctest::Approx(4.0 * std::sqrt(2.0 * std::numbers::pi) * 4.0).epsilon(1e-12));
    CHECK(pn.quadrature == doctest::Approx(pn.bilinear).epsilon(1e-6));
    CHECK(std::abs(eval_P(bin, 3.7)) == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("mass bookkeeping on random instances") {
    Rng rng(substream_seed(31, "dyadic-mass"));
    for (int mode = 0; mode < 2; ++mode) {
        BinParams p;
        p.mode = mode == 0 ? BinMode::case2 : BinMode::rescaled;
        p.beta = mode == 0 ? 0.5 : 1.0;
        p.eps = 0.25;
        const std::int64_t N = 16;
        const double lo = std::pow(16.0, p.beta);
        auto z = uniform_band(rng, 300, lo * 0.5, lo * 40.0); // spills past the band
        const auto bin = build_binning(z, N, 2, p);

        std::int64_t residents = 0;
        for (double v : z)
            if (v >= bin.z_lo && v < bin.z_hi) ++residents;
        std::int64_t sum_b = 0;
        double sum_b2 = 0.0;
        for (const auto& [k, c] : bin.b) {
            sum_b += c;
            sum_b2 += static_cast<double>(c) * static_cast<double>(c);
        }
        CHECK(sum_b == residents);

        double sum_a2 = 0.0;
        for (const auto& [h, ah] : bin.a) sum_a2 += ah * ah;
        CHECK(sum_a2 == doctest::Approx(sum_b2).epsilon(1e-12));

        // ordered same-bin pairs, counted directly
        std::int64_t same = 0;
        for (double v : z) {
            if (v < bin.z_lo || v >= bin.z_hi) continue;
            for (double w : z) {
                if (w < bin.z_lo || w >= bin.z_hi) continue;
                if (std::floor(v / bin.scale) == std::floor(w / bin.scale)) ++same;
            }
        }
        CHECK(static_cast<double>(same) == doctest::Approx(sum_b2).epsilon(1e-12));
        // same-bin values sit within one bin width of each other
        std::int64_t close = 0;
        for (double v : z) {
            if (v < bin.z_lo || v >= bin.z_hi) continue;
            for (double w : z) {
                if (w < bin.z_lo || w >= bin.z_hi) continue;
                if (std::fabs(v - w) < bin.scale) ++close;
            }
        }
        CHECK(same <= close);
        // Cauchy-Schwarz across occupied bins
        CHECK(static_cast<double>(sum_b) * static_cast<double>(sum_b) <=
              static_cast<double>(bin.b.size()) * sum_b2 + 1e-9);
    }
}

TEST_CASE("interval index partitions [1, inf)") {
    const std::vector<double> z{5.0, 5.0};
    BinParams p;
    p.mode = BinMode::case2;
    p.beta = 1.0;
    const auto bin = build_binning(z, 2, 1, p); // T = 4
    const double L = std::log1p(1.0 / bin.T);
    Rng rng(substream_seed(32, "dyadic-hidx"));
    for (int i = 0; i < 500; ++i) {
        const double y = rng.uniform(1.0, 5000.0);
        const auto h = bin.h_index(y);
        CHECK(std::ceil(std::exp(static_cast<double>(h) * L)) <= y);
        CHECK(std::ceil(std::exp(static_cast<double>(h + 1) * L)) > y);
    }
    CHECK(bin.h_index(1.0) == 0);
    CHECK_THROWS_AS(bin.h_index(0.5), OutOfBand);
}

TEST_CASE("binning parameter validation") {
    const std::vector<double> z{5.0, 5.0};
    BinParams p;
    p.mode = BinMode::case1;
    p.eps = 0.1;
    CHECK_THROWS_AS(build_binning(z, 2, 0, p), BadParams);
    CHECK_THROWS_AS(build_binning(z, 1, 1, p), BadParams);
    p.eps = 0.0;
    CHECK_THROWS_AS(build_binning(z, 2, 1, p), BadParams);
    p.eps = 0.3;
    CHECK_THROWS_AS(build_binning(z, 2, 1, p), BadParams);
    p.mode = BinMode::case2;
    p.beta = 0.2;
    CHECK_THROWS_AS(build_binning(z, 2, 1, p), BadParams);
    p.beta = 1.05;
    CHECK_THROWS_AS(build_binning(z, 2, 1, p), BadParams);
}

TEST_CASE("exponential sum evaluation") {
    Rng rng(substream_seed(33, "dyadic-evalp"));
    BinParams p;
    p.mode = BinMode::case2;
    p.beta = 0.5;
    auto z = uniform_band(rng, 200, 4.0, 128.0);
    const auto bin = build_binning(z, 16, 2, p);
    double asum = 0.0;
    for (const auto& [h, ah] : bin.a) asum += ah;
    const auto p0 = eval_P(bin, 0.0);
    CHECK(p0.real() == doctest::Approx(asum).epsilon(1e-12));
    CHECK(p0.imag() == doctest::Approx(0.0).epsilon(1e-12));
    for (int i = 0; i < 100; ++i)
        CHECK(std::abs(eval_P(bin, rng.uniform(-50.0, 50.0))) <= asum * (1.0 + 1e-12));
}

TEST_CASE("weighted l2 norm: quadrature and bilinear forms agree") {
    Rng rng(substream_seed(34, "dyadic-pnorm"));
    for (int i = 0; i < 5; ++i) {
        BinParams p;
        p.mode = i % 2 == 0 ? BinMode::case2 : BinMode::rescaled;
        p.beta = 0.5 + 0.1 * i;
        p.eps = 0.2;
        const std::int64_t N = 16 + 4 * i;
        const double lo = std::pow(static_cast<double>(N), p.beta);
        auto z = uniform_band(rng, 150, lo, 32.0 * lo);
        const auto bin = build_binning(z, N, 1 + i % 3, p);
        const auto pn = p_norm_quadrature(bin); // throws on disagreement
        CHECK(pn.quadrature > 0.0);
        double sum_a2 = 0.0;
        for (const auto& [h, ah] : bin.a) sum_a2 += ah * ah;
        // the Gaussian-window mass per frequency is T sqrt(2 pi); overlap
        // between neighbouring frequencies keeps the total within a small
        // constant of the diagonal
        CHECK(pn.bilinear >= bin.T * std::sqrt(2.0 * std::numbers::pi) * sum_a2);
        CHECK(pn.bilinear <= 8.0 * bin.T * sum_a2);
    }
}

TEST_CASE("ratio constraint between bins") {
    BinParams p;
    p.mode = BinMode::case2;
    p.beta = 1.0;
    const std::vector<double> z{400.0, 805.0, 1600.0};
    const auto bin = build_binning(z, 100, 1, p); // T = 200, band [100, 3200)

    CHECK(check_bin_constraint(bin, 1, 1, 1600.0, 1600.0));
    CHECK(check_bin_constraint(bin, 3, 3, 400.0, 400.0));
    // value ratio 4 against j-ratio 1 misses by far more than 4/T
    CHECK_FALSE(check_bin_constraint(bin, 1, 1, 1600.0, 400.0));
    CHECK_FALSE(check_bin_constraint(bin, 1, 1, 400.0, 1600.0));
    // symmetric under swapping both the frequencies and the values
    CHECK(check_bin_constraint(bin, 2, 4, 400.0, 805.0) ==
          check_bin_constraint(bin, 4, 2, 805.0, 400.0));
    CHECK_THROWS_AS(check_bin_constraint(bin, 1, 1, 1.0, 400.0), OutOfBand);
}

TEST_CASE("upper bound captures every resolved tuple on a top-slice instance") {
    // values in the top quarter of the band keep the rounding slop of the
    // ratio-partition far below the 4/T allowance
    BinParams p;
    p.mode = BinMode::case2;
    p.beta = 0.5;
    std::vector<double> z;
    for (int i = 0; i < 20; ++i) z.push_back(64.0 + 3.1 * i);
    for (int u : {1, 2}) {
        const auto bin = build_binning(z, 16, u, p);
        const std::int64_t jlo = std::int64_t(1) << (u - 1);
        const std::int64_t jhi = std::int64_t(1) << u;
        std::int64_t cnt = 0;
        for (double zm : z) {
            for (double zn : z) {
                for (std::int64_t j1 = jlo; j1 < jhi; ++j1) {
                    for (std::int64_t j2 = jlo; j2 < jhi; ++j2) {
                        if (std::fabs(j1 * zm - j2 * zn) >= 1.0) continue;
                        ++cnt;
                        CHECK(check_bin_constraint(bin, j1, j2, zm, zn));
                    }
                }
            }
        }
        CHECK(cnt == count_dyadic_brute_band(z, u, bin.z_lo, bin.z_hi));
        const double ub = dyadic_upper_bound(bin, u);
        CHECK(ub >= 0.0);
        CHECK(static_cast<double>(cnt) <= 16.0 * ub + 1e-9);
    }
}

TEST_CASE("upper bound dominates the banded count on random instances") {
    Rng rng(substream_seed(35, "dyadic-dom"));
    BinParams p;
    p.mode = BinMode::case2;
    p.beta = 0.5;
    for (int i = 0; i < 6; ++i) {
        auto z = uniform_band(rng, 120, 4.0, 128.0);
        for (int u : {1, 2}) {
            const auto bin = build_binning(z, 16, u, p);
            const auto cnt = count_dyadic_brute_band(z, u, bin.z_lo, bin.z_hi);
            const double ub = dyadic_upper_bound(bin, u);
            CHECK(static_cast<double>(cnt) <= 16.0 * ub + 1e-9);
        }
    }
}

TEST_CASE("shifted bin products obey Cauchy-Schwarz across interval pairs") {
    Rng rng(substream_seed(36, "dyadic-cs"));
    BinParams p;
    p.mode = BinMode::case2;
    p.beta = 0.5;
    auto z = uniform_band(rng, 250, 4.0, 128.0);
    const auto bin = build_binning(z, 16, 2, p);
    const std::int64_t j1 = 3, j2 = 2; // j1 >= j2 keeps k -> l(k) injective
    for (const auto& [h1, a1] : bin.a) {
        for (const auto& [h2, a2] : bin.a) {
            for (std::int64_t v = -4; v <= 3; ++v) {
                double lhs = 0.0;
                for (const auto& [k, bk] : bin.b) {
                    if (bin.h_index(static_cast<double>(k) * bin.scale) != h1) continue;
                    const std::int64_t target = (j1 * k + j2 - 1) / j2 + v;
                    auto it = bin.b.find(target);
                    if (it == bin.b.end()) continue;
                    if (bin.h_index(static_cast<double>(target) * bin.scale) != h2) continue;
                    lhs += static_cast<double>(bk) * static_cast<double>(it->second);
                }
                CHECK(lhs <= a1 * a2 + 1e-9);
            }
        }
    }
}

TEST_CASE("diagnostics payload") {
    const std::vector<double> z{5.0, 5.0, 7.5};
    BinParams p;
    p.mode = BinMode::case2;
    p.beta = 1.0;
    auto bin = build_binning(z, 2, 1, p);
    bin.max_ratio_logs["demo"] = 1.5;
    const auto d = bin.diagnostics();
    CHECK(d.at("T") == 4.0);
    CHECK(d.at("scale") == 1.0);
    CHECK(d.at("band")[0] == 2.0);
    CHECK(d.at("band")[1] == 64.0);
    CHECK(d.at("occupied_bins") == 2);
    CHECK(d.at("sum_b") == 3);
    CHECK(d.at("sum_b2") == 5.0);
    CHECK(d.at("max_ratio_logs").at("demo") == 1.5);
}
