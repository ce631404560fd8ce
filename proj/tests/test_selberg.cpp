#include <doctest.h>

#include <cmath>
#include <numbers>

#include <json.hpp>

#include "pcorr/errors.hpp"
#include "pcorr/rng.hpp"
#include "pcorr/selberg.hpp"

using namespace pcorr;

namespace {

double indicator(double x, double delta) {
    const double d = std::fabs(x - std::round(x));
    return d <= delta ? 1.0 : 0.0;
}

} // namespace

TEST_CASE("mean identity and the plus/minus gap") {
    for (int K : {5, 10, 100}) {
        for (double s : {0.5, 1.0, 3.0}) {
            const std::int64_t N = 10;
            if (2.0 * s / N >= 1.0) continue;
            const auto plus = build_selberg(K, s, N, PolySign::plus);
            const auto minus = build_selberg(K, s, N, PolySign::minus);
            CHECK(plus.c(0).real() - minus.c(0).real() ==
                  doctest::Approx(2.0 / (K + 1)).epsilon(1e-14));
            CHECK(plus.c(0).real() ==
                  doctest::Approx(2.0 * s / N + 1.0 / (K + 1)).epsilon(1e-14));
        }
    }
}

TEST_CASE("majorant at the interval center") {
    const auto plus = build_selberg(12, 1.0, 10, PolySign::plus);
    CHECK(eval_trigpoly(plus, 0.0) >= 1.0);
}

TEST_CASE("sandwich on a dense grid with coefficient bounds") {
    const int K = 10;
    const double s = 1.0;
    const std::int64_t N = 10;
    const auto plus = build_selberg(K, s, N, PolySign::plus);
    const auto minus = build_selberg(K, s, N, PolySign::minus);
    const double delta = s / static_cast<double>(N);
    const int grid = 10 * (K + 1);
    for (int g = 0; g < grid; ++g) {
        const double x = static_cast<double>(g) / grid;
        const double ind = indicator(x, delta);
        CHECK(eval_trigpoly(plus, x) >= ind - 1e-10);
        CHECK(eval_trigpoly(minus, x) <= ind + 1e-10);
        CHECK(eval_trigpoly(plus, x) >= -1e-10);
    }
    for (int j = 1; j <= K; ++j) {
        const double bound =
            std::min(2.0 * delta, 1.0 / (std::numbers::pi * j)) + 1.0 / (K + 1);
        CHECK(std::abs(plus.c(j)) <= bound);
        CHECK(std::abs(minus.c(j)) <= bound);
        CHECK(std::abs(plus.c(-j) - std::conj(plus.c(j))) == 0.0);
    }
}

TEST_CASE("interval too wide rejected") {
    CHECK_THROWS_AS(build_selberg(10, 5.0, 10, PolySign::minus), IntervalTooWide);
    CHECK_THROWS_AS(build_selberg(0, 1.0, 10, PolySign::plus), BadParams);
    CHECK_THROWS_AS(build_selberg(10, 1.0, 10, PolySign::centered), BadParams);
}

TEST_CASE("evaluation basics") {
    TrigPoly p;
    p.K = 1;
    p.coeffs = {{0.0, 0.0}, {1.0, 0.0}, {0.0, 0.0}};
    CHECK(eval_trigpoly(p, 0.123) == doctest::Approx(1.0).epsilon(1e-14));

    TrigPoly cosp;
    cosp.K = 1;
    cosp.coeffs = {{0.5, 0.0}, {0.0, 0.0}, {0.5, 0.0}};
    CHECK(eval_trigpoly(cosp, 0.5) == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(eval_trigpoly(cosp, 0.25) == doctest::Approx(0.0).epsilon(1e-12));

    const auto plus = build_selberg(8, 1.0, 12, PolySign::plus);
    Rng rng(99);
    for (int i = 0; i < 20; ++i) {
        const double x = rng.uniform(-2.0, 2.0);
        CHECK(eval_trigpoly(plus, x) ==
              doctest::Approx(eval_trigpoly(plus, x + 1.0)).epsilon(1e-10));
    }
}

TEST_CASE("centering") {
    const auto plus = build_selberg(9, 0.5, 10, PolySign::plus);
    const auto h = center(plus);
    CHECK(h.c(0) == std::complex<double>(0.0, 0.0));
    CHECK(h.sign == PolySign::centered);
    Rng rng(7);
    for (int i = 0; i < 100; ++i) {
        const double x = rng.next_double();
        CHECK(eval_trigpoly(h, x) ==
              doctest::Approx(eval_trigpoly(plus, x) - plus.c(0).real()).epsilon(1e-12));
    }
    CHECK_THROWS_AS(center(h), BadParams);
}

TEST_CASE("JSON round trip and symmetry enforcement") {
    const auto plus = build_selberg(6, 1.0, 10, PolySign::plus);
    const auto back = TrigPoly::from_json(plus.to_json());
    CHECK(back.K == plus.K);
    CHECK(back.coeffs == plus.coeffs);

    auto broken = plus.to_json();
    broken["coeffs"][0][1] = 0.5; // imaginary part of c_{-K} without its mirror
    CHECK_THROWS_AS(TrigPoly::from_json(broken), NotReal);
}
