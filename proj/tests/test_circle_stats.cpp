#include <doctest.h>

#include <cmath>
#include <vector>

#include "pcorr/circle_stats.hpp"
#include "pcorr/errors.hpp"
#include "pcorr/rng.hpp"

using namespace pcorr;

namespace {

RealSeq explicit_seq(std::vector<double> v) {
    const auto n = static_cast<std::int64_t>(v.size());
    return materialize(SequenceSpec::explicit_seq(std::move(v)), n);
}

// random strictly increasing sequence; gaps in [0.2, 2)
RealSeq random_seq(Rng& rng, std::int64_t n) {
    std::vector<double> v;
    double x = 1.0 + rng.next_double();
    for (std::int64_t i = 0; i < n; ++i) {
        v.push_back(x);
        x += 0.2 + 1.8 * rng.next_double();
    }
    auto spec = SequenceSpec::explicit_seq(std::move(v));
    return materialize(spec, n);
}

// true when some pair distance sits within eps of a window boundary --
// those instances are resampled in the equivalence test
bool near_boundary(const RealSeq& seq, double alpha, const std::vector<double>& s_list,
                   double eps) {
    const auto n = seq.values.size();
    for (double s : s_list) {
        const double w = s / static_cast<double>(n);
        for (std::size_t m = 0; m < n; ++m)
            for (std::size_t k = 0; k < m; ++k) {
                const double d = nearest_int_dist(
                    mul_mod1(alpha, seq.values[m] - seq.values[k]));
                if (std::fabs(d - w) < eps) return true;
            }
    }
    return false;
}

} // namespace

TEST_CASE("nearest integer distance") {
    CHECK(nearest_int_dist(3.0) == 0.0);
    CHECK(nearest_int_dist(-2.75) == 0.25);
    CHECK(nearest_int_dist(7.5) == 0.5); // tie
    CHECK(nearest_int_dist(-0.5) == 0.5);
}

TEST_CASE("fractional parts with compensated reduction") {
    const auto a = frac_parts(explicit_seq({1.0, 4.0, 9.0}), 0.5);
    CHECK(a == std::vector<double>{0.5, 0.0, 0.5});

    const auto b = frac_parts(explicit_seq({1.0, 2.0, 3.0}), 1.0 / 3.0);
    CHECK(b[0] == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    CHECK(b[1] == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
    CHECK(b[2] == doctest::Approx(0.0).epsilon(1e-12));

    // the naive product 1e9 + 0.25 would round the fraction away
    auto big = materialize(SequenceSpec::explicit_seq({1e9 + 0.25}), 1);
    CHECK(frac_parts(big, 1.0)[0] == 0.25);
}

TEST_CASE("brute pair correlation: closed cases") {
    const std::vector<double> s1{1.0};
    const auto two = explicit_seq({1.0, 2.0, 3.0});
    auto seq2 = materialize(SequenceSpec::explicit_seq({1.0, 2.0}), 2);
    const auto e = pair_correlation_brute(seq2, 0.3, s1);
    CHECK(e.entries[0].pair_count == 2); // dist(0.3) = 0.3 <= 1/2
    CHECK(e.entries[0].r2 == 1.0);

    // s = 0 only counts exact integer hits
    const std::vector<double> s0{0.0};
    const auto z = pair_correlation_brute(explicit_seq({1.0, 4.0, 9.0}), std::sqrt(2.0), s0);
    CHECK(z.entries[0].pair_count == 0);

    // x_n = n, alpha = 1/2: even differences hit, odd miss
    auto nat = materialize(SequenceSpec::polynomial({0.0, 1.0}), 4);
    const auto h = pair_correlation_brute(nat, 0.5, s1);
    CHECK(h.entries[0].pair_count == 4);
    CHECK(h.entries[0].r2 == 1.0);
}

TEST_CASE("brute guard") {
    auto seq = materialize(SequenceSpec::polynomial({0.0, 1.0}), 5001);
    CHECK_THROWS_AS(pair_correlation_brute(seq, 0.5, std::vector<double>{1.0}), GuardExceeded);
}

TEST_CASE("fast path edge cases") {
    const std::vector<double> ss{0.0, 0.5, 1.0};
    auto one = materialize(SequenceSpec::explicit_seq({2.0}), 1);
    for (const auto& e : pair_correlation(one, 1.3, ss).entries) CHECK(e.pair_count == 0);

    // window covering the whole circle
    auto seq = materialize(SequenceSpec::power(1.5), 10);
    const auto full = pair_correlation(seq, 0.77, std::vector<double>{5.0, 7.0});
    CHECK(full.entries[0].pair_count == 90);
    CHECK(full.entries[1].pair_count == 90);
}

TEST_CASE("fast equals brute on random instances") {
    Rng rng(substream_seed(2024, "paircorr-eq"));
    const std::vector<double> s_list{0.1, 0.5, 1.0, 2.0};
    int done = 0;
    while (done < 100) {
        const auto n = 2 + static_cast<std::int64_t>(rng.next_u64() % 499);
        const auto seq = random_seq(rng, n);
        const double alpha = rng.uniform(0.5, 3.0);
        if (near_boundary(seq, alpha, s_list, 1e-9)) continue;
        const auto fast = pair_correlation(seq, alpha, s_list);
        const auto brute = pair_correlation_brute(seq, alpha, s_list);
        for (std::size_t i = 0; i < s_list.size(); ++i) {
            REQUIRE(fast.entries[i].pair_count == brute.entries[i].pair_count);
            CHECK(fast.entries[i].pair_count % 2 == 0);
        }
        ++done;
    }
}

TEST_CASE("integer shift invariance of the dilation") {
    auto nat = materialize(SequenceSpec::polynomial({0.0, 1.0}), 200); // x_n = n
    // alpha near 137/1000 puts the distances near the 1/1000 lattice; these
    // windows sit between lattice points, clear of comparator boundaries
    const std::vector<double> ss{0.7, 1.3, 2.9};
    const auto a = pair_correlation(nat, 0.137, ss);
    const auto b = pair_correlation(nat, 5.137, ss); // alpha + 5: same mod-1 data
    for (std::size_t i = 0; i < ss.size(); ++i)
        CHECK(a.entries[i].pair_count == b.entries[i].pair_count);
}

TEST_CASE("counts are monotone in s") {
    auto seq = materialize(SequenceSpec::power(1.5), 300);
    const std::vector<double> ss{0.1, 0.3, 1.0, 2.0, 5.0};
    const auto est = pair_correlation(seq, 1.41, ss);
    for (std::size_t i = 1; i < ss.size(); ++i)
        CHECK(est.entries[i].pair_count >= est.entries[i - 1].pair_count);
}

TEST_CASE("csv emission") {
    auto seq2 = materialize(SequenceSpec::explicit_seq({1.0, 2.0}), 2);
    const auto est = pair_correlation(seq2, 0.3, std::vector<double>{1.0});
    CHECK(est.csv_rows() == "2,0.29999999999999999,1,2,1\n");
}
