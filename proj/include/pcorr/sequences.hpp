#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

namespace pcorr {

enum class SeqKind {
    power,        // x_n = n^theta, theta > 0
    polynomial,   // x_n = p(n), ascending coefficients, positive leading coeff
    n_log_n,      // x_n = n log n
    n_plus_log_n, // x_n = n + log n
    lacunary,     // x_n = ratio^n, ratio > 1
    explicit_values,
};

struct SequenceSpec {
    SeqKind kind = SeqKind::power;
    double theta = 0.0;                // power
    std::vector<double> coeffs;        // polynomial, ascending degree
    double ratio = 0.0;                // lacunary
    std::vector<double> values;        // explicit
    std::string label;

    static SequenceSpec power(double theta, std::string label = "");
    static SequenceSpec polynomial(std::vector<double> coeffs, std::string label = "");
    static SequenceSpec n_log_n();
    static SequenceSpec n_plus_log_n();
    static SequenceSpec lacunary(double ratio, std::string label = "");
    static SequenceSpec explicit_seq(std::vector<double> values, std::string label = "");

    // throws BadParams when the kind-specific invariants fail
    void validate() const;

    nlohmann::json to_json() const;
    static SequenceSpec from_json(const nlohmann::json& j);

    // CLI shorthand: "power:1.5", "poly:0,0,1", "nlogn", "n+logn",
    // "lacunary:2", "file:path"
    static SequenceSpec parse(const std::string& text);

    // one value per line
    static SequenceSpec load_explicit_file(const std::string& path);
};

// A materialized increasing real sequence x_1..x_N.
struct RealSeq {
    std::vector<double> values;
    double min_gap = 0.0;
    SequenceSpec spec;

    std::int64_t size() const { return static_cast<std::int64_t>(values.size()); }
    // true when min_gap < 1 (exploratory regime, see --allow-slow-growth)
    bool slow_growth() const { return min_gap < 1.0; }
};

RealSeq materialize(const SequenceSpec& spec, std::int64_t N);

// exact minimum of consecutive differences; throws TooShort for N < 2
double min_gap_of(std::span<const double> values);

} // namespace pcorr
