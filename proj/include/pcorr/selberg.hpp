#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include <json.hpp>

namespace pcorr {

enum class PolySign { plus, minus, centered };

// Finite Fourier representation of a real-valued 1-periodic function:
// p(x) = sum_{|j| <= K} c_j e^{2 pi i j x}, with c_{-j} = conj(c_j).
struct TrigPoly {
    int K = 0;
    double s = 0.0;
    std::int64_t N = 0;
    PolySign sign = PolySign::plus;
    std::vector<std::complex<double>> coeffs; // index j + K, j in [-K, K]

    std::complex<double> c(int j) const { return coeffs[static_cast<std::size_t>(j + K)]; }
    void set_c(int j, std::complex<double> v) { coeffs[static_cast<std::size_t>(j + K)] = v; }

    // throws NotReal when Hermitian symmetry is broken beyond 1e-12
    void check_hermitian() const;

    nlohmann::json to_json() const;
    static TrigPoly from_json(const nlohmann::json& j);
};

// Selberg majorant (sign=plus) / minorant (sign=minus) of the periodic
// indicator of [-s/N, s/N], degree K. The construction self-checks its
// three contracts (sandwich, mean identity, coefficient bound) and throws
// QuadratureDivergence if any fails on the verification grid.
TrigPoly build_selberg(int K, double s, std::int64_t N, PolySign sign);

// sum_j c_j e^{2 pi i j x}; throws NotReal if the imaginary residue
// exceeds 1e-10
double eval_trigpoly(const TrigPoly& p, double x);

// zero the mean: h(x) = p(x) - c_0
TrigPoly center(const TrigPoly& p);

} // namespace pcorr
