#include "pcorr/selberg.hpp"

#include <cmath>
#include <numbers>

#include <json.hpp>

#include "pcorr/errors.hpp"

namespace pcorr {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Vaaler's multiplier: rho(t) = pi t (1-t) cot(pi t) + t, rho(0+) = 1,
// rho(1-) = 0, rho([0,1]) in [0,1]. The degree-K polynomial
//   V_K(x) = -sum_{j=1}^{K} rho(j/(K+1)) sin(2 pi j x) / (pi j)
// approximates the sawtooth psi(x) = {x} - 1/2 with
// |V_K - psi| <= Fejer_{K+1}(x) / (2K+2), which is what makes the
// majorant/minorant sandwich below pointwise.
double vaaler_rho(double t) {
    return std::numbers::pi * t * (1.0 - t) / std::tan(std::numbers::pi * t) + t;
}

// fast real evaluation c_0 + 2 sum_{j>=1} Re(c_j) cos - 2 sum Im(c_j) sin
// via one rotation per grid point
double eval_real(const TrigPoly& p, double x) {
    const std::complex<double> w = std::polar(1.0, kTwoPi * x);
    std::complex<double> rot = w;
    double v = p.c(0).real();
    for (int j = 1; j <= p.K; ++j) {
        const std::complex<double> cj = p.c(j);
        v += 2.0 * (cj.real() * rot.real() - cj.imag() * rot.imag());
        rot *= w;
    }
    return v;
}

double periodic_indicator(double x, double half_width) {
    const double d = std::fabs(x - std::round(x));
    return d <= half_width ? 1.0 : 0.0;
}

void self_check(const TrigPoly& plus, const TrigPoly& minus, int K, double s, std::int64_t N) {
    const double delta = s / static_cast<double>(N);
    const int grid = 10 * (K + 1);
    auto check_point = [&](double x) {
        const double ind = periodic_indicator(x, delta);
        if (eval_real(plus, x) - ind < -1e-10)
            throw QuadratureDivergence("selberg majorant fails domination");
        if (ind - eval_real(minus, x) < -1e-10)
            throw QuadratureDivergence("selberg minorant fails domination");
        if (eval_real(plus, x) < -1e-10)
            throw QuadratureDivergence("selberg majorant fails nonnegativity");
    };
    for (int g = 0; g < grid; ++g) check_point(static_cast<double>(g) / grid);
    for (double x : {delta - 1e-9, delta + 1e-9, 1.0 - delta - 1e-9, 1.0 - delta + 1e-9})
        check_point(x);

    if (std::fabs(plus.c(0).real() - (2.0 * delta + 1.0 / (K + 1))) > 1e-12 ||
        std::fabs(minus.c(0).real() - (2.0 * delta - 1.0 / (K + 1))) > 1e-12)
        throw QuadratureDivergence("selberg mean identity broken");

    for (int j = 1; j <= K; ++j) {
        const double bound =
            std::min(2.0 * delta, 1.0 / (std::numbers::pi * j)) + 1.0 / (K + 1);
        if (std::abs(plus.c(j)) > bound + 1e-14 || std::abs(minus.c(j)) > bound + 1e-14)
            throw QuadratureDivergence("selberg coefficient bound broken");
    }
}

TrigPoly build_one(int K, double s, std::int64_t N, PolySign sign) {
    TrigPoly p;
    p.K = K;
    p.s = s;
    p.N = N;
    p.sign = sign;
    p.coeffs.assign(static_cast<std::size_t>(2 * K + 1), {0.0, 0.0});

    const double delta = s / static_cast<double>(N);
    const double sgn = sign == PolySign::plus ? 1.0 : -1.0;
    p.set_c(0, {2.0 * delta + sgn / (K + 1), 0.0});
    for (int j = 1; j <= K; ++j) {
        const double t = static_cast<double>(j) / (K + 1);
        // interval transform + Fejer endpoint correction; real and even in j
        // because the interval is symmetric about 0
        const double chi = std::sin(kTwoPi * j * delta) / (std::numbers::pi * j);
        const double fej = (1.0 - t) / (K + 1) * std::cos(kTwoPi * j * delta);
        const double cj = vaaler_rho(t) * chi + sgn * fej;
        p.set_c(j, {cj, 0.0});
        p.set_c(-j, {cj, 0.0});
    }
    return p;
}

} // namespace

void TrigPoly::check_hermitian() const {
    for (int j = 1; j <= K; ++j)
        if (std::abs(c(-j) - std::conj(c(j))) > 1e-12)
            throw NotReal("TrigPoly breaks Hermitian symmetry");
}

TrigPoly build_selberg(int K, double s, std::int64_t N, PolySign sign) {
    if (K < 1) throw BadParams("build_selberg requires K >= 1");
    if (!(s > 0.0) || N < 1) throw BadParams("build_selberg requires s > 0 and N >= 1");
    if (2.0 * s / static_cast<double>(N) >= 1.0)
        throw IntervalTooWide("interval [-s/N, s/N] must have length < 1");
    if (sign == PolySign::centered) throw BadParams("build_selberg: sign must be plus or minus");

    TrigPoly plus = build_one(K, s, N, PolySign::plus);
    TrigPoly minus = build_one(K, s, N, PolySign::minus);
    self_check(plus, minus, K, s, N);
    return sign == PolySign::plus ? plus : minus;
}

double eval_trigpoly(const TrigPoly& p, double x) {
    const std::complex<double> w = std::polar(1.0, kTwoPi * x);
    std::complex<double> rot = w;
    std::complex<double> v = p.c(0);
    for (int j = 1; j <= p.K; ++j) {
        v += p.c(j) * rot + p.c(-j) * std::conj(rot);
        rot *= w;
    }
    if (std::fabs(v.imag()) > 1e-10)
        throw NotReal("trig polynomial evaluation has imaginary residue");
    return v.real();
}

TrigPoly center(const TrigPoly& p) {
    if (p.sign == PolySign::centered) throw BadParams("polynomial already centered");
    TrigPoly h = p;
    h.set_c(0, {0.0, 0.0});
    h.sign = PolySign::centered;
    return h;
}

nlohmann::json TrigPoly::to_json() const {
    nlohmann::json cs = nlohmann::json::array();
    for (const auto& c : coeffs) cs.push_back({c.real(), c.imag()});
    const char* sn = sign == PolySign::plus ? "plus" : sign == PolySign::minus ? "minus" : "centered";
    return {{"K", K}, {"s", s}, {"N", N}, {"sign", sn}, {"coeffs", cs}};
}

TrigPoly TrigPoly::from_json(const nlohmann::json& j) {
    TrigPoly p;
    p.K = j.at("K").get<int>();
    p.s = j.at("s").get<double>();
    p.N = j.at("N").get<std::int64_t>();
    const std::string sn = j.at("sign").get<std::string>();
    p.sign = sn == "plus" ? PolySign::plus : sn == "minus" ? PolySign::minus : PolySign::centered;
    for (const auto& c : j.at("coeffs")) p.coeffs.emplace_back(c[0].get<double>(), c[1].get<double>());
    if (p.coeffs.size() != static_cast<std::size_t>(2 * p.K + 1))
        throw BadParams("TrigPoly JSON has wrong coefficient count");
    p.check_hermitian();
    return p;
}

} // namespace pcorr
