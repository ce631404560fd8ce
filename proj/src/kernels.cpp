#include "pcorr/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "pcorr/errors.hpp"
#include "pcorr/quadrature.hpp"
#include "pcorr/rng.hpp"

namespace pcorr {

namespace {

constexpr double kPi = std::numbers::pi;

// sin^2(a x) / (pi a x^2); series near 0 to dodge cancellation
double sinc_sq_density(double a, double x) {
    const double u = a * x;
    if (std::fabs(u) < 0x1.0p-26) {
        // (sin u / u)^2 = 1 - u^2/3 + 2u^4/45 - ...
        return a / kPi * (1.0 - u * u / 3.0);
    }
    const double s = std::sin(u);
    return s * s / (kPi * a * x * x);
}

double tent(double xi, double half_support) {
    return std::max(1.0 - std::fabs(xi) / half_support, 0.0);
}

} // namespace

WeightKernel WeightKernel::Mu2Gamma(double gamma) {
    if (!(gamma > 0.0)) throw BadParams("mu2gamma requires gamma > 0");
    WeightKernel k;
    k.kind = Kind::mu2gamma;
    k.gamma = gamma;
    return k;
}

WeightKernel WeightKernel::ConvK(std::int64_t N, double eps) {
    if (N < 16 || !(eps > 0.0)) throw BadParams("conv_K requires N >= 16 and eps > 0");
    WeightKernel k;
    k.kind = Kind::conv_K;
    k.N = N;
    k.eps = eps;
    return k;
}

double WeightKernel::sinc_scale() const {
    switch (kind) {
        case Kind::mu: return 0.5;
        case Kind::mu2gamma: return gamma;
        case Kind::conv_K: return (1.0 + eps / 4.0) * std::log(static_cast<double>(N));
        case Kind::gauss_phi: return 0.0;
    }
    return 0.0;
}

double density(const WeightKernel& k, double x) {
    if (k.kind == WeightKernel::Kind::gauss_phi) return std::exp(-0.5 * x * x);
    return sinc_sq_density(k.sinc_scale(), x);
}

double fourier(const WeightKernel& k, double xi) {
    if (k.kind == WeightKernel::Kind::gauss_phi)
        return std::sqrt(2.0 * kPi) * std::exp(-0.5 * xi * xi);
    return tent(xi, 2.0 * k.sinc_scale());
}

double mu_tail_mass(double a) {
    // (1/pi) int_a^inf (1 - cos x)/x^2 dx; the oscillatory part summed per
    // period until it is negligible against the 1/(pi a) lead term
    double osc = 0.0;
    const double period = 2.0 * kPi;
    const std::size_t nper = std::max<std::size_t>(1000, static_cast<std::size_t>(a));
    for (std::size_t p = 0; p < nper; ++p)
        osc += gl15([](double t) { return std::cos(t) / (t * t); },
                    a + period * static_cast<double>(p), a + period * static_cast<double>(p + 1));
    // remainder past the last period by repeated integration by parts,
    // error O(X^-5)
    const double X = a + period * static_cast<double>(nper);
    osc += -std::sin(X) / (X * X) + 2.0 * std::cos(X) / (X * X * X) +
           6.0 * std::sin(X) / (X * X * X * X);
    return 1.0 / (kPi * a) - osc / kPi;
}

double mu_mass(double a) {
    const auto mu = WeightKernel::Mu();
    const auto f = [&](double x) { return density(mu, x); };
    const std::size_t panels = static_cast<std::size_t>(std::ceil(a / 0.5)) + 1;
    return 2.0 * integrate_panels(f, 0.0, a, panels);
}

namespace {

// inverse-CDF table for the one-sided core of mu on [0, A]
struct MuSamplerTable {
    static constexpr double kCoreCut = 200.0;
    static constexpr std::size_t kNodes = 1 << 16;

    std::vector<double> x;   // nodes
    std::vector<double> cdf; // one-sided CDF G(x) = mu([0, x])
    std::vector<double> pdf; // density at nodes (Hermite slopes)
    double core_mass = 0.0;  // G(A)
    double tail_mass = 0.0;  // mu([A, inf)), from the closed-form tail integral

    MuSamplerTable() {
        const auto mu = WeightKernel::Mu();
        x.resize(kNodes);
        cdf.resize(kNodes);
        pdf.resize(kNodes);
        const double h = kCoreCut / static_cast<double>(kNodes - 1);
        double acc = 0.0;
        for (std::size_t i = 0; i < kNodes; ++i) {
            x[i] = h * static_cast<double>(i);
            pdf[i] = density(mu, x[i]);
            if (i > 0) acc += gl15([&](double t) { return density(mu, t); }, x[i - 1], x[i]);
            cdf[i] = acc;
        }
        core_mass = cdf.back();
        tail_mass = mu_tail_mass(kCoreCut);
    }

    // invert G on [0, core_mass] by bisection + Newton with the stored slopes
    double invert(double u) const {
        std::size_t lo = 0, hi = kNodes - 1;
        while (hi - lo > 1) {
            const std::size_t mid = (lo + hi) / 2;
            (cdf[mid] <= u ? lo : hi) = mid;
        }
        // monotone cubic Hermite on [x_lo, x_hi] with exact density slopes
        const double x0 = x[lo], x1 = x[hi], g0 = cdf[lo], g1 = cdf[hi];
        const double hstep = x1 - x0;
        double d0 = pdf[lo] * hstep, d1 = pdf[hi] * hstep, dg = g1 - g0;
        if (dg <= 0.0) return x0;
        // Fritsch-Carlson limiter keeps the interpolant monotone
        const double r0 = d0 / dg, r1 = d1 / dg;
        const double rr = r0 * r0 + r1 * r1;
        if (rr > 9.0) {
            const double sc = 3.0 / std::sqrt(rr);
            d0 *= sc;
            d1 *= sc;
        }
        double t = (u - g0) / dg;
        for (int it = 0; it < 8; ++it) {
            const double t2 = t * t, t3 = t2 * t;
            const double H = g0 + d0 * (t - 2.0 * t2 + t3) + dg * (3.0 * t2 - 2.0 * t3) +
                             d1 * (t3 - t2);
            const double Hp = d0 * (1.0 - 4.0 * t + 3.0 * t2) + dg * (6.0 * t - 6.0 * t2) +
                              d1 * (3.0 * t2 - 2.0 * t);
            if (Hp > 0.0) t -= (H - u) / Hp;
            t = std::clamp(t, 0.0, 1.0);
        }
        return x0 + t * hstep;
    }

    static const MuSamplerTable& instance() {
        static const MuSamplerTable table;
        return table;
    }
};

} // namespace

std::vector<double> sample_mu(std::uint64_t seed, std::size_t count) {
    const auto& tab = MuSamplerTable::instance();
    const double side_mass = tab.core_mass + tab.tail_mass;
    Rng rng(seed);
    std::vector<double> out;
    out.reserve(count);
    while (out.size() < count) {
        const double sign = (rng.next_u64() & 1) ? 1.0 : -1.0;
        const double v = rng.next_double() * side_mass;
        double mag;
        if (v < tab.core_mass) {
            mag = tab.invert(v);
        } else {
            // x^-2 tail: propose x = A/w with w ~ U(0,1], accept w.p. sin^2(x/2)
            for (;;) {
                const double w = 1.0 - rng.next_double(); // (0, 1]
                const double cand = MuSamplerTable::kCoreCut / w;
                const double sh = std::sin(0.5 * cand);
                if (rng.next_double() < sh * sh) {
                    mag = cand;
                    break;
                }
            }
        }
        out.push_back(sign * mag);
    }
    return out;
}

} // namespace pcorr
