#pragma once

#include <cstdint>
#include <vector>

namespace pcorr {

// The weight measures and kernels: the Fejer-type probability measure mu
// (density 2 sin^2(x/2) / (pi x^2), tent transform on (-1,1)), its
// gamma-scaled variant, the Gaussian Phi, and the log-scale convolution
// kernel K used by the dyadic counting machinery.
struct WeightKernel {
    enum class Kind { mu, mu2gamma, gauss_phi, conv_K };

    Kind kind = Kind::mu;
    double gamma = 0.0;   // mu2gamma
    std::int64_t N = 0;   // conv_K
    double eps = 0.0;     // conv_K

    static WeightKernel Mu() { return {Kind::mu}; }
    static WeightKernel Mu2Gamma(double gamma);
    static WeightKernel GaussPhi() { return {Kind::gauss_phi}; }
    static WeightKernel ConvK(std::int64_t N, double eps);

    // half-width of the sin^2(a x) / (pi a x^2) family; 0 for gauss_phi
    double sinc_scale() const;
};

// pointwise density; the removable singularity at x=0 is filled with the
// series limit
double density(const WeightKernel& k, double x);

// Fourier transform under f^(xi) = integral f(x) e^{-i xi x} dx:
// mu -> tent on (-1,1), mu2gamma -> tent on (-2g,2g),
// gauss_phi -> sqrt(2 pi) e^{-xi^2/2}, conv_K -> tent on the log-N support
double fourier(const WeightKernel& k, double xi);

// i.i.d. draws from mu; inverse-CDF core on |x| <= 200 stitched to an exact
// rejection sampler for the x^-2 tail. Deterministic given the seed.
std::vector<double> sample_mu(std::uint64_t seed, std::size_t count);

// reference mass mu([-a, a]) by composite quadrature (test oracle and
// error-budget helper)
double mu_mass(double a);

// one-sided tail mass mu([a, inf)) from the by-parts closed form
// 1/(pi a) - (1/pi) int_a^inf cos(x)/x^2 dx
double mu_tail_mass(double a);

} // namespace pcorr
