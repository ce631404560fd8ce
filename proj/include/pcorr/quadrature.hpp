#pragma once

#include <array>
#include <cstddef>

namespace pcorr {

// 15-point Gauss-Legendre panel rule; composite over [a,b] with the given
// panel count. Plenty for the smooth densities and tents used here.
namespace detail {
// nodes/weights on [-1,1], symmetric; positive half listed
inline constexpr std::array<double, 8> kGl15X = {
    0.0,
    0.2011940939974345,
    0.3941513470775634,
    0.5709721726085388,
    0.7244177313601701,
    0.8482065834104272,
    0.9372733924007060,
    0.9879925180204854,
};
inline constexpr std::array<double, 8> kGl15W = {
    0.2025782419255613,
    0.1984314853271116,
    0.1861610000155622,
    0.1662692058169939,
    0.1395706779261543,
    0.1071592204671719,
    0.0703660474881081,
    0.0307532419961173,
};
} // namespace detail

template <class F>
double gl15(F&& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    double s = detail::kGl15W[0] * f(c);
    for (std::size_t i = 1; i < 8; ++i) {
        const double dx = h * detail::kGl15X[i];
        s += detail::kGl15W[i] * (f(c - dx) + f(c + dx));
    }
    return s * h;
}

template <class F>
double integrate_panels(F&& f, double a, double b, std::size_t panels) {
    if (panels == 0) panels = 1;
    const double h = (b - a) / static_cast<double>(panels);
    double s = 0.0;
    for (std::size_t p = 0; p < panels; ++p)
        s += gl15(f, a + h * static_cast<double>(p), a + h * static_cast<double>(p + 1));
    return s;
}

} // namespace pcorr
