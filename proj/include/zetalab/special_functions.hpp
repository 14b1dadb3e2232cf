#ifndef ZETALAB_SPECIAL_FUNCTIONS_HPP
#define ZETALAB_SPECIAL_FUNCTIONS_HPP

#include <cmath>
#include <complex>

#include "zetalab/errors.hpp"

namespace zetalab {

inline constexpr double kPi = 3.14159265358979323846264338328;
inline constexpr double kTwoPi = 6.28318530717958647692528676656;
inline constexpr double kEulerGamma = 0.57721566490153286060651209008;

namespace sf_detail {

// B_{2k}/(2k): digamma asymptotic tail coefficients
inline constexpr double kDigammaCoef[8] = {
    8.33333333333333287e-02, -8.33333333333333322e-03, 3.96825396825396803e-03,
    -4.16666666666666661e-03, 7.57575757575757597e-03, -2.10927960927960942e-02,
    8.33333333333333287e-02, -4.43259803921568607e-01};

// B_{2k}/(2k(2k-1)): Stirling series for log Gamma
inline constexpr double kStirlingCoef[7] = {
    8.33333333333333287e-02, -2.77777777777777788e-03, 7.93650793650793650e-04,
    -5.95238095238095292e-04, 8.41750841750841714e-04, -1.91752691752691763e-03,
    6.41025641025641003e-03};

} // namespace sf_detail

// Gamma'/Gamma on the complex plane by recurrence shift into |z| >= 14 plus
// the Bernoulli asymptotic series.  Relative error < 1e-12 for |z| > 1.
inline std::complex<double> digamma(std::complex<double> z) {
    if (z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real()))
        throw PoleError("digamma pole at nonpositive integer");
    std::complex<double> acc = 0.0;
    if (z.real() < 0.5) {
        // reflection: psi(z) = psi(1-z) - pi*cot(pi*z)
        acc -= kPi * std::cos(kPi * z) / std::sin(kPi * z);
        z = 1.0 - z;
    }
    while (std::abs(z) < 14.0) {
        acc -= 1.0 / z;
        z += 1.0;
    }
    std::complex<double> inv2 = 1.0 / (z * z);
    std::complex<double> series = 0.0;
    std::complex<double> p = inv2;
    for (double c : sf_detail::kDigammaCoef) {
        series += c * p;
        p *= inv2;
    }
    return acc + std::log(z) - 0.5 / z - series;
}

// Principal-branch log Gamma for Re z > 0 (shift + Stirling).
inline std::complex<double> log_gamma(std::complex<double> z) {
    if (z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real()))
        throw PoleError("log_gamma pole at nonpositive integer");
    std::complex<double> acc = 0.0;
    while (std::abs(z) < 20.0) {
        acc -= std::log(z);
        z += 1.0;
    }
    std::complex<double> inv = 1.0 / z;
    std::complex<double> inv2 = inv * inv;
    std::complex<double> series = 0.0;
    std::complex<double> p = inv;
    for (double c : sf_detail::kStirlingCoef) {
        series += c * p;
        p *= inv2;
    }
    return acc + (z - 0.5) * std::log(z) - z + 0.5 * std::log(kTwoPi) + series;
}

} // namespace zetalab

#endif
