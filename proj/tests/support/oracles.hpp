#pragma once

// Independent reference computations for the unit and acceptance suites.
// Nothing here calls into the solver or the closed-form Taylor expansion.

#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <random>
#include <vector>

namespace odiff::oracle {

struct SecondOrderCoefficients {
    double c1_0;
    double c1_1;
    double c2_0;
};

inline double det3(const std::array<std::array<double, 3>, 3>& a) {
    return a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) -
           a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0]) +
           a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
}

/// Integrator E by Cramer's rule on the unscaled root conditions
///   c1_0 + c1_1 = h                                  (a1 = 0)
///   w c1_0 + w cos(wh) c1_1 = sin(wh)                (Im R(jw) = 0)
///   -w sin(wh) c1_1 + w^2 c2_0 = cos(wh) - 1          (Re R(jw) = 0)
inline SecondOrderCoefficients integrator_e_cramer(double w, double h) {
    const double th = w * h;
    const std::array<std::array<double, 3>, 3> a = {{
        {1.0, 1.0, 0.0},
        {w, w * std::cos(th), 0.0},
        {0.0, -w * std::sin(th), w * w},
    }};
    const std::array<double, 3> b = {h, std::sin(th), std::cos(th) - 1.0};
    const double d = det3(a);
    std::array<double, 3> x{};
    for (int col = 0; col < 3; ++col) {
        auto m = a;
        for (int row = 0; row < 3; ++row) {
            m[row][col] = b[row];
        }
        x[col] = det3(m) / d;
    }
    return {x[0], x[1], x[2]};
}

/// Integrator E coefficient c1_0 re-derived by hand from the same conditions.
inline double integrator_e_c1_0_closed(double w, double h) {
    const double th = w * h;
    return (-std::sin(th) + th * std::cos(th)) / (w * (std::cos(th) - 1.0));
}

/// Same closed form with the opposite sign on the th*cos(th) term; does not satisfy a1 = 0.
inline double integrator_e_c1_0_flipped(double w, double h) {
    const double th = w * h;
    return (-std::sin(th) - th * std::cos(th)) / (w * (std::cos(th) - 1.0));
}
inline double integrator_e_c1_1_closed(double w, double h) {
    const double th = w * h;
    return (std::sin(th) - th) / (w * (std::cos(th) - 1.0));
}
inline double integrator_e_c2_0_closed(double w, double h) {
    const double th = w * h;
    return -(2.0 * std::cos(th) + th * std::sin(th) - 2.0) / (w * w * (std::cos(th) - 1.0));
}

/// Taylor coefficients of an analytic function about 0 from point values on
/// a circle of radius r (trapezoidal rule on the Cauchy integral).
inline std::vector<double> cauchy_taylor(const std::function<std::complex<double>(std::complex<double>)>& f,
                                         double r, int n_max, int samples = 128) {
    std::vector<double> out(static_cast<std::size_t>(n_max + 1), 0.0);
    for (int n = 0; n <= n_max; ++n) {
        std::complex<double> acc{0.0, 0.0};
        for (int q = 0; q < samples; ++q) {
            const double phi = 2.0 * std::numbers::pi * q / samples;
            const auto z = std::polar(r, phi);
            acc += f(z) * std::polar(1.0, -n * phi);
        }
        out[static_cast<std::size_t>(n)] = (acc / static_cast<double>(samples)).real() / std::pow(r, n);
    }
    return out;
}

/// Relative difference with an absolute floor.
inline double rel_diff(double a, double b, double floor = 0.0) {
    const double scale = std::max({std::abs(a), std::abs(b), floor});
    return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

inline std::mt19937_64 make_rng(std::uint64_t seed) {
    return std::mt19937_64(seed);
}

}  // namespace odiff::oracle
