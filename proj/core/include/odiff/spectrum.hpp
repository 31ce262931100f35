#pragma once

#include <complex>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "odiff/tableau.hpp"

namespace odiff {

/// s-domain relative error of the integrator identity,
///
///   R(s) = 1 - sum_j c^0_{-j} e^{-jsh} - sum_{i>=1} sum_j c^i_{-j} s^i e^{-jsh}.
///
/// Zeros of R mark signal components the integrator reproduces exactly.
[[nodiscard]] std::complex<double> relative_error(const ObreshkovTableau& t,
                                                  std::complex<double> s);

/// Power-series coefficients a_0..a_{n_max} of R about s = 0, in closed form.
[[nodiscard]] std::vector<double> taylor_coefficients(const ObreshkovTableau& t, int n_max);

/// Default series length k + m + 10.
[[nodiscard]] int default_series_length(const ObreshkovTableau& t) noexcept;

struct OriginMultiplicity {
    int order = 0;
    /// true when every coefficient up to n_max vanished; the multiplicity is
    /// then at least `order` (= n_max + 1).
    bool saturated = false;

    friend bool operator==(const OriginMultiplicity&, const OriginMultiplicity&) = default;
};

/// Number of leading vanishing Taylor coefficients of R at the origin.
///
/// Coefficients are compared after normalization by h^n, so the test does not
/// depend on the step size. Without an explicit threshold the default is
/// 1e-10 * max(1, max_n |a_n| / h^n).
[[nodiscard]] OriginMultiplicity origin_multiplicity(const ObreshkovTableau& t,
                                                     std::optional<double> threshold = std::nullopt,
                                                     std::optional<int> n_max = std::nullopt);

inline constexpr double kFrequencyZeroTolerance = 1e-10;

/// |R(j*omega)|.
[[nodiscard]] double frequency_zero_residual(const ObreshkovTableau& t, double omega);

struct SweepPoint {
    double omega = 0.0;
    double abs_relative_error = 0.0;
};

/// Pointwise |R(j*omega)| over a non-empty, strictly increasing grid.
[[nodiscard]] std::vector<SweepPoint> sweep(const ObreshkovTableau& t,
                                            std::span<const double> omega_grid);

/// Linear or logarithmic grid of `points` samples between from and to.
[[nodiscard]] std::vector<double> make_grid(double from, double to, int points, bool logarithmic);

/// Header `omega_rad_s,abs_relative_error`, 17 significant digits.
[[nodiscard]] std::string sweep_csv(std::span<const SweepPoint> points);

struct ErrorSpectrum {
    ObreshkovTableau source;
    std::vector<double> taylor;
    OriginMultiplicity origin_multiplicity;
};

[[nodiscard]] ErrorSpectrum analyze_spectrum(const ObreshkovTableau& t,
                                             std::optional<int> n_max = std::nullopt);

}  // namespace odiff
