#pragma once

#include <complex>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "odiff/tableau.hpp"

namespace odiff {

/// Monic polynomial lambda^m + (c^k_{-1}/c^k_0) lambda^{m-1} + ... + c^k_{-m}/c^k_0.
/// Its roots are the eigenvalues of the recursion's state-transition matrix.
struct CharacteristicPolynomial {
    /// Highest power first; coeffs[0] == 1.
    std::vector<double> coeffs;

    [[nodiscard]] int degree() const noexcept { return static_cast<int>(coeffs.size()) - 1; }
    [[nodiscard]] std::complex<double> operator()(std::complex<double> x) const;
};

enum class Classification { Ideal, Asymptotic, Oscillatory, Biased, PersistentBounded, Divergent };

[[nodiscard]] std::string_view to_string(Classification c) noexcept;

/// "Bias", "Oscillation", ... or "--" when improper initial values are harmless.
[[nodiscard]] std::string_view hazard(Classification c) noexcept;

/// IDEAL and ASYMPTOTIC recursions forget improper initial values.
[[nodiscard]] bool is_suitable(Classification c) noexcept;

struct RootEvidence {
    std::complex<double> root;
    double magnitude = 0.0;
    double distance_to_zero = 0.0;
    double distance_to_plus_one = 0.0;
    double distance_to_minus_one = 0.0;
};

struct SuitabilityReport {
    CharacteristicPolynomial polynomial;
    std::vector<std::complex<double>> roots;
    Classification classification = Classification::Ideal;
    std::vector<RootEvidence> evidence;

    [[nodiscard]] bool suitable() const noexcept { return is_suitable(classification); }
};

inline constexpr double kDefaultRootTolerance = 1e-9;

[[nodiscard]] CharacteristicPolynomial characteristic_polynomial(const ObreshkovTableau& t);

/// Explicit m x m state-transition matrix of the differentiator recursion,
/// row-major. First row holds -c^k_{-j}/c^k_0, the rest is a shift.
[[nodiscard]] std::vector<double> state_transition_matrix(const ObreshkovTableau& t);

/// All roots with multiplicity (Aberth-Ehrlich iteration with Newton polish).
/// Exactly-zero trailing coefficients contribute exact zero roots; the degree
/// is never reduced.
[[nodiscard]] std::vector<std::complex<double>> polynomial_roots(const CharacteristicPolynomial& p);

/// Eigenvalues of a row-major n x n real matrix.
[[nodiscard]] std::vector<std::complex<double>> eigenvalues(std::span<const double> matrix, int n);

struct ClassificationResult {
    Classification classification;
    std::vector<RootEvidence> evidence;
};

/// Precedence: DIVERGENT > BIASED > OSCILLATORY > PERSISTENT_BOUNDED > IDEAL > ASYMPTOTIC.
[[nodiscard]] ClassificationResult classify(std::span<const std::complex<double>> roots,
                                            double root_tolerance = kDefaultRootTolerance);

[[nodiscard]] SuitabilityReport analyze(const ObreshkovTableau& t,
                                        double root_tolerance = kDefaultRootTolerance);

/// "-1", "0.5+0.25j"
[[nodiscard]] std::string format_root(std::complex<double> z);

/// "λ - 1", "λ", "λ^2 - 0.5λ + 0.25"
[[nodiscard]] std::string format_polynomial(const CharacteristicPolynomial& p);

struct Table2Row {
    std::string label;
    SuitabilityReport report;
};

/// Suitability of the second-derivative family A-F at (h, omega_select).
[[nodiscard]] std::vector<Table2Row> table2_report(double h, double omega_select);

[[nodiscard]] std::string table2_csv(std::span<const Table2Row> rows);
[[nodiscard]] std::string table2_text(std::span<const Table2Row> rows);

}  // namespace odiff
