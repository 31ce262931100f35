#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace odiff {

/// Coefficients of an Obreshkov-like integrator
///
///   u_t = sum_{j=1..m} c^0_{-j} u_{t-jh} + sum_{i=1..k} sum_{j=0..m} c^i_{-j} u^{(i)}_{t-jh}
///
/// Storage is dense over orders i = 0..k and lags j = 0..m. The slot (0, 0)
/// is the left-hand side of the identity and always reads as zero.
/// Order-i coefficients carry units of s^i.
///
/// Construction checks only the shape (k, m, h and row lengths). Numerical
/// requirements such as a nonzero c^k_0 are reported by validate().
class ObreshkovTableau {
public:
    ObreshkovTableau(int k, int m, double h, std::vector<double> c0,
                     std::vector<std::vector<double>> c, std::string label = {},
                     std::optional<double> omega_select = std::nullopt);

    [[nodiscard]] int k() const noexcept { return k_; }
    [[nodiscard]] int m() const noexcept { return m_; }
    [[nodiscard]] double h() const noexcept { return h_; }
    [[nodiscard]] const std::string& label() const noexcept { return label_; }
    [[nodiscard]] std::optional<double> omega_select() const noexcept { return omega_select_; }

    /// c^order_{-lag}; order in [0, k], lag in [0, m]. coeff(0, 0) is 0.
    [[nodiscard]] double coeff(int order, int lag) const;

    /// Row [c^order_0, c^order_{-1}, ..., c^order_{-m}].
    [[nodiscard]] std::span<const double> row(int order) const;

    /// [c^0_{-1}, ..., c^0_{-m}]
    [[nodiscard]] std::vector<double> c0() const;

    [[nodiscard]] double leading() const { return coeff(k_, 0); }

    [[nodiscard]] ObreshkovTableau with_label(std::string label) const;

    friend bool operator==(const ObreshkovTableau&, const ObreshkovTableau&) = default;

private:
    int k_;
    int m_;
    double h_;
    std::vector<double> coeffs_;  // row-major (k+1) x (m+1)
    std::string label_;
    std::optional<double> omega_select_;
};

struct ValidationVerdict {
    std::vector<std::string> violations;

    [[nodiscard]] bool ok() const noexcept { return violations.empty(); }
};

inline constexpr double kConsistencyTolerance = 1e-12;

/// Lists every violated tableau invariant. Violations are data, never thrown.
[[nodiscard]] ValidationVerdict validate(const ObreshkovTableau& t);

/// Throws InvalidTableau carrying the violations when validate(t) is not ok.
void require_valid(const ObreshkovTableau& t);

/// Recursion that yields the k-th derivative from the integrator identity:
///
///   ubar_t = sum_j feedback[j-1] ubar_{t-jh} + current_value_weight u_t
///            + sum_j past_value_weights[j-1] u_{t-jh}
///            + sum_{i<k} sum_j derivative_weights[i-1][j] u^{(i)}_{t-jh}
struct DifferentiatorRule {
    ObreshkovTableau base;
    std::vector<double> feedback;                     // -c^k_{-j} / c^k_0, j = 1..m
    double current_value_weight = 0.0;                // 1 / c^k_0
    std::vector<double> past_value_weights;           // -c^0_{-j} / c^k_0, j = 1..m
    std::vector<std::vector<double>> derivative_weights;  // [i-1][j] = -c^i_{-j} / c^k_0
};

[[nodiscard]] DifferentiatorRule differentiator_form(const ObreshkovTableau& t);

/// Checks 0 < omega*h < 2*pi with |1 - cos(omega*h)| > 1e-12; throws
/// std::invalid_argument otherwise.
void require_admissible(double omega, double h);
[[nodiscard]] bool is_admissible(double omega, double h) noexcept;

}  // namespace odiff
