#pragma once

#include <compare>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "odiff/tableau.hpp"

namespace odiff {

/// Coefficient slot c^order_{-lag}.
struct Slot {
    int order = 0;
    int lag = 0;

    friend auto operator<=>(const Slot&, const Slot&) = default;
};

/// Root conditions on the relative-error expression R(s) that determine a
/// tableau: fixed slots, a zero of multiplicity `origin_multiplicity` at
/// s = 0, and simple zeros at +-j*omega for each listed frequency.
struct ConstraintSet {
    int k = 2;
    int m = 1;
    double h = 0.0;
    std::map<Slot, double> fixed;
    int origin_multiplicity = 1;
    std::vector<double> frequencies;
};

enum class SynthesisFailure { Singular, Inconsistent };

[[nodiscard]] std::string_view to_string(SynthesisFailure f) noexcept;

class SynthesisError : public std::runtime_error {
public:
    SynthesisError(SynthesisFailure kind, std::vector<std::string> conditions, std::string detail);

    [[nodiscard]] SynthesisFailure kind() const noexcept { return kind_; }
    /// Names of the conditions in the failing system ("a1", "Re R(j*376.99)", ...).
    [[nodiscard]] const std::vector<std::string>& conditions() const noexcept { return conditions_; }

private:
    SynthesisFailure kind_;
    std::vector<std::string> conditions_;
};

/// Scaled linear system in the free slots. Column for an order-i slot is
/// multiplied by h^i (unknowns are c / h^i) and Taylor row n is divided by
/// h^n, so entries are O(1) for any step size.
struct SynthesisSystem {
    std::vector<Slot> unknowns;
    std::vector<std::string> conditions;
    std::vector<std::vector<double>> matrix;  // conditions x unknowns
    std::vector<double> rhs;
    /// Conditions satisfied by the fixed slots alone (e.g. a0 under c^0_{-1} = 1).
    std::vector<std::string> dropped;
};

/// Validates the constraint set and builds the scaled system.
/// Throws std::invalid_argument for malformed sets and SynthesisError
/// (Inconsistent) when a condition is violated by the fixed slots alone.
[[nodiscard]] SynthesisSystem assemble_system(const ConstraintSet& c);

struct SolveOptions {
    /// Accept overdetermined systems with a nonzero residual and return the
    /// least-squares solution instead of failing.
    bool least_squares = false;
};

/// Residual bound for accepting an overdetermined system as consistent.
inline constexpr double kInconsistencyTolerance = 1e-9;

[[nodiscard]] ObreshkovTableau solve_coefficients(const ConstraintSet& c, SolveOptions options = {});

struct CertificationCheck {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct CertificationReport {
    std::vector<CertificationCheck> checks;
    int origin_multiplicity = 0;
    std::vector<double> frequency_residuals;

    [[nodiscard]] bool passed() const noexcept;
    [[nodiscard]] std::string text() const;
};

[[nodiscard]] CertificationReport verify_synthesis(const ObreshkovTableau& t, const ConstraintSet& c);

/// Constraint sets of the frequency-optimized and high-order members.
[[nodiscard]] ConstraintSet integrator_b_constraints(double h, double omega_select);
[[nodiscard]] ConstraintSet integrator_e_constraints(double h, double omega_select);
[[nodiscard]] ConstraintSet integrator_f_constraints(double h);

}  // namespace odiff
