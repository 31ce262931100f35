#pragma once

#include <array>
#include <optional>
#include <string_view>

#include "odiff/tableau.hpp"

namespace odiff {

enum class IntegratorId { BE, BDF2, TR, A, B, C, D, E, F };

inline constexpr std::array<IntegratorId, 9> kAllIntegrators = {
    IntegratorId::BE, IntegratorId::BDF2, IntegratorId::TR, IntegratorId::A, IntegratorId::B,
    IntegratorId::C,  IntegratorId::D,    IntegratorId::E,  IntegratorId::F};

/// The k = 2 single-step family.
inline constexpr std::array<IntegratorId, 6> kSecondDerivativeFamily = {
    IntegratorId::A, IntegratorId::B, IntegratorId::C,
    IntegratorId::D, IntegratorId::E, IntegratorId::F};

[[nodiscard]] std::string_view to_string(IntegratorId id) noexcept;
[[nodiscard]] std::optional<IntegratorId> parse_integrator_id(std::string_view name) noexcept;

/// A, B and E take omega_select.
[[nodiscard]] bool is_frequency_optimized(IntegratorId id) noexcept;

/// Builds a named integrator at step h.
///
/// Throws std::invalid_argument when h <= 0, when omega_select is missing
/// for A/B/E or given for any other member, or when omega_select*h is not
/// admissible. Integrator E is synthesized from its root conditions (single
/// roots at +-j*omega_select, double root at 0, c^2_{-1} = 0).
[[nodiscard]] ObreshkovTableau make_catalog(IntegratorId id, double h,
                                            std::optional<double> omega_select = std::nullopt);

}  // namespace odiff
