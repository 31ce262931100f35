#include "odiff/catalog.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "odiff/solver.hpp"

namespace odiff {

std::string_view to_string(IntegratorId id) noexcept {
    switch (id) {
        case IntegratorId::BE: return "BE";
        case IntegratorId::BDF2: return "BDF2";
        case IntegratorId::TR: return "TR";
        case IntegratorId::A: return "A";
        case IntegratorId::B: return "B";
        case IntegratorId::C: return "C";
        case IntegratorId::D: return "D";
        case IntegratorId::E: return "E";
        case IntegratorId::F: return "F";
    }
    return "?";
}

std::optional<IntegratorId> parse_integrator_id(std::string_view name) noexcept {
    for (auto id : kAllIntegrators) {
        if (to_string(id) == name) {
            return id;
        }
    }
    return std::nullopt;
}

bool is_frequency_optimized(IntegratorId id) noexcept {
    return id == IntegratorId::A || id == IntegratorId::B || id == IntegratorId::E;
}

ObreshkovTableau make_catalog(IntegratorId id, double h, std::optional<double> omega_select) {
    const std::string name(to_string(id));
    if (!(h > 0.0) || !std::isfinite(h)) {
        throw std::invalid_argument(name + ": step size must be positive");
    }
    if (is_frequency_optimized(id)) {
        if (!omega_select) {
            throw std::invalid_argument(name + ": omega_select is required");
        }
        require_admissible(*omega_select, h);
    } else if (omega_select) {
        throw std::invalid_argument(name + ": omega_select does not apply");
    }

    switch (id) {
        case IntegratorId::BE:
            return {1, 1, h, {1.0}, {{h, 0.0}}, name};
        case IntegratorId::BDF2:
            return {1, 2, h, {4.0 / 3.0, -1.0 / 3.0}, {{2.0 / 3.0 * h, 0.0, 0.0}}, name};
        case IntegratorId::TR:
            return {1, 1, h, {1.0}, {{h / 2.0, h / 2.0}}, name};
        case IntegratorId::A: {
            const double w = *omega_select;
            const double c2 = -1.0 / (w * w) + h / (2.0 * w) / std::tan(w * h / 2.0);
            return {2, 1, h, {1.0}, {{h / 2.0, h / 2.0}, {c2, -c2}}, name, w};
        }
        case IntegratorId::B: {
            const double w = *omega_select;
            const double theta = w * h;
            return {2, 1, h, {1.0}, {{std::sin(theta) / w, 0.0}, {(std::cos(theta) - 1.0) / (w * w), 0.0}},
                    name, w};
        }
        case IntegratorId::C:
            return {2, 1, h, {1.0}, {{h / 2.0, h / 2.0}, {-h * h / 12.0, h * h / 12.0}}, name};
        case IntegratorId::D:
            return {2, 1, h, {1.0}, {{h, 0.0}, {-h * h / 2.0, 0.0}}, name};
        case IntegratorId::E:
            return solve_coefficients(integrator_e_constraints(h, *omega_select)).with_label(name);
        case IntegratorId::F:
            return {2, 1, h, {1.0}, {{2.0 / 3.0 * h, h / 3.0}, {-h * h / 6.0, 0.0}}, name};
    }
    throw std::invalid_argument("unknown integrator");
}

}  // namespace odiff
