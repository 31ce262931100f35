#pragma once

#include <array>
#include <numbers>
#include <string>
#include <vector>

#include "odiff/catalog.hpp"
#include "odiff/simulator.hpp"
#include "odiff/suitability.hpp"

namespace odiff::experiments {

inline constexpr double kOmegaSyn = 120.0 * std::numbers::pi;

/// Reference relative errors (percent) for the second-derivative differentiators,
/// four decimals.
struct Table3Reference {
    IntegratorId id;
    int step_us;
    double value;
};

inline constexpr std::array<int, 6> kTable3StepsUs = {125, 250, 500, 1000, 2000, 4000};
inline constexpr std::array<IntegratorId, 4> kTable3Integrators = {IntegratorId::B, IntegratorId::D,
                                                                   IntegratorId::E, IntegratorId::F};

inline constexpr std::array<Table3Reference, 24> kTable3Reference = {{
    {IntegratorId::B, 125, 0.0000},   {IntegratorId::D, 125, 1.5709},   {IntegratorId::E, 125, 0.0000},
    {IntegratorId::F, 125, 0.0185},   {IntegratorId::B, 250, 0.0000},   {IntegratorId::D, 250, 3.1418},
    {IntegratorId::E, 250, 0.0000},   {IntegratorId::F, 250, 0.0740},   {IntegratorId::B, 500, 0.0000},
    {IntegratorId::D, 500, 6.2820},   {IntegratorId::E, 500, 0.0000},   {IntegratorId::F, 500, 0.2959},
    {IntegratorId::B, 1000, 0.0000},  {IntegratorId::D, 1000, 12.5428}, {IntegratorId::E, 1000, 0.0000},
    {IntegratorId::F, 1000, 1.1809},  {IntegratorId::B, 2000, 0.0000},  {IntegratorId::D, 2000, 24.8785},
    {IntegratorId::E, 2000, 0.0000},  {IntegratorId::F, 2000, 4.6812},  {IntegratorId::B, 4000, 0.0000},
    {IntegratorId::D, 4000, 48.0113}, {IntegratorId::E, 4000, 0.0000},  {IntegratorId::F, 4000, 18.0758},
}};

/// Acceptance policy for table3: relative match for nonzero references,
/// absolute bound for the "0.0000" cells.
inline constexpr double kTable3RelativeTolerance = 0.02;
inline constexpr double kTable3ExactBound = 1e-6;

[[nodiscard]] double table3_reference(IntegratorId id, int step_us);

struct Table3Cell {
    IntegratorId id;
    int step_us = 0;
    double computed = 0.0;
    double reference = 0.0;
    bool passed = false;
};

/// Runs the 24 table3 simulations (cosine input at omega_syn, improper init).
[[nodiscard]] std::vector<Table3Cell> table3(double omega_syn = kOmegaSyn, double t_end = 1.0,
                                             double init = 0.0);
[[nodiscard]] std::string table3_csv(const std::vector<Table3Cell>& cells);
[[nodiscard]] std::string table3_text(const std::vector<Table3Cell>& cells);

struct Table2Expectation {
    IntegratorId id;
    std::vector<double> polynomial;
    double root;
    bool suitable;
    std::string_view hazard;
};

/// Expected suitability verdicts for A-F.
[[nodiscard]] const std::vector<Table2Expectation>& table2_expectations();

struct Table2Check {
    std::string label;
    bool polynomial_ok = false;
    bool root_ok = false;
    bool suitable_ok = false;
    bool hazard_ok = false;

    [[nodiscard]] bool passed() const noexcept { return polynomial_ok && root_ok && suitable_ok && hazard_ok; }
};

[[nodiscard]] std::vector<Table2Check> check_table2(const std::vector<Table2Row>& rows);

struct Fig1Result {
    SimulationTrace trace;
    double amplitude = 0.0;            // over [0.01, 0.02] s
    double alternation_fraction = 0.0;  // consecutive error pairs of opposite sign, same window
};

[[nodiscard]] Fig1Result fig1(double h = 1e-3, double init = 300.0, double t_end = 0.02,
                              double omega_syn = kOmegaSyn);

struct Fig2Scheme {
    int half_steps = 0;
    SimulationTrace trace;
    double amplitude = 0.0;        // [0.01, 0.02]
    double amplitude_early = 0.0;  // [0.005, 0.01]
    double amplitude_late = 0.0;   // [0.015, 0.02]

    [[nodiscard]] double damping_ratio() const noexcept { return amplitude_late / amplitude_early; }
};

/// TR preceded by 2 and by 4 backward-Euler half steps.
[[nodiscard]] std::vector<Fig2Scheme> fig2(double h = 1e-3, double init = 300.0, double t_end = 0.02,
                                           double omega_syn = kOmegaSyn);

struct Fig3Curve {
    IntegratorId id;
    SimulationTrace trace;
    double terminal_bias = 0.0;      // mean error over the final 10 samples
    double max_error_from_2 = 0.0;   // max |error| over steps n >= 2
    int settling_step = -1;          // first n with |error| < 1e-6 omega^2 from n on; -1 if never
};

[[nodiscard]] std::vector<Fig3Curve> fig3(double h = 2e-3, double init = 0.0, double t_end = 0.12,
                                          double omega_syn = kOmegaSyn);

/// Fraction of consecutive samples in [t_from, t_to] whose errors differ in sign.
[[nodiscard]] double alternation_fraction(const SimulationTrace& trace, double t_from, double t_to);

}  // namespace odiff::experiments
