#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "odiff/tableau.hpp"

namespace odiff {

/// Analytic input with exact derivatives of any order.
class Signal {
public:
    struct Cosine {
        double omega;
        double amplitude;
    };
    struct Polynomial {
        std::vector<double> coeffs;  // lowest degree first
    };
    struct Constant {
        double value;
    };
    /// 0 before t_switch, `level` from t_switch on. All derivatives are 0,
    /// including at the switch instant.
    struct Step {
        double t_switch;
        double level;
    };

    static Signal cosine(double omega, double amplitude = 1.0);
    static Signal polynomial(std::vector<double> coeffs);
    static Signal constant(double value);
    static Signal step(double t_switch, double level);

    [[nodiscard]] double deriv(int order, double t) const;
    [[nodiscard]] double value(double t) const { return deriv(0, t); }
    [[nodiscard]] std::string describe() const;

private:
    using Kind = std::variant<Cosine, Polynomial, Constant, Step>;
    explicit Signal(Kind kind) : kind_(std::move(kind)) {}

    Kind kind_;
};

enum class Engine { Direct, StateSpace };
enum class SampleFlag { Init, Startup, Main };

[[nodiscard]] std::string_view to_string(Engine e) noexcept;
[[nodiscard]] std::string_view to_string(SampleFlag f) noexcept;

struct TraceMeta {
    std::vector<std::string> labels;
    std::vector<double> steps;
    std::string init;
    Engine engine = Engine::Direct;
    int derivative_order = 0;
    bool diverged = false;
};

/// Computed k-th derivative samples against the exact ones.
struct SimulationTrace {
    std::vector<double> grid;
    std::vector<double> computed;
    std::vector<double> exact;
    std::vector<double> error;
    std::vector<SampleFlag> flags;
    TraceMeta meta;

    [[nodiscard]] std::size_t size() const noexcept { return grid.size(); }
};

/// Runs the differentiator recursion of `t` on `sig` from 0 to t_end.
///
/// init[j] is the externally supplied k-th derivative at t = -j*h
/// (j = 0..m-1); those samples lead the trace, flagged Init. Step n sits at
/// t = n*h for n = 1..floor(t_end/h). Lower derivatives are exact. A
/// non-finite output truncates the trace and sets meta.diverged.
[[nodiscard]] SimulationTrace run(const ObreshkovTableau& t, const Signal& sig, double t_end,
                                  std::span<const double> init, Engine engine = Engine::Direct);

/// One startup stage: a single-step tableau applied at its own step size.
/// `steps` may be omitted on the final stage only, which then runs to t_end.
struct Stage {
    ObreshkovTableau tableau;
    std::optional<int> steps;
};

/// Concatenates stages on abutting grids; each stage starts from the last
/// output of the previous one. Samples of all but the final stage are
/// flagged Startup.
[[nodiscard]] SimulationTrace run_composite(std::span<const Stage> stages, const Signal& sig,
                                            double init, double t_end);

/// 100 * ||computed - exact||_2 / ||exact||_2, skipping the injected samples
/// and the first `exclude_first` computed ones.
[[nodiscard]] double relative_error_metric(const SimulationTrace& trace, int exclude_first = 2);

/// Mean of |error[n] - error[n-1]| / 2 over consecutive samples inside
/// [t_from, t_to]: half the peak-to-peak of the alternating component.
[[nodiscard]] double oscillation_amplitude(const SimulationTrace& trace, double t_from, double t_to);

/// Header `t,computed,exact,error,flag`, 17 significant digits.
[[nodiscard]] std::string trace_csv(const SimulationTrace& trace);

}  // namespace odiff
