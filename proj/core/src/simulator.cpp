#include "odiff/simulator.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace odiff {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

// Number of whole steps of size h in [0, span], tolerant of representation
// error in span / h (e.g. 1 / 125e-6).
int whole_steps(double span, double h) {
    const double ratio = span / h;
    const double rounded = std::round(ratio);
    if (std::abs(ratio - rounded) <= 1e-9 * std::max(1.0, rounded)) {
        return static_cast<int>(rounded);
    }
    return static_cast<int>(std::floor(ratio));
}

// Everything in the recursion except the feedback on previous outputs.
// `at(j)` is the time of the sample j steps back.
template <typename TimeAt>
double forcing(const DifferentiatorRule& rule, const Signal& sig, TimeAt at) {
    const int m = rule.base.m();
    double f = rule.current_value_weight * sig.value(at(0));
    for (int j = 1; j <= m; ++j) {
        f += rule.past_value_weights[static_cast<std::size_t>(j - 1)] * sig.value(at(j));
    }
    for (std::size_t i = 0; i < rule.derivative_weights.size(); ++i) {
        const int order = static_cast<int>(i) + 1;
        const auto& weights = rule.derivative_weights[i];
        for (int j = 0; j <= m; ++j) {
            const double w = weights[static_cast<std::size_t>(j)];
            if (w != 0.0) {
                f += w * sig.deriv(order, at(j));
            }
        }
    }
    return f;
}

void push_sample(SimulationTrace& trace, double t, double computed, double exact, SampleFlag flag) {
    trace.grid.push_back(t);
    trace.computed.push_back(computed);
    trace.exact.push_back(exact);
    trace.error.push_back(computed - exact);
    trace.flags.push_back(flag);
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

Signal Signal::cosine(double omega, double amplitude) {
    return Signal(Cosine{omega, amplitude});
}

Signal Signal::polynomial(std::vector<double> coeffs) {
    return Signal(Polynomial{std::move(coeffs)});
}

Signal Signal::constant(double value) {
    return Signal(Constant{value});
}

Signal Signal::step(double t_switch, double level) {
    return Signal(Step{t_switch, level});
}

double Signal::deriv(int order, double t) const {
    if (order < 0) {
        throw std::invalid_argument("signal: negative derivative order");
    }
    return std::visit(
        overloaded{
            [&](const Cosine& c) {
                // d^n/dt^n cos(wt) = w^n cos(wt + n*pi/2)
                const double scale = c.amplitude * std::pow(c.omega, order);
                const double phase = c.omega * t;
                switch (order % 4) {
                    case 0: return scale * std::cos(phase);
                    case 1: return -scale * std::sin(phase);
                    case 2: return -scale * std::cos(phase);
                    default: return scale * std::sin(phase);
                }
            },
            [&](const Polynomial& p) {
                double acc = 0.0;
                for (std::size_t d = p.coeffs.size(); d-- > static_cast<std::size_t>(order);) {
                    double falling = 1.0;
                    for (int q = 0; q < order; ++q) {
                        falling *= static_cast<double>(d) - q;
                    }
                    acc = acc * t + p.coeffs[d] * falling;
                }
                return acc;
            },
            [&](const Constant& c) { return order == 0 ? c.value : 0.0; },
            [&](const Step& s) { return order == 0 && t >= s.t_switch ? s.level : 0.0; },
        },
        kind_);
}

std::string Signal::describe() const {
    std::ostringstream out;
    out.precision(17);
    std::visit(overloaded{
                   [&](const Cosine& c) { out << "cosine(omega=" << c.omega << ", amplitude=" << c.amplitude << ")"; },
                   [&](const Polynomial& p) {
                       out << "polynomial(";
                       for (std::size_t i = 0; i < p.coeffs.size(); ++i) {
                           out << (i ? "," : "") << p.coeffs[i];
                       }
                       out << ")";
                   },
                   [&](const Constant& c) { out << "constant(" << c.value << ")"; },
                   [&](const Step& s) { out << "step(t=" << s.t_switch << ", level=" << s.level << ")"; },
               },
               kind_);
    return out.str();
}

std::string_view to_string(Engine e) noexcept {
    return e == Engine::Direct ? "direct" : "state-space";
}

std::string_view to_string(SampleFlag f) noexcept {
    switch (f) {
        case SampleFlag::Init: return "init";
        case SampleFlag::Startup: return "startup";
        case SampleFlag::Main: return "main";
    }
    return "main";
}

SimulationTrace run(const ObreshkovTableau& t, const Signal& sig, double t_end,
                    std::span<const double> init, Engine engine) {
    const auto rule = differentiator_form(t);
    const int k = t.k();
    const int m = t.m();
    const double h = t.h();
    if (init.size() != static_cast<std::size_t>(m)) {
        throw std::invalid_argument("run: init must hold m = " + std::to_string(m) + " values");
    }
    if (!(t_end >= m * h) || !std::isfinite(t_end)) {
        throw std::invalid_argument("run: t_end must be at least m*h");
    }
    const int steps = whole_steps(t_end, h);

    SimulationTrace trace;
    trace.meta.labels = {t.label()};
    trace.meta.steps = {h};
    trace.meta.engine = engine;
    trace.meta.derivative_order = k;
    {
        std::ostringstream desc;
        desc.precision(17);
        for (std::size_t j = 0; j < init.size(); ++j) {
            desc << (j ? "," : "") << init[j];
        }
        trace.meta.init = desc.str();
    }

    const auto total = static_cast<std::size_t>(steps + m);
    trace.grid.reserve(total);
    trace.computed.reserve(total);
    trace.exact.reserve(total);
    trace.error.reserve(total);
    trace.flags.reserve(total);

    for (int j = m - 1; j >= 0; --j) {
        const double time = 0.0 - static_cast<double>(j) * h;  // never -0
        push_sample(trace, time, init[static_cast<std::size_t>(j)], sig.deriv(k, time), SampleFlag::Init);
    }

    // history[j-1] = ubar at step n-j
    std::vector<double> history(init.begin(), init.end());

    Eigen::MatrixXd transition;
    Eigen::VectorXd state;
    if (engine == Engine::StateSpace) {
        transition = Eigen::MatrixXd::Zero(m, m);
        for (int j = 0; j < m; ++j) {
            transition(0, j) = rule.feedback[static_cast<std::size_t>(j)];
        }
        for (int r = 1; r < m; ++r) {
            transition(r, r - 1) = 1.0;
        }
        state = Eigen::Map<const Eigen::VectorXd>(init.data(), m);
    }

    for (int n = 1; n <= steps; ++n) {
        const auto at = [n, h](int j) { return static_cast<double>(n - j) * h; };
        const double f = forcing(rule, sig, at);

        double out = 0.0;
        if (engine == Engine::Direct) {
            double feedback = 0.0;
            for (int j = 0; j < m; ++j) {
                feedback += rule.feedback[static_cast<std::size_t>(j)] * history[static_cast<std::size_t>(j)];
            }
            out = feedback + f;
            for (int j = m - 1; j > 0; --j) {
                history[static_cast<std::size_t>(j)] = history[static_cast<std::size_t>(j - 1)];
            }
            history[0] = out;
        } else {
            state = transition * state;
            state(0) += f;
            out = state(0);
        }

        if (!std::isfinite(out)) {
            trace.meta.diverged = true;
            break;
        }
        const double time = at(0);
        push_sample(trace, time, out, sig.deriv(k, time), SampleFlag::Main);
    }
    return trace;
}

SimulationTrace run_composite(std::span<const Stage> stages, const Signal& sig, double init,
                              double t_end) {
    if (stages.empty()) {
        throw std::invalid_argument("run_composite: no stages");
    }
    const int k = stages.front().tableau.k();
    for (std::size_t s = 0; s < stages.size(); ++s) {
        const auto& stage = stages[s];
        if (stage.tableau.m() != 1) {
            throw std::invalid_argument("run_composite: only single-step stages are supported");
        }
        if (stage.tableau.k() != k) {
            throw std::invalid_argument("run_composite: stages differ in derivative order");
        }
        const bool last = s + 1 == stages.size();
        if (!stage.steps && !last) {
            throw std::invalid_argument("run_composite: only the final stage may run to t_end");
        }
        if (stage.steps && *stage.steps < 1) {
            throw std::invalid_argument("run_composite: stage step count must be positive");
        }
    }

    SimulationTrace trace;
    trace.meta.derivative_order = k;
    trace.meta.engine = Engine::Direct;
    {
        std::ostringstream desc;
        desc.precision(17);
        desc << init;
        trace.meta.init = desc.str();
    }
    push_sample(trace, 0.0, init, sig.deriv(k, 0.0), SampleFlag::Init);

    double previous = init;
    double start = 0.0;
    for (std::size_t s = 0; s < stages.size(); ++s) {
        const auto& stage = stages[s];
        const auto rule = differentiator_form(stage.tableau);
        const double h = stage.tableau.h();
        const bool last = s + 1 == stages.size();
        trace.meta.labels.push_back(stage.tableau.label());
        trace.meta.steps.push_back(h);

        const double remaining = t_end - start;
        if (!(remaining > 0.0)) {
            throw std::invalid_argument("run_composite: stage " + std::to_string(s) +
                                        " starts at or after t_end");
        }
        const int available = whole_steps(remaining, h);
        const int steps = stage.steps ? *stage.steps : available;
        if (steps > available) {
            throw std::invalid_argument("run_composite: stage " + std::to_string(s) + " overruns t_end");
        }

        const double fb = rule.feedback.front();
        for (int n = 1; n <= steps; ++n) {
            const auto at = [start, n, h](int j) { return start + static_cast<double>(n - j) * h; };
            const double out = fb * previous + forcing(rule, sig, at);
            if (!std::isfinite(out)) {
                trace.meta.diverged = true;
                return trace;
            }
            const double time = at(0);
            push_sample(trace, time, out, sig.deriv(k, time), last ? SampleFlag::Main : SampleFlag::Startup);
            previous = out;
        }
        start += static_cast<double>(steps) * h;
    }
    return trace;
}

double relative_error_metric(const SimulationTrace& trace, int exclude_first) {
    if (exclude_first < 0) {
        throw std::invalid_argument("relative_error_metric: exclude_first must be non-negative");
    }
    double err2 = 0.0;
    double ref2 = 0.0;
    int skipped = 0;
    int used = 0;
    for (std::size_t n = 0; n < trace.size(); ++n) {
        if (trace.flags[n] == SampleFlag::Init) {
            continue;
        }
        if (skipped < exclude_first) {
            ++skipped;
            continue;
        }
        err2 += trace.error[n] * trace.error[n];
        ref2 += trace.exact[n] * trace.exact[n];
        ++used;
    }
    if (used < 1) {
        throw std::invalid_argument("relative_error_metric: no samples left after exclusion");
    }
    if (ref2 == 0.0) {
        throw std::domain_error("relative_error_metric: exact derivative vanishes on the window");
    }
    return 100.0 * std::sqrt(err2) / std::sqrt(ref2);
}

double oscillation_amplitude(const SimulationTrace& trace, double t_from, double t_to) {
    if (!(t_to > t_from)) {
        throw std::invalid_argument("oscillation_amplitude: empty window");
    }
    const double slack = 1e-9 * std::max(std::abs(t_from), std::abs(t_to));
    std::vector<double> errors;
    for (std::size_t n = 0; n < trace.size(); ++n) {
        if (trace.grid[n] >= t_from - slack && trace.grid[n] <= t_to + slack) {
            errors.push_back(trace.error[n]);
        }
    }
    if (errors.size() < 4) {
        throw std::invalid_argument("oscillation_amplitude: window holds fewer than 4 samples");
    }
    double sum = 0.0;
    for (std::size_t n = 1; n < errors.size(); ++n) {
        sum += std::abs(errors[n] - errors[n - 1]) / 2.0;
    }
    return sum / static_cast<double>(errors.size() - 1);
}

std::string trace_csv(const SimulationTrace& trace) {
    std::string out = "t,computed,exact,error,flag\n";
    for (std::size_t n = 0; n < trace.size(); ++n) {
        out += format_double(trace.grid[n]);
        out += ',';
        out += format_double(trace.computed[n]);
        out += ',';
        out += format_double(trace.exact[n]);
        out += ',';
        out += format_double(trace.error[n]);
        out += ',';
        out += to_string(trace.flags[n]);
        out += '\n';
    }
    return out;
}

}  // namespace odiff
