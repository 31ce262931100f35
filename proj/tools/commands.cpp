#include "commands.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "odiff/error.hpp"
#include "odiff/io.hpp"
#include "odiff/solver.hpp"
#include "odiff/spectrum.hpp"

namespace odiff::cli {

namespace {

constexpr double kDefaultStep = 1e-3;

ObreshkovTableau load_tableau(const ExperimentConfig& config) {
    if (config.name && config.file) {
        throw std::invalid_argument("give either --name or --file, not both");
    }
    if (config.file) {
        return tableau_from_json(read_file(*config.file));
    }
    if (!config.name) {
        throw std::invalid_argument("a tableau is required (--name or --file)");
    }
    const auto id = parse_integrator_id(*config.name);
    if (!id) {
        throw std::invalid_argument("unknown integrator '" + *config.name + "'");
    }
    std::optional<double> omega;
    if (is_frequency_optimized(*id)) {
        omega = config.omega_select.value_or(config.omega_syn);
    } else if (config.omega_select) {
        throw std::invalid_argument(*config.name + " takes no --omega-select");
    }
    return make_catalog(*id, config.h.value_or(kDefaultStep), omega);
}

void emit(const ExperimentConfig& config, const std::string& filename, const std::string& contents) {
    if (config.out_dir.empty()) {
        return;
    }
    std::filesystem::create_directories(config.out_dir);
    write_file_atomic(config.out_dir / filename, contents);
}

std::string describe(const ObreshkovTableau& t) {
    std::ostringstream out;
    out.precision(17);
    out << (t.label().empty() ? "(unnamed)" : t.label()) << " (k=" << t.k() << ", m=" << t.m()
        << ", h=" << t.h();
    if (t.omega_select()) {
        out << ", omega_select=" << *t.omega_select();
    }
    out << ")";
    return out.str();
}

Signal make_signal(const ExperimentConfig& config) {
    const auto& p = config.signal_params;
    if (config.signal == "cosine") {
        return Signal::cosine(p.size() > 0 ? p[0] : config.omega_syn, p.size() > 1 ? p[1] : 1.0);
    }
    if (config.signal == "constant") {
        return Signal::constant(p.empty() ? 1.0 : p[0]);
    }
    if (config.signal == "polynomial") {
        if (p.empty()) {
            throw std::invalid_argument("polynomial signal needs --signal-params c0,c1,...");
        }
        return Signal::polynomial(p);
    }
    if (config.signal == "step") {
        return Signal::step(p.size() > 0 ? p[0] : 0.0, p.size() > 1 ? p[1] : 1.0);
    }
    throw std::invalid_argument("unknown signal '" + config.signal + "'");
}

// Catches the input errors shared by every command.
template <typename Body>
int guarded(std::ostream& err, Body&& body) {
    try {
        return body();
    } catch (const SynthesisError& e) {
        err << "synthesis failed: " << e.what() << '\n';
        return kSynthesisFailure;
    } catch (const InvalidTableau& e) {
        err << "validation error:\n";
        for (const auto& v : e.violations()) {
            err << "  " << v << '\n';
        }
        return kInputError;
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << '\n';
        return kInputError;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    } catch (const std::domain_error& e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    } catch (const std::filesystem::filesystem_error& e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    } catch (const std::runtime_error& e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    }
}

}  // namespace

int cmd_analyze(const ExperimentConfig& config, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const auto t = load_tableau(config);
        require_valid(t);
        const auto report = analyze(t);
        const std::vector<Table2Row> rows{{t.label(), report}};
        if (config.format == Format::Csv) {
            out << table2_csv(rows);
        } else {
            out << "integrator:     " << describe(t) << '\n'
                << "polynomial:     " << format_polynomial(report.polynomial) << '\n'
                << "roots:         ";
            for (const auto& e : report.evidence) {
                out << ' ' << format_root(e.root);
            }
            out << '\n'
                << "classification: " << to_string(report.classification) << '\n'
                << "hazard:         " << hazard(report.classification) << '\n'
                << "suitable:       " << (report.suitable() ? "Yes" : "No") << '\n';
        }
        emit(config, "analyze.csv", table2_csv(rows));
        return report.suitable() ? kSuccess : kUnsuitable;
    });
}

int cmd_solve(const ExperimentConfig& config, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const auto constraints = constraints_from_json(read_file(config.constraints));
        const auto t = solve_coefficients(constraints, {config.least_squares});
        const auto report = verify_synthesis(t, constraints);
        const auto json = tableau_to_json(t);
        out << json << '\n' << report.text();
        emit(config, "tableau.json", json + "\n");
        return report.passed() ? kSuccess : kSynthesisFailure;
    });
}

int cmd_sweep(const ExperimentConfig& config, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const auto t = load_tableau(config);
        require_valid(t);
        const auto grid = make_grid(config.from, config.to, config.points, config.logarithmic);
        const auto csv = sweep_csv(sweep(t, grid));
        if (config.out_dir.empty()) {
            out << csv;
        } else {
            emit(config, "sweep.csv", csv);
            out << "wrote " << (config.out_dir / "sweep.csv").string() << '\n';
        }
        return kSuccess;
    });
}

int cmd_simulate(const ExperimentConfig& config, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const auto t = load_tableau(config);
        const auto sig = make_signal(config);
        std::vector<double> init = config.init;
        if (init.empty()) {
            for (int j = 0; j < t.m(); ++j) {
                init.push_back(sig.deriv(t.k(), -j * t.h()));
            }
        }
        Engine engine = Engine::Direct;
        if (config.engine == "state-space") {
            engine = Engine::StateSpace;
        } else if (config.engine != "direct") {
            throw std::invalid_argument("unknown engine '" + config.engine + "'");
        }
        const auto trace = run(t, sig, config.t_end.value_or(0.1), init, engine);
        const auto csv = trace_csv(trace);
        if (config.out_dir.empty()) {
            out << csv;
            return kSuccess;
        }
        emit(config, "trace.csv", csv);
        out << "integrator: " << describe(t) << '\n' << "signal:     " << sig.describe() << '\n';
        out << "samples:    " << trace.size() << (trace.meta.diverged ? " (DIVERGED)" : "") << '\n';
        try {
            out << "err:        " << std::setprecision(6) << relative_error_metric(trace) << " %\n";
        } catch (const std::exception& e) {
            out << "err:        n/a (" << e.what() << ")\n";
        }
        return kSuccess;
    });
}

int cmd_fig1(const ExperimentConfig& config, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const double init = config.init.empty() ? 300.0 : config.init.front();
        const auto r = experiments::fig1(config.h.value_or(1e-3), init, config.t_end.value_or(0.02),
                                         config.omega_syn);
        emit(config, "fig1_tr.csv", trace_csv(r.trace));
        out << std::setprecision(6) << "fig1: TR, improper init " << init << '\n'
            << "  oscillation amplitude [0.01, 0.02] s: " << r.amplitude << '\n'
            << "  sign alternation fraction:            " << r.alternation_fraction << '\n';
        return kSuccess;
    });
}

int cmd_fig2(const ExperimentConfig& config, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const double init = config.init.empty() ? 300.0 : config.init.front();
        const auto schemes = experiments::fig2(config.h.value_or(1e-3), init,
                                               config.t_end.value_or(0.02), config.omega_syn);
        out << std::setprecision(6) << "fig2: BE half-step startup, then TR; init " << init << '\n';
        for (const auto& s : schemes) {
            emit(config, "fig2_be" + std::to_string(s.half_steps) + ".csv", trace_csv(s.trace));
            out << "  " << s.half_steps << " BE half steps: amplitude [0.01, 0.02] s = " << s.amplitude
                << ", late/early ratio = " << s.damping_ratio() << '\n';
        }
        return kSuccess;
    });
}

int cmd_fig3(const ExperimentConfig& config, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const double init = config.init.empty() ? 0.0 : config.init.front();
        const double omega = config.omega_select.value_or(config.omega_syn);
        const auto curves =
            experiments::fig3(config.h.value_or(2e-3), init, config.t_end.value_or(0.12), omega);
        out << std::setprecision(6) << "fig3: second-derivative differentiators, init " << init << '\n';
        for (const auto& c : curves) {
            emit(config, "fig3_" + std::string(to_string(c.id)) + ".csv", trace_csv(c.trace));
            out << "  " << to_string(c.id) << ": terminal bias = " << c.terminal_bias
                << " (" << c.terminal_bias / (omega * omega) << " omega^2), settling step = ";
            if (c.settling_step < 0) {
                out << "never";
            } else {
                out << c.settling_step;
            }
            out << '\n';
        }
        return kSuccess;
    });
}

int cmd_table2(const ExperimentConfig& config, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const double omega = config.omega_select.value_or(config.omega_syn);
        const auto rows = table2_report(config.h.value_or(kDefaultStep), omega);
        const auto csv = table2_csv(rows);
        emit(config, "table2.csv", csv);
        const auto checks = experiments::check_table2(rows);
        const bool all = std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.passed(); });
        if (config.format == Format::Csv) {
            out << csv;
        } else {
            out << table2_text(rows);
            for (const auto& c : checks) {
                out << (c.passed() ? "PASS " : "FAIL ") << c.label << '\n';
            }
        }
        return all ? kSuccess : kGoldenMismatch;
    });
}

int cmd_table3(const ExperimentConfig& config, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const double init = config.init.empty() ? 0.0 : config.init.front();
        const auto cells = experiments::table3(config.omega_syn, config.t_end.value_or(1.0), init);
        const auto csv = experiments::table3_csv(cells);
        emit(config, "table3.csv", csv);
        out << (config.format == Format::Csv ? csv : experiments::table3_text(cells));
        const bool all = std::all_of(cells.begin(), cells.end(), [](const auto& c) { return c.passed; });
        return all ? kSuccess : kGoldenMismatch;
    });
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Suitability analysis of Obreshkov-like integrators used as numerical differentiators"};
    app.require_subcommand(1, 1);

    ExperimentConfig config;
    std::string format = "text";

    auto add_common = [&](CLI::App* sub) {
        sub->set_help_flag("--help", "Print this help message and exit");
        sub->add_option("--h", config.h, "Step size in seconds")->check(CLI::PositiveNumber);
        sub->add_option("--omega-select", config.omega_select, "Selected angular frequency (rad/s)")
            ->check(CLI::PositiveNumber);
        sub->add_option("--omega-syn", config.omega_syn, "Test-signal angular frequency (rad/s)")
            ->check(CLI::PositiveNumber);
        sub->add_option("--t-end", config.t_end, "End time in seconds")->check(CLI::PositiveNumber);
        sub->add_option("--init", config.init, "Injected initial value(s) of the computed derivative")
            ->delimiter(',');
        sub->add_option("--out", config.out_dir, "Directory for CSV/JSON outputs");
        sub->add_option("--format", format, "Console format")->check(CLI::IsMember({"text", "csv"}));
    };
    auto add_tableau = [&](CLI::App* sub) {
        sub->add_option("--name", config.name, "Catalog integrator: BE, BDF2, TR, A, B, C, D, E, F");
        sub->add_option("--file", config.file, "Tableau JSON file")->check(CLI::ExistingFile);
    };

    auto* analyze = app.add_subcommand("analyze", "Classify a tableau as a differentiator");
    add_common(analyze);
    add_tableau(analyze);

    auto* solve = app.add_subcommand("solve", "Synthesize coefficients from root conditions");
    add_common(solve);
    solve->add_option("--constraints", config.constraints, "ConstraintSet JSON file")
        ->required()
        ->check(CLI::ExistingFile);
    solve->add_flag("--least-squares", config.least_squares, "Accept inconsistent overdetermined systems");

    auto* sweep_cmd = app.add_subcommand("sweep", "|R(j omega)| over a frequency grid");
    add_common(sweep_cmd);
    add_tableau(sweep_cmd);
    sweep_cmd->add_option("--from", config.from, "First angular frequency (rad/s)")->check(CLI::PositiveNumber);
    sweep_cmd->add_option("--to", config.to, "Last angular frequency (rad/s)")->check(CLI::PositiveNumber);
    sweep_cmd->add_option("--points", config.points, "Number of grid points")->check(CLI::PositiveNumber);
    sweep_cmd->add_flag("--log", config.logarithmic, "Logarithmic spacing");

    auto* simulate = app.add_subcommand("simulate", "Run the differentiator recursion on a signal");
    add_common(simulate);
    add_tableau(simulate);
    simulate->add_option("--signal", config.signal, "cosine | constant | polynomial | step")
        ->check(CLI::IsMember({"cosine", "constant", "polynomial", "step"}));
    simulate->add_option("--signal-params", config.signal_params,
                         "cosine: omega,amplitude; constant: c; polynomial: c0,c1,...; step: t,level")
        ->delimiter(',');
    simulate->add_option("--engine", config.engine, "direct | state-space")
        ->check(CLI::IsMember({"direct", "state-space"}));

    auto* fig1_cmd = app.add_subcommand("fig1", "TR oscillation after an improper initial value");
    add_common(fig1_cmd);
    auto* fig2_cmd = app.add_subcommand("fig2", "Backward-Euler half-step startup before TR");
    add_common(fig2_cmd);
    auto* fig3_cmd = app.add_subcommand("fig3", "Bias of A and C against Integrator E");
    add_common(fig3_cmd);
    auto* table2_cmd = app.add_subcommand("table2", "Suitability table for integrators A-F");
    add_common(table2_cmd);
    auto* table3_cmd = app.add_subcommand("table3", "Error table for B, D, E, F over six step sizes");
    add_common(table3_cmd);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? kSuccess : kInputError;
    }
    config.format = format == "csv" ? Format::Csv : Format::Text;

    const auto* sub = app.get_subcommands().front();
    config.command = sub->get_name();
    if (sub == analyze) return cmd_analyze(config, out, err);
    if (sub == solve) return cmd_solve(config, out, err);
    if (sub == sweep_cmd) return cmd_sweep(config, out, err);
    if (sub == simulate) return cmd_simulate(config, out, err);
    if (sub == fig1_cmd) return cmd_fig1(config, out, err);
    if (sub == fig2_cmd) return cmd_fig2(config, out, err);
    if (sub == fig3_cmd) return cmd_fig3(config, out, err);
    if (sub == table2_cmd) return cmd_table2(config, out, err);
    return cmd_table3(config, out, err);
}

}  // namespace odiff::cli
