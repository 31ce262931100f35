#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "experiments.hpp"

namespace odiff::cli {

/// Process exit codes.
enum ExitCode : int {
    kSuccess = 0,
    kInputError = 1,
    kUnsuitable = 2,
    kSynthesisFailure = 3,
    kGoldenMismatch = 4,
};

enum class Format { Text, Csv };

struct ExperimentConfig {
    std::string command;
    std::optional<double> h;
    std::vector<double> steps_us;  // table3 override
    std::optional<double> omega_select;
    double omega_syn = experiments::kOmegaSyn;
    std::optional<double> t_end;
    std::vector<double> init;
    std::filesystem::path out_dir;
    Format format = Format::Text;

    // analyze / sweep / simulate
    std::optional<std::string> name;
    std::optional<std::filesystem::path> file;

    // solve
    std::filesystem::path constraints;
    bool least_squares = false;

    // sweep
    double from = 1.0;
    double to = 1e4;
    int points = 200;
    bool logarithmic = false;

    // simulate
    std::string signal = "cosine";
    std::vector<double> signal_params;
    std::string engine = "direct";
};

int cmd_analyze(const ExperimentConfig& config, std::ostream& out, std::ostream& err);
int cmd_solve(const ExperimentConfig& config, std::ostream& out, std::ostream& err);
int cmd_sweep(const ExperimentConfig& config, std::ostream& out, std::ostream& err);
int cmd_simulate(const ExperimentConfig& config, std::ostream& out, std::ostream& err);
int cmd_fig1(const ExperimentConfig& config, std::ostream& out, std::ostream& err);
int cmd_fig2(const ExperimentConfig& config, std::ostream& out, std::ostream& err);
int cmd_fig3(const ExperimentConfig& config, std::ostream& out, std::ostream& err);
int cmd_table2(const ExperimentConfig& config, std::ostream& out, std::ostream& err);
int cmd_table3(const ExperimentConfig& config, std::ostream& out, std::ostream& err);

/// Parses argv and dispatches to the matching command.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace odiff::cli
