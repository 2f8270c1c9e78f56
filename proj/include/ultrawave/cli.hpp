#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace ultrawave::cli {

enum ExitCode : int { kPass = 0, kConfigError = 1, kCheckFailure = 2 };

/// Thrown for anything the user can fix by changing the configuration.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ExperimentConfig {
    std::string command;
    int p = 2;
    int n = 2;
    double alpha = 1.0;
    int N = 0;
    int l = 1;
    std::uint64_t seed = 1;
    std::vector<std::string> routes{"radon", "direct", "spectral", "convolution"};
    std::string out = ".";
    std::string format = "json";

    /// Throws ConfigError.
    void validate() const;
};

/// Files produced by one command, keyed by file name (relative to out).
struct CommandResult {
    bool pass = true;
    std::string summary;
    std::map<std::string, std::string> files;
};

CommandResult run_command(const ExperimentConfig& config);

/// Full front end: parse, run, write files, report.  Returns the exit code.
int main(int argc, const char* const* argv);

}  // namespace ultrawave::cli
