#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace stark {

enum class Command { airy, scattering, spectrum, scan, string, verify };
enum class OutputFormat { csv, json };

struct RunConfig {
    Command command = Command::verify;
    std::string potential_path;
    std::vector<double> f_values; // strictly descending
    // airy
    double re = 0, im = 0;
    // scattering: k0:k1:n
    double k0 = 0.2, k1 = 5.0;
    int kn = 50;
    // scan
    double re_k0 = 0, re_k1 = 0, im_k0 = 0, im_k1 = 0;
    int max_depth = 8;
    // string
    std::string family = "positive-axis";
    std::optional<std::pair<double, double>> window;
    bool refine = false;
    std::string output_path;
    OutputFormat format = OutputFormat::csv;
    int threads = 1;
};

// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 1;
inline constexpr int kExitNumerical = 2;
inline constexpr int kExitVerify = 3;

// Worker count from STARK_THREADS, or the available parallelism when unset.
// Throws ConfigError for anything but a positive integer.
int threads_from_env();

// Runs one command, writing its artifact to out. Returns the exit code; exceptions propagate.
int run(const RunConfig& cfg, std::ostream& out);

// Parses argv, runs, maps exceptions to exit codes and reports them on stderr.
int run_cli(int argc, char** argv);

} // namespace stark
