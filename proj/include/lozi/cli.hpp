#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace lozi::cli {

enum class Subcommand { verify, dld, orbit, periodic, strips };
enum class OutputFormat { csv, pgm };

struct RunConfig {
    Subcommand subcommand = Subcommand::verify;
    double a = 4.5;
    double epsilon = 0.0;
    long n0 = 0;
    long N = 20;
    double p = 0.25;

    // dld grid; bounds default to S = [-R, R]^2
    std::optional<double> x_min, x_max, y_min, y_max;
    double spacing = 0.005;

    // verify
    long n_lo = 0;
    long n_hi = 0;
    std::size_t samples = 10000;
    std::size_t audit_strips = 100;
    std::uint64_t seed = 7;

    // orbit
    double x = 0.0;
    double y = 0.0;
    long forward_steps = 10;
    long backward_steps = 0;

    // periodic
    std::string word;
    double tol = 1e-8;

    std::string output;  // empty = stdout
    OutputFormat format = OutputFormat::csv;
    unsigned workers = 1;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

/// Runs one subcommand; report/CSV text goes to `out`, diagnostics to `err`.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parses argv (argv[0] is the program name) and runs. Invalid flags give kExitUsage.
int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lozi::cli
