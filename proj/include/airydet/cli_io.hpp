#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "airydet/operator_disc.hpp"
#include "json.hpp"

namespace airydet::cli_io {

inline constexpr char VERSION[] = "0.1.0";

// Default Monte Carlo seed.  Frozen: with this seed the mc-gue defaults
// reproduce the reference moments in the test suite bit for bit.
inline constexpr std::uint64_t DEFAULT_SEED = 20260817ULL;

struct SymbolSpec {
    std::string family = "gauss";
    double t = 0.25;
    double shift = 0.0;
};

// Everything a command run depends on.  `out` and `format` control where
// and how results are written but never what is computed.
struct ExperimentConfig {
    std::string command;
    SymbolSpec symbol;
    std::vector<double> alpha;
    std::size_t n_matrix = 400;
    std::size_t n_samples = 2000;
    std::uint64_t seed = DEFAULT_SEED;
    std::size_t nodes = 0;  // 0: per-command default policy
    bool has_window = false;
    operator_disc::Interval window{0.0, 0.0};
    std::vector<double> s_values{0.25, 0.5};
    std::string out;
    std::string format = "json";
};

// Parses "family:key=value,key=value", e.g. "gauss:t=0.25,shift=1".
// Families: gauss (params t, shift), zero.  Throws std::invalid_argument
// on unknown families or keys.
SymbolSpec parse_symbol_spec(const std::string& text);

operator_disc::SymbolFunction make_symbol(const SymbolSpec& spec);

// FNV-1a (64-bit) over the fields the command's *outputs* depend on: the
// command name, the symbol, and the numeric parameters that command
// consumes.  Output path and format are excluded, as are parameters the
// command ignores (e.g. the mc-gue seed does not perturb a det hash).
std::uint64_t config_hash(const ExperimentConfig& cfg);

// One finished run: the JSON document plus the CSV projection of its
// per-point rows.  The header line is a fixed string per command.
struct ResultRecord {
    nlohmann::ordered_json doc;
    std::string csv_header;
    std::vector<std::string> csv_rows;
};

// Dispatches cfg.command (det, asymptotics, wh-compare, mc-gue,
// kernel-check, char-fn) and assembles the record: command, version,
// config_hash, the full input echo (re-runnable), outputs,
// error_estimates, wall_time_ms.
ResultRecord run_command(const ExperimentConfig& cfg);

std::string render_json(const ResultRecord& rec);
std::string render_csv(const ResultRecord& rec);

// Writes to the path ("-" or empty: stdout) in the requested format.
void write_output(const ResultRecord& rec, const std::string& out_path,
                  const std::string& format);

nlohmann::ordered_json load_record(const std::string& path);

// Command-line front end.  Returns nullopt when --help was handled.
// Throws std::invalid_argument for anything malformed.
std::optional<ExperimentConfig> parse_command_line(
    const std::vector<std::string>& args);

// Exception -> process exit code: 2 for configuration problems
// (std::invalid_argument, std::domain_error), 3 for numeric failures
// (detasym::numeric_error), 1 for anything unexpected.
int exit_code_for(const std::exception& e);

// main() body: parse, run, write; exit code 0 on success, otherwise
// exit_code_for of the escaping exception.
int run_main(int argc, char** argv);

}  // namespace airydet::cli_io
