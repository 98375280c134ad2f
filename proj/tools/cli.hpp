#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include <json.hpp>

#include "lva/lattice.hpp"

namespace lva::cli {

inline constexpr const char* kVersion = "0.1.0";

enum class ExitCode : int { ok = 0, check_failed = 1, input_error = 2, resource_cap = 3 };

struct RunConfig {
  std::string command;
  std::string lattice_source = "A1";
  std::string ring = "Q";
  long long max_weight = -1;  // -1: per-command default
  long long max_mode = 2;
  long long truncation = 1;
  long long samples = -1;  // -1: per-command default, 0: exhaustive
  std::uint64_t seed = 0;
  std::string output;  // empty: standard output
  std::string format = "text";
  bool timing = false;
  std::size_t threads = 0;
};

using Report = nlohmann::ordered_json;

/// Parses a lattice description: {"name": string, "gram": [[int, ...], ...]}.
/// Throws InputError with a line-level diagnostic on malformed input.
Lattice parse_lattice_text(const std::string& text, const std::string& origin = "<input>");
Lattice parse_lattice_file(const std::string& path);

/// A preset name or a path to a lattice file.
Lattice resolve_lattice(const std::string& source);

/// Executes the command, filling `report`, and returns the process exit code.
ExitCode run(const RunConfig& config, Report& report);

/// Text rendering of a structured report.
std::string render_text(const Report& report);

/// Runs, serializes in the configured format to the configured output, and
/// returns the exit code.
int run_and_emit(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace lva::cli
