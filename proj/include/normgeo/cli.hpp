#pragma once

// Batch front end: norm-spec parsing, command dispatch and report emission.
//
// Spec grammar:
//   lp:<p>:dim=<n>          p a real >= 1 or "inf"
//   l<p>:dim=<n>            shorthand, e.g. l1:dim=2, linf:dim=3
//   wlp:<p>:w=<w1,...,wn>
//   quad:@<file> | quad:<json>       JSON rows of a symmetric positive-definite A
//   kt:<lambda>
//   poly:@<file> | poly:<json>       JSON list of functional rows
//   stadium:<c>
//
// Vectors are "1,2,3", a JSON array, or @<file> holding a JSON array.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "normgeo/norms.hpp"

namespace normgeo::cli {

inline constexpr int kSchemaVersion = 1;

inline constexpr int kExitOk = 0;
inline constexpr int kExitViolation = 1;
inline constexpr int kExitError = 2;

/// Throws InvalidArgument whose message names the offending token.
NormSpec parse_norm_spec(std::string_view text);

Vector parse_vector(std::string_view text);

enum class Command { g, angle, ae_estimate, probe, exposed, dual, suite };
enum class Format { json, csv };

const char* to_string(Command c) noexcept;
Command parse_command(std::string_view name);

struct RunConfig {
    Command command = Command::g;
    std::vector<std::string> norms;  ///< one or two spec strings
    std::optional<std::string> x, y, f, psi;
    std::optional<std::string> property;  ///< probe: strict|uc|nonsquare|angle-inf|extreme|dunkl-williams
    std::optional<double> eps;
    std::optional<std::string> eps_grid;      ///< "<lo>:<hi>:<count>" or "e1,e2,..."
    std::optional<std::string> samples_grid;  ///< "n1,n2,..."
    bool dual_side = false;                   ///< ae-estimate on the dual norms
    std::optional<std::size_t> samples;
    std::optional<std::size_t> refine_iters;
    std::optional<double> tol;
    double cap = 1e6;
    std::uint64_t seed = 0;
    Format format = Format::json;
};

struct RunResult {
    int exit_code;
    std::string output;  ///< one JSON document, or CSV text
};

/// Never throws: errors become a JSON diagnostic with exit code kExitError.
RunResult run(const RunConfig& config);

/// Default seed: NORMGEO_SEED if set (must parse as an unsigned integer), else 0.
std::uint64_t default_seed();

}  // namespace normgeo::cli
