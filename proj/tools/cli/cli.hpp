#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "conebranch/field.hpp"
#include "conebranch/numerics/quadrature.hpp"
#include "conebranch/spectral/profile.hpp"
#include "json.hpp"

namespace conebranch::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitTolerance = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kSchemaVersion = 1;

/// Malformed command line or configuration; exit code 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ProfileSpec {
  spectral::ProfileFamily family = spectral::ProfileFamily::log_bump;
  double r_min = 0.1;
  double r_max = 5.0;
  double amplitude = 1.0;
  double sharpness = 2.0;

  [[nodiscard]] spectral::RadialProfile make() const;
};

/// Settings shared by all subcommands. Unset optionals take per-command
/// defaults.
struct RunConfig {
  Field field = Field::real;
  int n = 2;
  ProfileSpec profile;
  double lambda_max = 200.0;
  double step = 0.05;
  std::optional<double> tol;
  std::optional<double> rel_tol;
  std::uint64_t seed = 20060101;
  std::int64_t samples = 1'000'000;
  std::string output = "-";
  std::optional<Complex> s;
  std::optional<Complex> lambda;
  std::vector<Complex> eta;
  std::optional<int> k;
  int radii = 121;
  int trials = 20;
  std::string method = "auto";
  std::string samples_out;
};

/// Parses "1.5", "-2i", "0.5+0.2i", "3-1e-3i".
Complex parse_complex(std::string_view text);

/// Comma-separated list of complex numbers.
std::vector<Complex> parse_complex_list(std::string_view text);

/// Applies a JSON configuration on top of `base`. Requires schema_version ==
/// kSchemaVersion; unknown keys and ill-typed values raise UsageError.
RunConfig apply_json(const nlohmann::json& doc, RunConfig base = {});

nlohmann::ordered_json to_json(const RunConfig& config);

/// Runs a subcommand; args excludes the program name. Results go to the
/// configured output (default `out`), diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace conebranch::cli
