#include "cli/cli.hpp"

#include <algorithm>
#include <fstream>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "cli/commands.hpp"
#include "conebranch/error.hpp"

namespace conebranch::cli {

namespace {

struct Flags {
  std::string config;
  std::string field;
  int n = 0;
  std::string family;
  double r_min = 0.0;
  double r_max = 0.0;
  double amplitude = 0.0;
  double sharpness = 0.0;
  double lambda_max = 0.0;
  double step = 0.0;
  double tol = 0.0;
  double rel_tol = 0.0;
  std::uint64_t seed = 0;
  std::int64_t samples = 0;
  std::string output;
  std::string s;
  std::string lambda;
  std::string eta;
  int k = 0;
  int radii = 0;
  int trials = 0;
  std::string method;
  std::string samples_out;
};

RunConfig load_config(const std::string& path) {
  std::ifstream file(path);
  if (!file) {
    throw UsageError("cannot read config file '" + path + "'");
  }
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(file);
  } catch (const nlohmann::json::parse_error& e) {
    throw UsageError("config file '" + path + "' is not valid JSON: " + e.what());
  }
  return apply_json(doc);
}

bool given(const CLI::App& app, const std::string& name) { return app.count(name) > 0; }

RunConfig resolve(const CLI::App& app, const Flags& f) {
  RunConfig c = f.config.empty() ? RunConfig{} : load_config(f.config);
  try {
    if (given(app, "--case")) c.field = parse_field(f.field);
    if (given(app, "--family")) c.profile.family = spectral::parse_profile_family(f.family);
  } catch (const InvalidArgument& e) {
    throw UsageError(e.what());
  }
  if (given(app, "--n")) c.n = f.n;
  if (given(app, "--r-min")) c.profile.r_min = f.r_min;
  if (given(app, "--r-max")) c.profile.r_max = f.r_max;
  if (given(app, "--amplitude")) c.profile.amplitude = f.amplitude;
  if (given(app, "--sharpness")) c.profile.sharpness = f.sharpness;
  if (given(app, "--lmax")) c.lambda_max = f.lambda_max;
  if (given(app, "--step")) c.step = f.step;
  if (given(app, "--tol")) c.tol = f.tol;
  if (given(app, "--rel-tol")) c.rel_tol = f.rel_tol;
  if (given(app, "--seed")) c.seed = f.seed;
  if (given(app, "--samples")) c.samples = f.samples;
  if (given(app, "--output")) c.output = f.output;
  if (given(app, "--s")) c.s = parse_complex(f.s);
  if (given(app, "--lambda")) c.lambda = parse_complex(f.lambda);
  if (given(app, "--eta")) c.eta = parse_complex_list(f.eta);
  if (given(app, "--k")) c.k = f.k;
  if (given(app, "--radii")) c.radii = f.radii;
  if (given(app, "--trials")) c.trials = f.trials;
  if (given(app, "--method")) c.method = f.method;
  if (given(app, "--samples-out")) c.samples_out = f.samples_out;
  if (c.tol && !(*c.tol > 0.0)) throw UsageError("--tol must be positive");
  return c;
}

// Numerical breakdowns are tolerance failures; every other library error is
// a domain error in the request.
bool numerical_failure(const Error& e) {
  return dynamic_cast<const MaxSubdivisionsExceeded*>(&e) != nullptr ||
         dynamic_cast<const OverflowError*>(&e) != nullptr ||
         dynamic_cast<const NonIntegrableSingularity*>(&e) != nullptr;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Spectral transforms on the rank-one boundary orbit of the real and complex cones", "conebranch"};
  app.require_subcommand(1, 1);
  app.fallthrough();
  Flags f;
  app.add_option("--config", f.config, "JSON configuration (schema_version 1); flags override it");
  app.add_option("--case", f.field, "real or complex");
  app.add_option("--n", f.n, "Dimension n");
  app.add_option("--family", f.family, "Profile family: log_bump, bump or plateau");
  app.add_option("--r-min", f.r_min, "Inner radius of the profile support");
  app.add_option("--r-max", f.r_max, "Outer radius of the profile support");
  app.add_option("--amplitude", f.amplitude, "Profile amplitude");
  app.add_option("--sharpness", f.sharpness, "Bump constant k in exp(-k/(1-u^2))");
  app.add_option("--lmax", f.lambda_max, "Spectral window [-lmax, lmax]");
  app.add_option("--step", f.step, "Spectral grid step");
  app.add_option("--tol", f.tol, "Pass/fail tolerance of the command");
  app.add_option("--rel-tol", f.rel_tol, "Relative tolerance of the quadratures");
  app.add_option("--seed", f.seed, "Random seed");
  app.add_option("--samples", f.samples, "Monte Carlo sample count");
  app.add_option("-o,--output", f.output, "Output file, - for standard output");
  app.add_option("--s", f.s, "Exponent s, e.g. 0.5 or 0.5+0.2i");
  app.add_option("--lambda", f.lambda, "Spectral parameter, e.g. 1 or 0.3-0.5i");
  app.add_option("--eta", f.eta, "Chart point, comma separated (n - 1 entries)");
  app.add_option("--k", f.k, "Continuation order");
  app.add_option("--radii", f.radii, "Number of radii for inversion");
  app.add_option("--trials", f.trials, "Number of random group elements");
  app.add_option("--method", f.method, "transform: auto, direct, continued or reduction");
  app.add_option("--samples-out", f.samples_out, "Write the spectral samples CSV to this file");
  for (const auto& [name, help] : command_list()) {
    app.add_subcommand(name, help);
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << "Run with --help for usage.\n";
    return kExitUsage;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    const RunConfig config = resolve(app, f);
    if (config.output == "-") {
      return run_command(command, config, out, err);
    }
    // Buffer so that a failed command leaves no partial file behind.
    std::ostringstream buffer;
    const int code = run_command(command, config, buffer, err);
    std::ofstream file(config.output, std::ios::binary);
    if (!file) {
      throw UsageError("cannot open '" + config.output + "' for writing");
    }
    file << buffer.str();
    return code;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n" << "Run with --help for usage.\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return numerical_failure(e) ? kExitTolerance : kExitUsage;
  }
}

}  // namespace conebranch::cli
