#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "conebranch/numerics/quadrature.hpp"
#include "conebranch/spectral/profile.hpp"

namespace conebranch::report {

/// Which of the two forms of a constant the oracle accepts.
enum class Verdict { derived, both, printed, neither };

std::string_view to_string(Verdict verdict);

/// A printed constant next to the derived one, both scored against the same
/// numerical oracle. Residuals are relative to the oracle value (or to the
/// sup-norm of the profile for inversion rows).
struct ReconciliationRow {
  std::string name;
  std::string paper_value_expr;
  std::string derived_value_expr;
  double derived_value = 0.0;
  double paper_value = 0.0;
  double residual = 0.0;
  double paper_residual = 0.0;
  double tolerance = 0.0;
  Verdict verdict = Verdict::neither;
  /// The derived form meets the tolerance.
  bool pass = false;
};

struct ReportOptions {
  /// Radial profile used for the transform, inversion and Plancherel rows.
  spectral::RadialProfile profile = spectral::RadialProfile::log_bump(0.1, 5.0, 1.0, 2.0);
  double lambda_max = 200.0;
  double step = 0.05;
  std::uint64_t seed = 20060101;
};

/// One row per printed constant: sphere integrals, the Mellin-reduction
/// coefficients, inversion kernels, Plancherel densities (real and complex)
/// and the cocycle of the chart action.
std::vector<ReconciliationRow> reconcile_constants(const ReportOptions& options = {});

/// True when every derived constant meets its tolerance.
bool all_pass(const std::vector<ReconciliationRow>& rows);

}  // namespace conebranch::report
