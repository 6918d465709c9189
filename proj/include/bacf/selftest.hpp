#pragma once
// Oracle equivalence checks runnable from the shipped binary.

#include <cstdint>
#include <string>
#include <vector>

namespace bacf::selftest {

struct SelftestOptions {
  std::uint64_t seed = 1;
  /// Multiplies T inside the Sherman-Morrison solver only; anything other
  /// than 1 should make the corresponding check fail.
  double sm_t_scale = 1.0;
  /// Checks whose dense or naive reference exceeds these sizes (window
  /// samples T, channels K) are skipped rather than run.
  int max_samples = 256;
  int max_channels = 31;
};

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
  bool skipped = false;
};

/// Penalty schedule for the ADMM-vs-oracle check. The tracking defaults
/// (mu0 1, beta 10, mu_max 1000) stop after two iterations in practice and
/// do not drive a unit-scale problem to the optimum within 50.
inline constexpr double kOracleMu0 = 0.3;
inline constexpr double kOracleBeta = 1.02;
inline constexpr double kOracleMuMax = 1.0;
inline constexpr int kOracleIters = 50;
inline constexpr double kOracleLabelDivisor = 4.0;

CheckResult check_dft_roundtrip(const SelftestOptions& opt);
CheckResult check_crop_adjoint(const SelftestOptions& opt);
CheckResult check_shift_theorem(const SelftestOptions& opt);
CheckResult check_correlate(const SelftestOptions& opt);
CheckResult check_sherman_morrison(const SelftestOptions& opt);
CheckResult check_per_bin(const SelftestOptions& opt);
CheckResult check_admm_oracle(const SelftestOptions& opt);
CheckResult check_metrics(const SelftestOptions& opt);

std::vector<CheckResult> run_all(const SelftestOptions& opt);

}  // namespace bacf::selftest
