#pragma once

// Entanglement polygon inequalities: for a partition P_1..P_k of the
// parties, E(P_j | rest)^alpha <= sum_{i != j} E(P_i | rest)^alpha.
// Residuals r_j = sum_{i != j} E_i^alpha - E_j^alpha; the inequality holds
// when every residual is >= -tol::kViolation.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "epi/measures.hpp"
#include "epi/tensor_core.hpp"

namespace epi {

/// alpha > 1 is outside every proven statement and must be opted into.
enum class AlphaRegime { Proven, AllowUnproven };

struct EpiReport {
  Partition partition;
  MeasureKind measure;
  double alpha;
  std::vector<double> values;
  std::vector<double> residuals;
  double min_residual;
  bool holds;
  bool unproven_regime;
};

/// Measure of block j against the rest, for every block, in partition order.
[[nodiscard]] std::vector<double> one_to_rest_values(const Ket& psi, const Partition& partition,
                                                     const MeasureKind& measure);

[[nodiscard]] std::vector<double> epi_residuals(std::span<const double> values, double alpha,
                                                AlphaRegime regime = AlphaRegime::Proven);

/// `tolerance` is the violation threshold: the report holds when min_residual >= -tolerance.
[[nodiscard]] EpiReport make_report(Partition partition, const MeasureKind& measure, std::vector<double> values,
                                    double alpha, AlphaRegime regime = AlphaRegime::Proven,
                                    double tolerance = tol::kViolation);

[[nodiscard]] EpiReport epi_check(const Ket& psi, const Partition& partition, const MeasureKind& measure,
                                  double alpha, AlphaRegime regime = AlphaRegime::Proven,
                                  double tolerance = tol::kViolation);

struct Indicator {
  double delta;
  std::vector<double> tau;
};

/// GEM residuals over the singleton partition; delta is their minimum.
/// alpha must lie in the open interval (0, 1).
[[nodiscard]] Indicator indicator_delta(const Ket& psi, double alpha);

/// Evaluates a^alpha + b^alpha >= c^alpha for a, b, c in (0, 1], alpha in
/// (0, 1] and a + b >= c (violating the precondition throws).
[[nodiscard]] bool power_inequality_holds(double a, double b, double c, double alpha);

// ---------------------------------------------------------------- audits

enum class Sampler {
  Haar,          // Haar-random kets on the profile
  Purification,  // product purifications; profile = [d_a, d_b] spectra sizes
  GW,            // random GW states; profile = n copies of d + 1
};

[[nodiscard]] Sampler parse_sampler(const std::string& name);
[[nodiscard]] std::string sampler_name(Sampler s);

struct AuditConfig {
  DimensionProfile profile;
  /// Defaults to the singleton partition of the sampled state.
  std::optional<Partition> partition;
  MeasureKind measure;
  double alpha = 1.0;
  int trials = 1000;
  std::uint64_t seed = 0;
  Sampler sampler = Sampler::Haar;
  AlphaRegime regime = AlphaRegime::Proven;
  double tolerance = tol::kViolation;
};

/// What is known for a (measure, sampler, alpha, partition) combination.
enum class Expectation { Holds, Violates, Unknown };

[[nodiscard]] Expectation proven_expectation(const AuditConfig& config);

/// Profile of the states the sampler produces (differs from config.profile
/// for the purification sampler).
[[nodiscard]] DimensionProfile sampled_profile(const AuditConfig& config);

[[nodiscard]] Ket sample_state(const AuditConfig& config, std::uint64_t trial_seed);

/// Report of trial `trial`, reproducible in isolation.
[[nodiscard]] EpiReport audit_trial(const AuditConfig& config, int trial);

struct AuditSummary {
  int trials = 0;
  int violations = 0;
  double worst_residual = 0.0;
  int worst_trial = -1;
  std::uint64_t worst_seed = 0;
  Expectation expectation = Expectation::Unknown;
};

[[nodiscard]] AuditSummary audit_random(const AuditConfig& config);

// ---------------------------------------------------------------- sweeps

struct SweepPoint {
  double alpha;
  double g;
};

/// Residual at `designated` for each alpha of the grid.
[[nodiscard]] std::vector<SweepPoint> alpha_sweep(std::span<const double> values, std::span<const double> grid,
                                                  int designated, AlphaRegime regime = AlphaRegime::Proven);

/// `steps` equally spaced points from min to max inclusive (just min when steps == 1).
[[nodiscard]] std::vector<double> alpha_grid(double min, double max, int steps,
                                             AlphaRegime regime = AlphaRegime::Proven);

}  // namespace epi
