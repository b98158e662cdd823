#include "epi/polygon.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "epi/gallery.hpp"

namespace epi {

namespace {

void check_alpha(double alpha, AlphaRegime regime) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw InputError("alpha must be positive");
  if (alpha > 1.0 && regime != AlphaRegime::AllowUnproven) {
    throw InputError("alpha > 1 is outside the proven range (0, 1]; pass the unproven-regime flag to allow it");
  }
}

double power(double v, double alpha) { return v == 0.0 ? 0.0 : std::pow(v, alpha); }

}  // namespace

std::vector<double> one_to_rest_values(const Ket& psi, const Partition& partition, const MeasureKind& measure) {
  if (partition.parties() != psi.profile().parties()) {
    throw InputError("partition covers " + std::to_string(partition.parties()) + " parties but the state has " +
                     std::to_string(psi.profile().parties()));
  }
  if (partition.size() < 2) throw InputError("one_to_rest_values: partition needs at least 2 blocks");
  std::vector<double> values;
  values.reserve(static_cast<std::size_t>(partition.size()));
  for (const auto& block : partition.blocks()) values.push_back(evaluate(psi, block, measure));
  return values;
}

std::vector<double> epi_residuals(std::span<const double> values, double alpha, AlphaRegime regime) {
  check_alpha(alpha, regime);
  std::vector<double> powered;
  powered.reserve(values.size());
  for (double v : values) {
    if (!(v >= 0.0)) throw InputError("epi_residuals: values must be non-negative");
    powered.push_back(power(v, alpha));
  }
  std::vector<double> residuals;
  residuals.reserve(values.size());
  // Sum the others directly rather than total - 2 p_j to avoid cancellation.
  for (std::size_t j = 0; j < powered.size(); ++j) {
    double others = 0.0;
    for (std::size_t k = 0; k < powered.size(); ++k) {
      if (k != j) others += powered[k];
    }
    residuals.push_back(others - powered[j]);
  }
  return residuals;
}

EpiReport make_report(Partition partition, const MeasureKind& measure, std::vector<double> values, double alpha,
                      AlphaRegime regime, double tolerance) {
  if (!(tolerance >= 0.0)) throw InputError("violation tolerance must be non-negative");
  if (static_cast<int>(values.size()) != partition.size()) {
    throw InputError("report: " + std::to_string(values.size()) + " values for " +
                     std::to_string(partition.size()) + " blocks");
  }
  auto residuals = epi_residuals(values, alpha, regime);
  const double min_residual =
      residuals.empty() ? 0.0 : *std::min_element(residuals.begin(), residuals.end());
  return EpiReport{std::move(partition), measure,        alpha,       std::move(values), std::move(residuals),
                   min_residual,         min_residual >= -tolerance, alpha > 1.0};
}

EpiReport epi_check(const Ket& psi, const Partition& partition, const MeasureKind& measure, double alpha,
                    AlphaRegime regime, double tolerance) {
  check_alpha(alpha, regime);
  return make_report(partition, measure, one_to_rest_values(psi, partition, measure), alpha, regime, tolerance);
}

Indicator indicator_delta(const Ket& psi, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw InputError("indicator_delta: alpha must lie in (0, 1)");
  const int n = psi.profile().parties();
  if (n < 2) throw InputError("indicator_delta: at least two parties required");
  const auto values = one_to_rest_values(psi, Partition::singletons(n), MeasureKind::gem());
  Indicator out{0.0, epi_residuals(values, alpha)};
  out.delta = *std::min_element(out.tau.begin(), out.tau.end());
  return out;
}

bool power_inequality_holds(double a, double b, double c, double alpha) {
  auto in_unit = [](double x) { return x > 0.0 && x <= 1.0; };
  if (!in_unit(a) || !in_unit(b) || !in_unit(c)) throw InputError("power_inequality_holds: a, b, c must lie in (0, 1]");
  if (!in_unit(alpha)) throw InputError("power_inequality_holds: alpha must lie in (0, 1]");
  if (a + b < c) throw InputError("power_inequality_holds: requires a + b >= c");
  const double lhs = std::pow(a, alpha) + std::pow(b, alpha);
  const double rhs = std::pow(c, alpha);
  // A few ulps of slack for pow rounding at the equality boundary.
  return lhs >= rhs * (1.0 - 4.0 * std::numeric_limits<double>::epsilon());
}

// ---------------------------------------------------------------- audits

Sampler parse_sampler(const std::string& name) {
  if (name == "haar") return Sampler::Haar;
  if (name == "purification") return Sampler::Purification;
  if (name == "gw") return Sampler::GW;
  throw InputError("unknown sampler '" + name + "'");
}

std::string sampler_name(Sampler s) {
  switch (s) {
    case Sampler::Haar: return "haar";
    case Sampler::Purification: return "purification";
    case Sampler::GW: return "gw";
  }
  return "unknown";
}

DimensionProfile sampled_profile(const AuditConfig& config) {
  const auto& dims = config.profile.dims();
  switch (config.sampler) {
    case Sampler::Haar:
      return config.profile;
    case Sampler::Purification:
      if (dims.size() != 2) throw InputError("purification sampler expects two spectrum sizes, e.g. dims 3,3");
      return DimensionProfile({dims[0], dims[1], dims[0] * dims[1]});
    case Sampler::GW:
      if (std::adjacent_find(dims.begin(), dims.end(), std::not_equal_to<>()) != dims.end()) {
        throw InputError("gw sampler expects equal local dimensions d + 1");
      }
      return config.profile;
  }
  return config.profile;
}

Ket sample_state(const AuditConfig& config, std::uint64_t trial_seed) {
  const auto& dims = config.profile.dims();
  switch (config.sampler) {
    case Sampler::Haar:
      return haar_random_ket(config.profile, trial_seed);
    case Sampler::Purification:
      (void)sampled_profile(config);
      return product_purification(ProductPurificationSpec::random(dims[0], dims[1], trial_seed));
    case Sampler::GW:
      (void)sampled_profile(config);
      return gw_state(GWSpec::random(config.profile.parties(), dims[0] - 1, trial_seed));
  }
  throw InputError("unknown sampler");
}

namespace {

Partition audit_partition(const AuditConfig& config) {
  const int parties = sampled_profile(config).parties();
  if (!config.partition) return Partition::singletons(parties);
  if (config.partition->parties() != parties) throw InputError("audit partition does not match the sampled state");
  return *config.partition;
}

}  // namespace

Expectation proven_expectation(const AuditConfig& config) {
  if (config.alpha > 1.0) return Expectation::Unknown;
  switch (config.measure.tag()) {
    case MeasureKind::Tag::Gem:
    case MeasureKind::Tag::Concurrence:
      return Expectation::Holds;
    case MeasureKind::Tag::QConcurrence:
      return config.measure.q() >= 2.0 ? Expectation::Holds : Expectation::Unknown;
    case MeasureKind::Tag::Negativity:
      if (config.sampler == Sampler::GW) return Expectation::Holds;
      if (config.sampler == Sampler::Purification && config.alpha == 1.0 &&
          audit_partition(config) == Partition::singletons(3)) {
        return Expectation::Violates;
      }
      return Expectation::Unknown;
  }
  return Expectation::Unknown;
}

EpiReport audit_trial(const AuditConfig& config, int trial) {
  const auto seed = derive_seed(config.seed, static_cast<std::uint64_t>(trial));
  const Ket psi = sample_state(config, seed);
  return epi_check(psi, audit_partition(config), config.measure, config.alpha, config.regime, config.tolerance);
}

AuditSummary audit_random(const AuditConfig& config) {
  if (config.trials < 1) throw InputError("audit: trials must be >= 1");
  if (!(config.alpha > 0.0) || (config.alpha > 1.0 && config.regime != AlphaRegime::AllowUnproven)) {
    throw InputError("audit: alpha must lie in (0, 1]");
  }
  const Partition partition = audit_partition(config);
  AuditSummary summary;
  summary.trials = config.trials;
  summary.worst_residual = std::numeric_limits<double>::infinity();
  summary.expectation = proven_expectation(config);
  for (int t = 0; t < config.trials; ++t) {
    const auto seed = derive_seed(config.seed, static_cast<std::uint64_t>(t));
    const Ket psi = sample_state(config, seed);
    const auto report = epi_check(psi, partition, config.measure, config.alpha, config.regime, config.tolerance);
    if (!report.holds) ++summary.violations;
    if (report.min_residual < summary.worst_residual) {
      summary.worst_residual = report.min_residual;
      summary.worst_trial = t;
      summary.worst_seed = seed;
    }
  }
  return summary;
}

// ---------------------------------------------------------------- sweeps

std::vector<SweepPoint> alpha_sweep(std::span<const double> values, std::span<const double> grid, int designated,
                                    AlphaRegime regime) {
  if (grid.empty()) throw InputError("alpha_sweep: empty alpha grid");
  if (designated < 0 || designated >= static_cast<int>(values.size())) {
    throw InputError("alpha_sweep: designated block out of range");
  }
  std::vector<SweepPoint> points;
  points.reserve(grid.size());
  for (double alpha : grid) {
    const auto r = epi_residuals(values, alpha, regime);
    points.push_back({alpha, r[static_cast<std::size_t>(designated)]});
  }
  return points;
}

std::vector<double> alpha_grid(double min, double max, int steps, AlphaRegime regime) {
  if (steps < 1) throw InputError("alpha grid: steps must be >= 1");
  if (!(min > 0.0) || !(max >= min)) throw InputError("alpha grid: need 0 < min <= max");
  if (max > 1.0 && regime != AlphaRegime::AllowUnproven) {
    throw InputError("alpha grid: max > 1 requires the unproven-regime flag");
  }
  if (steps == 1) return {min};
  std::vector<double> grid;
  grid.reserve(static_cast<std::size_t>(steps));
  for (int i = 0; i < steps; ++i) {
    // Endpoints exact; interior points by affine interpolation.
    grid.push_back(i == steps - 1 ? max : min + (max - min) * i / (steps - 1));
  }
  return grid;
}

}  // namespace epi
