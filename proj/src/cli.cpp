#include "epi/cli.hpp"

#include <algorithm>
#include <fstream>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "epi/gallery.hpp"
#include "epi/polygon.hpp"
#include "epi/state_io.hpp"

namespace epi::cli {

namespace {

using ojson = nlohmann::ordered_json;

constexpr int kJsonDigits = 17;
constexpr int kCsvDigits = 12;
constexpr std::string_view kPrintedValuesSource = "gallery:example1-paper-values";

enum class Format { Json, Csv };

struct Common {
  std::string format = "json";
  double tolerance = tol::kViolation;

  [[nodiscard]] Format fmt() const { return format == "csv" ? Format::Csv : Format::Json; }
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
  cmd->add_option("--tolerance", c.tolerance, "Violation tolerance: residuals below -tolerance are violations")
      ->check(CLI::NonNegativeNumber);
}

std::string csv(double v) { return format_number(v, kCsvDigits); }

void emit(std::ostream& out, const ojson& doc) {
  write_json(out, doc, kJsonDigits);
  out << '\n';
}

Partition partition_or_singletons(const std::string& text, int parties) {
  return text.empty() ? Partition::singletons(parties) : parse_partition(text, parties);
}

// ---------------------------------------------------------------- measure

struct MeasureArgs {
  Common common;
  std::string source;
  std::string partition;
  std::string measure;
  double q = 2.0;
};

int cmd_measure(const MeasureArgs& a, std::ostream& out, std::ostream& err) {
  const Ket psi = resolve_source(a.source, err);
  const Partition partition = partition_or_singletons(a.partition, psi.profile().parties());
  const MeasureKind kind = MeasureKind::parse(a.measure, a.q);
  const auto values = one_to_rest_values(psi, partition, kind);

  if (a.common.fmt() == Format::Csv) {
    out << "block,value\n";
    for (std::size_t j = 0; j < values.size(); ++j) out << j + 1 << ',' << csv(values[j]) << '\n';
    return kExitOk;
  }
  ojson doc;
  doc["command"] = "measure";
  doc["source"] = a.source;
  doc["dims"] = psi.profile().dims();
  doc["partition"] = format_partition(partition);
  doc["measure"] = kind.name();
  doc["values"] = values;
  emit(out, doc);
  return kExitOk;
}

// ---------------------------------------------------------------- epi-check

struct EpiArgs {
  Common common;
  std::string source;
  std::string partition;
  std::string measure;
  double q = 2.0;
  double alpha = 1.0;
  bool allow_unproven = false;
};

AlphaRegime regime_of(bool allow) { return allow ? AlphaRegime::AllowUnproven : AlphaRegime::Proven; }

int cmd_epi_check(const EpiArgs& a, std::ostream& out, std::ostream& err) {
  const Ket psi = resolve_source(a.source, err);
  const Partition partition = partition_or_singletons(a.partition, psi.profile().parties());
  const MeasureKind kind = MeasureKind::parse(a.measure, a.q);
  const auto report = epi_check(psi, partition, kind, a.alpha, regime_of(a.allow_unproven), a.common.tolerance);
  if (report.unproven_regime) err << "note: alpha > 1 is an unproven regime\n";

  if (a.common.fmt() == Format::Csv) {
    out << "block,value,residual\n";
    for (std::size_t j = 0; j < report.values.size(); ++j) {
      out << j + 1 << ',' << csv(report.values[j]) << ',' << csv(report.residuals[j]) << '\n';
    }
  } else {
    ojson doc;
    doc["command"] = "epi-check";
    doc["source"] = a.source;
    doc["partition"] = format_partition(report.partition);
    doc["measure"] = kind.name();
    doc["alpha"] = report.alpha;
    doc["values"] = report.values;
    doc["residuals"] = report.residuals;
    doc["min_residual"] = report.min_residual;
    doc["tolerance"] = a.common.tolerance;
    doc["holds"] = report.holds;
    doc["unproven_regime"] = report.unproven_regime;
    emit(out, doc);
  }
  return report.holds ? kExitOk : kExitVerdict;
}

// ---------------------------------------------------------------- sweep

struct SweepArgs {
  Common common;
  std::string source;
  std::string values;
  std::string partition;
  std::string measure = "gem";
  double q = 2.0;
  int block = 0;  // 1-based; 0 selects the largest value
  double alpha_min = 0.01;
  double alpha_max = 1.0;
  int steps = 100;
  bool allow_unproven = false;
};

int cmd_sweep(const SweepArgs& a, std::ostream& out, std::ostream& err) {
  std::vector<double> values;
  std::string label;
  if (!a.values.empty()) {
    if (!a.source.empty()) throw InputError("sweep: give either a state source or --values, not both");
    values = parse_real_list(a.values);
    label = "values";
  } else if (a.source == kPrintedValuesSource) {
    values.assign(kExample1PrintedValues.begin(), kExample1PrintedValues.end());
    label = "example1-paper-values";
  } else if (!a.source.empty()) {
    const Ket psi = resolve_source(a.source, err);
    const Partition partition = partition_or_singletons(a.partition, psi.profile().parties());
    values = one_to_rest_values(psi, partition, MeasureKind::parse(a.measure, a.q));
    label = MeasureKind::parse(a.measure, a.q).name();
  } else {
    throw InputError("sweep: a state source or --values is required");
  }

  int designated = a.block - 1;
  if (a.block == 0) {
    designated = static_cast<int>(std::max_element(values.begin(), values.end()) - values.begin());
  }
  const auto regime = regime_of(a.allow_unproven);
  const auto grid = alpha_grid(a.alpha_min, a.alpha_max, a.steps, regime);
  const auto points = alpha_sweep(values, grid, designated, regime);

  if (a.common.fmt() == Format::Csv) {
    out << "alpha,g\n";
    for (const auto& p : points) out << csv(p.alpha) << ',' << csv(p.g) << '\n';
    return kExitOk;
  }
  double min_g = points.front().g;
  ojson pts = ojson::array();
  for (const auto& p : points) {
    pts.push_back({{"alpha", p.alpha}, {"g", p.g}});
    min_g = std::min(min_g, p.g);
  }
  ojson doc;
  doc["command"] = "sweep";
  doc["source"] = a.source.empty() ? std::string("--values") : a.source;
  doc["measure"] = label;
  doc["values"] = values;
  doc["designated_block"] = designated + 1;
  doc["min_g"] = min_g;
  doc["points"] = std::move(pts);
  emit(out, doc);
  return kExitOk;
}

// ---------------------------------------------------------------- audit

struct AuditArgs {
  Common common;
  std::string dims;
  std::string partition;
  std::string measure;
  double q = 2.0;
  std::string sampler = "haar";
  int trials = 1000;
  std::uint64_t seed = 0;
  double alpha = 1.0;
  bool expect_violation = false;
  bool allow_unproven = false;
};

std::string expectation_name(Expectation e) {
  switch (e) {
    case Expectation::Holds: return "holds";
    case Expectation::Violates: return "violates";
    case Expectation::Unknown: return "unknown";
  }
  return "unknown";
}

int cmd_audit(const AuditArgs& a, std::ostream& out, std::ostream&) {
  AuditConfig config{DimensionProfile(parse_int_list(a.dims)), std::nullopt, MeasureKind::parse(a.measure, a.q)};
  config.alpha = a.alpha;
  config.trials = a.trials;
  config.seed = a.seed;
  config.sampler = parse_sampler(a.sampler);
  config.regime = regime_of(a.allow_unproven);
  config.tolerance = a.common.tolerance;
  if (!a.partition.empty()) config.partition = parse_partition(a.partition, sampled_profile(config).parties());

  auto summary = audit_random(config);
  if (a.expect_violation) summary.expectation = Expectation::Violates;

  bool contrary = false;
  if (summary.expectation == Expectation::Holds) contrary = summary.violations > 0;
  if (summary.expectation == Expectation::Violates) contrary = summary.violations < summary.trials;

  if (a.common.fmt() == Format::Csv) {
    out << "key,value\n";
    out << "trials," << summary.trials << '\n';
    out << "violations," << summary.violations << '\n';
    out << "worst_residual," << csv(summary.worst_residual) << '\n';
    out << "worst_trial," << summary.worst_trial << '\n';
    out << "worst_seed," << summary.worst_seed << '\n';
    out << "expectation," << expectation_name(summary.expectation) << '\n';
  } else {
    ojson doc;
    doc["command"] = "audit";
    doc["dims"] = config.profile.dims();
    doc["state_dims"] = sampled_profile(config).dims();
    doc["sampler"] = sampler_name(config.sampler);
    doc["measure"] = config.measure.name();
    doc["alpha"] = config.alpha;
    doc["partition"] = config.partition ? format_partition(*config.partition) : std::string("singletons");
    doc["seed"] = config.seed;
    doc["trials"] = summary.trials;
    doc["violations"] = summary.violations;
    doc["worst_residual"] = summary.worst_residual;
    doc["worst_trial"] = summary.worst_trial;
    doc["worst_seed"] = summary.worst_seed;
    doc["expectation"] = expectation_name(summary.expectation);
    doc["unproven_regime"] = config.alpha > 1.0;
    doc["contrary_to_expectation"] = contrary;
    emit(out, doc);
  }
  return contrary ? kExitVerdict : kExitOk;
}

// ---------------------------------------------------------------- indicator

struct IndicatorArgs {
  Common common;
  std::string source;
  double alpha = 0.5;
};

int cmd_indicator(const IndicatorArgs& a, std::ostream& out, std::ostream& err) {
  const Ket psi = resolve_source(a.source, err);
  const auto ind = indicator_delta(psi, a.alpha);
  if (a.common.fmt() == Format::Csv) {
    out << "party,tau\n";
    for (std::size_t i = 0; i < ind.tau.size(); ++i) out << i + 1 << ',' << csv(ind.tau[i]) << '\n';
    out << "delta," << csv(ind.delta) << '\n';
    return kExitOk;
  }
  ojson doc;
  doc["command"] = "indicator";
  doc["source"] = a.source;
  doc["alpha"] = a.alpha;
  doc["tau"] = ind.tau;
  doc["delta"] = ind.delta;
  emit(out, doc);
  return kExitOk;
}

// ---------------------------------------------------------------- state / gallery

int cmd_state(const std::string& source, const std::string& path, std::ostream& out, std::ostream& err) {
  const Ket psi = resolve_source(source, err);
  if (path.empty()) {
    emit(out, ojson(state_to_json(psi)));
  } else {
    write_state_file(psi, path);
  }
  return kExitOk;
}

int cmd_gallery(std::ostream& out) {
  for (const auto& name : named_state_list()) out << kGalleryPrefix << name << '\n';
  out << kPrintedValuesSource << "  (sweep only)\n";
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Entanglement measures and polygon inequalities for multi-qudit pure states", "epi"};
  app.require_subcommand(1);

  MeasureArgs measure;
  auto* c_measure = app.add_subcommand("measure", "One-to-rest measure values for each block of a partition");
  c_measure->add_option("source", measure.source, "gallery:<name> or a state file")->required();
  c_measure->add_option("--partition", measure.partition, "Blocks like 1|2,3|4 (default: singletons)");
  c_measure->add_option("--measure", measure.measure, "gem | negativity | concurrence | qconcurrence")->required();
  c_measure->add_option("--q", measure.q, "q for qconcurrence");
  add_common(c_measure, measure.common);

  EpiArgs epi;
  auto* c_epi = app.add_subcommand("epi-check", "Check the polygon inequality; exit 1 when violated");
  c_epi->add_option("source", epi.source, "gallery:<name> or a state file")->required();
  c_epi->add_option("--partition", epi.partition, "Blocks like 1|2,3|4 (default: singletons)");
  c_epi->add_option("--measure", epi.measure, "gem | negativity | concurrence | qconcurrence")->required();
  c_epi->add_option("--q", epi.q, "q for qconcurrence");
  c_epi->add_option("--alpha", epi.alpha, "Exponent in (0, 1]");
  c_epi->add_flag("--allow-unproven-alpha", epi.allow_unproven, "Permit alpha > 1");
  add_common(c_epi, epi.common);

  SweepArgs sweep;
  auto* c_sweep = app.add_subcommand("sweep", "Residual of one block as a function of alpha");
  c_sweep->add_option("source", sweep.source, "gallery:<name>, gallery:example1-paper-values or a state file");
  c_sweep->add_option("--values", sweep.values, "Explicit comma separated values instead of a state");
  c_sweep->add_option("--partition", sweep.partition, "Blocks like 1|2,3|4 (default: singletons)");
  c_sweep->add_option("--measure", sweep.measure, "Measure used with a state source");
  c_sweep->add_option("--q", sweep.q, "q for qconcurrence");
  c_sweep->add_option("--block", sweep.block, "Designated block (1-based; default: largest value)");
  c_sweep->add_option("--alpha-min", sweep.alpha_min, "Smallest alpha");
  c_sweep->add_option("--alpha-max", sweep.alpha_max, "Largest alpha");
  c_sweep->add_option("--steps", sweep.steps, "Number of grid points");
  c_sweep->add_flag("--allow-unproven-alpha", sweep.allow_unproven, "Permit alpha > 1");
  add_common(c_sweep, sweep.common);

  AuditArgs audit;
  auto* c_audit = app.add_subcommand("audit", "Randomized check of the polygon inequality");
  c_audit->add_option("--dims", audit.dims, "Profile, e.g. 2,2,2 (purification: spectrum sizes 3,3)")->required();
  c_audit->add_option("--partition", audit.partition, "Blocks of the sampled state (default: singletons)");
  c_audit->add_option("--measure", audit.measure, "gem | negativity | concurrence | qconcurrence")->required();
  c_audit->add_option("--q", audit.q, "q for qconcurrence");
  c_audit->add_option("--sampler", audit.sampler, "haar | purification | gw")
      ->check(CLI::IsMember({"haar", "purification", "gw"}));
  c_audit->add_option("--trials", audit.trials, "Number of random states");
  c_audit->add_option("--seed", audit.seed, "Master seed");
  c_audit->add_option("--alpha", audit.alpha, "Exponent in (0, 1]");
  c_audit->add_flag("--expect-violation", audit.expect_violation, "Succeed only if every trial violates");
  c_audit->add_flag("--allow-unproven-alpha", audit.allow_unproven, "Permit alpha > 1");
  add_common(c_audit, audit.common);

  IndicatorArgs indicator;
  auto* c_ind = app.add_subcommand("indicator", "GEM residual indicator delta and per-party tau");
  c_ind->add_option("source", indicator.source, "gallery:<name> or a state file")->required();
  c_ind->add_option("--alpha", indicator.alpha, "Exponent in (0, 1)");
  add_common(c_ind, indicator.common);

  std::string state_source;
  std::string state_out;
  auto* c_state = app.add_subcommand("state", "Write a state as a state file");
  c_state->add_option("source", state_source, "gallery:<name> or a state file")->required();
  c_state->add_option("--out", state_out, "Output path (default: stdout)");

  auto* c_gallery = app.add_subcommand("gallery", "List gallery states");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInputError;
  }

  try {
    if (c_measure->parsed()) return cmd_measure(measure, out, err);
    if (c_epi->parsed()) return cmd_epi_check(epi, out, err);
    if (c_sweep->parsed()) return cmd_sweep(sweep, out, err);
    if (c_audit->parsed()) return cmd_audit(audit, out, err);
    if (c_ind->parsed()) return cmd_indicator(indicator, out, err);
    if (c_state->parsed()) return cmd_state(state_source, state_out, out, err);
    if (c_gallery->parsed()) return cmd_gallery(out);
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  } catch (const InvariantViolation& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
  return kExitInputError;
}

}  // namespace epi::cli
