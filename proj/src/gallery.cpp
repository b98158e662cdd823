#include "epi/gallery.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>
#include <regex>

namespace epi {

// ---------------------------------------------------------------- Acin form

void AcinParams::validate() const {
  double sum = 0.0;
  for (double li : l) {
    if (!(li >= 0.0)) throw InputError("AcinParams: coefficients must be non-negative");
    sum += li * li;
  }
  if (std::abs(sum - 1.0) > tol::kNorm) throw InputError("AcinParams: sum of l_i^2 must be 1");
  if (!(theta >= 0.0 && theta < std::numbers::pi)) throw InputError("AcinParams: theta must lie in [0, pi)");
}

AcinParams AcinParams::random(std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> angle(0.0, std::numbers::pi);
  AcinParams p;
  double sum = 0.0;
  for (double& li : p.l) {
    li = std::abs(normal(gen));
    sum += li * li;
  }
  for (double& li : p.l) li /= std::sqrt(sum);
  p.theta = angle(gen);
  return p;
}

Ket acin_state(const AcinParams& params) {
  params.validate();
  const auto& l = params.l;
  CVector amps = CVector::Zero(8);
  amps(0b000) = l[0];
  amps(0b100) = l[1] * std::polar(1.0, params.theta);
  amps(0b101) = l[2];
  amps(0b110) = l[3];
  amps(0b111) = l[4];
  return Ket::normalized(DimensionProfile({2, 2, 2}), std::move(amps));
}

namespace {

double cross_term(const AcinParams& p) {
  const auto& l = p.l;
  return l[1] * l[1] * l[4] * l[4] + l[2] * l[2] * l[3] * l[3] - 2.0 * l[1] * l[2] * l[3] * l[4] * std::cos(p.theta);
}

std::array<double, 2> qubit_pair_from_delta(double delta) {
  double disc = 1.0 - 4.0 * delta;
  if (disc < -1e-10) throw InvariantViolation("Acin spectrum: 1 - 4*Delta is negative");
  disc = std::sqrt(std::max(0.0, disc));
  return {(1.0 + disc) / 2.0, (1.0 - disc) / 2.0};
}

}  // namespace

double acin_delta_a(const AcinParams& params) {
  const auto& l = params.l;
  return l[0] * l[0] * (l[2] * l[2] + l[3] * l[3] + l[4] * l[4]);
}

double acin_delta0(const AcinParams& params) {
  const auto& l = params.l;
  return l[0] * l[0] * (l[3] * l[3] + l[4] * l[4]) + cross_term(params);
}

double acin_delta1(const AcinParams& params) {
  const auto& l = params.l;
  return l[0] * l[0] * (l[2] * l[2] + l[4] * l[4]) + cross_term(params);
}

AcinSpectra acin_schmidt_spectra(const AcinParams& params) {
  params.validate();
  AcinSpectra s{};
  s.a_cut = qubit_pair_from_delta(acin_delta_a(params));
  s.b_cut = qubit_pair_from_delta(acin_delta0(params));
  s.c_cut = qubit_pair_from_delta(acin_delta1(params));
  return s;
}

std::set<Cut> acin_is_biseparable(const AcinParams& params, double tol) {
  params.validate();
  std::set<Cut> cuts;
  if (acin_delta_a(params) <= tol) cuts.insert(Cut::A);
  if (acin_delta0(params) <= tol) cuts.insert(Cut::B);
  if (acin_delta1(params) <= tol) cuts.insert(Cut::C);
  return cuts;
}

// ---------------------------------------------------------------- GW states

void GWSpec::validate() const {
  if (parties < 1 || levels < 1) throw InputError("GWSpec: need at least one party and one level");
  if (coeffs.rows() != parties || coeffs.cols() != levels) throw InputError("GWSpec: coefficient shape mismatch");
  if (std::abs(coeffs.squaredNorm() - 1.0) > tol::kNorm) throw InputError("GWSpec: coefficients not normalized");
}

double GWSpec::weight(int party) const { return coeffs.row(party).squaredNorm(); }

GWSpec GWSpec::random(int parties, int levels, std::uint64_t seed) {
  if (parties < 1 || levels < 1) throw InputError("GWSpec::random: need at least one party and one level");
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  GWSpec spec{parties, levels, CMatrix(parties, levels)};
  for (int j = 0; j < parties; ++j) {
    for (int i = 0; i < levels; ++i) {
      const double re = normal(gen);
      const double im = normal(gen);
      spec.coeffs(j, i) = Complex(re, im);
    }
  }
  spec.coeffs /= spec.coeffs.norm();
  return spec;
}

Ket gw_state(const GWSpec& spec) {
  spec.validate();
  const DimensionProfile profile(std::vector<int>(static_cast<std::size_t>(spec.parties), spec.levels + 1));
  CVector amps = CVector::Zero(profile.total());
  std::vector<int> label(static_cast<std::size_t>(spec.parties), 0);
  for (int j = 0; j < spec.parties; ++j) {
    for (int i = 1; i <= spec.levels; ++i) {
      label[static_cast<std::size_t>(j)] = i;
      amps(flat_index(label, profile)) = spec.coeffs(j, i - 1);
    }
    label[static_cast<std::size_t>(j)] = 0;
  }
  return Ket::normalized(profile, std::move(amps));
}

GWSpec gw_coarse_grain(const GWSpec& spec, const Partition& partition) {
  spec.validate();
  if (partition.parties() != spec.parties) throw InputError("gw_coarse_grain: partition does not match party count");
  int levels = 0;
  for (const auto& b : partition.blocks()) levels = std::max(levels, static_cast<int>(b.size()) * spec.levels);
  GWSpec out{partition.size(), levels, CMatrix::Zero(partition.size(), levels)};
  for (int m = 0; m < partition.size(); ++m) {
    int col = 0;
    for (int j : partition.block(m)) {
      out.coeffs.row(m).segment(col, spec.levels) = spec.coeffs.row(j);
      col += spec.levels;
    }
  }
  return out;
}

std::array<double, 3> gw_negativity_closed(const GWSpec& spec, const Partition& tripartition) {
  if (tripartition.size() != 3) throw InputError("gw_negativity_closed: a partition into exactly 3 blocks is required");
  const GWSpec coarse = gw_coarse_grain(spec, tripartition);
  const double a = coarse.weight(0);
  const double b = coarse.weight(1);
  const double c = coarse.weight(2);
  return {std::sqrt(a * (b + c)), std::sqrt(b * (a + c)), std::sqrt(c * (a + b))};
}

// ---------------------------------------------------------------- product purifications

void ProductPurificationSpec::validate() const {
  for (const auto* v : {&a, &b}) {
    if (v->size() < 2) throw InputError("ProductPurificationSpec: spectra need at least two entries");
    double sum = 0.0;
    for (double x : *v) {
      if (!(x >= 0.0)) throw InputError("ProductPurificationSpec: negative probability");
      sum += x;
    }
    if (std::abs(sum - 1.0) > tol::kNorm) throw InputError("ProductPurificationSpec: probabilities must sum to 1");
  }
}

ProductPurificationSpec ProductPurificationSpec::random(int dim_a, int dim_b, std::uint64_t seed) {
  if (dim_a < 2 || dim_b < 2) throw InputError("ProductPurificationSpec::random: dimensions must be >= 2");
  std::mt19937_64 gen(seed);
  std::exponential_distribution<double> expo(1.0);
  auto draw = [&](int d) {
    std::vector<double> v(static_cast<std::size_t>(d));
    for (double& x : v) x = expo(gen);
    const double sum = std::accumulate(v.begin(), v.end(), 0.0);
    for (double& x : v) x /= sum;
    return v;
  };
  ProductPurificationSpec spec;
  spec.a = draw(dim_a);
  spec.b = draw(dim_b);
  return spec;
}

Ket product_purification(const ProductPurificationSpec& spec) {
  spec.validate();
  const int da = static_cast<int>(spec.a.size());
  const int db = static_cast<int>(spec.b.size());
  const DimensionProfile profile({da, db, da * db});
  CVector amps = CVector::Zero(profile.total());
  for (int i = 0; i < da; ++i) {
    for (int j = 0; j < db; ++j) {
      const std::array<int, 3> label{i, j, i * db + j};
      amps(flat_index(label, profile)) = std::sqrt(spec.a[static_cast<std::size_t>(i)] * spec.b[static_cast<std::size_t>(j)]);
    }
  }
  return Ket::normalized(profile, std::move(amps));
}

double negativity_gap_closed(const ProductPurificationSpec& spec) {
  spec.validate();
  auto root_sum_sq = [](const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += std::sqrt(x);
    return s * s;
  };
  return 0.5 * (1.0 - root_sum_sq(spec.a)) * (1.0 - root_sum_sq(spec.b));
}

// ---------------------------------------------------------------- named states

namespace {

Ket example1() {
  const DimensionProfile p({3, 3, 3});
  CVector amps = CVector::Zero(27);
  const double r2 = std::sqrt(2.0);
  amps(flat_index(std::array{1, 0, 2}, p)) = 3.0 / 5.0;
  amps(flat_index(std::array{2, 0, 0}, p)) = 2.0 * r2 / 5.0;
  amps(flat_index(std::array{0, 1, 0}, p)) = 2.0 / 5.0;
  amps(flat_index(std::array{0, 2, 0}, p)) = r2 / 5.0;
  amps(flat_index(std::array{0, 0, 1}, p)) = r2 / 5.0;
  return Ket::normalized(p, std::move(amps));
}

Ket example2() {
  // |k, k/3, k%3>, k = 0..8, each with amplitude 1/3.
  const DimensionProfile p({9, 3, 3});
  CVector amps = CVector::Zero(p.total());
  for (int k = 0; k < 9; ++k) amps(flat_index(std::array{k, k / 3, k % 3}, p)) = 1.0 / 3.0;
  return Ket::normalized(p, std::move(amps));
}

Ket example3() {
  GWSpec spec{4, 2, CMatrix::Zero(4, 2)};
  spec.coeffs(0, 0) = std::sqrt(0.5);  // A, level 1
  spec.coeffs(1, 0) = 0.5;             // B, level 1
  spec.coeffs(2, 1) = 0.4;             // C, level 2
  spec.coeffs(3, 0) = 0.3;             // D, level 1
  return gw_state(spec);
}

Ket ghz(int n) {
  const DimensionProfile p(std::vector<int>(static_cast<std::size_t>(n), 2));
  CVector amps = CVector::Zero(p.total());
  amps(0) = 1.0;
  amps(p.total() - 1) = 1.0;
  return Ket::normalized(p, std::move(amps));
}

Ket w(int n) {
  const DimensionProfile p(std::vector<int>(static_cast<std::size_t>(n), 2));
  CVector amps = CVector::Zero(p.total());
  for (int k = 0; k < n; ++k) amps(std::int64_t{1} << (n - 1 - k)) = 1.0;
  return Ket::normalized(p, std::move(amps));
}

}  // namespace

Ket named_state(const std::string& name) {
  if (name == "example1") return example1();
  if (name == "example2") return example2();
  if (name == "example3") return example3();
  if (name == "bell") return ghz(2);

  static const std::regex family(R"((ghz|w)(?:\((\d+)\))?)");
  std::smatch m;
  if (std::regex_match(name, m, family)) {
    const int n = m[2].matched ? std::stoi(m[2].str()) : 3;
    if (n < 2 || n > 20) throw InputError("named_state: party count must lie in [2, 20]");
    return m[1] == "ghz" ? ghz(n) : w(n);
  }
  throw InputError("unknown gallery state '" + name + "'");
}

std::vector<std::string> named_state_list() {
  return {"example1", "example2", "example3", "bell", "ghz(n)", "w(n)"};
}

}  // namespace epi
