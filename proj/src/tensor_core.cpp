#include "epi/tensor_core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>

namespace epi {

namespace {

// Flat index of each basis label restricted to `block` (inner) and to its
// complement (outer), both row-major in ascending subsystem order.
struct IndexSplit {
  std::vector<std::int64_t> inner;
  std::vector<std::int64_t> outer;
  std::int64_t inner_dim = 1;
  std::int64_t outer_dim = 1;
};

IndexSplit split_indices(const DimensionProfile& profile, const Subsystems& block) {
  const int n = profile.parties();
  std::vector<bool> in_block(static_cast<std::size_t>(n), false);
  for (int k : block) in_block[static_cast<std::size_t>(k)] = true;

  // Per-subsystem stride inside its own group.
  std::vector<std::int64_t> stride(static_cast<std::size_t>(n), 0);
  IndexSplit split;
  for (int k = n - 1; k >= 0; --k) {
    auto& group_dim = in_block[static_cast<std::size_t>(k)] ? split.inner_dim : split.outer_dim;
    stride[static_cast<std::size_t>(k)] = group_dim;
    group_dim *= profile.dim(k);
  }

  const std::int64_t total = profile.total();
  split.inner.resize(static_cast<std::size_t>(total));
  split.outer.resize(static_cast<std::size_t>(total));
  std::vector<int> digits(static_cast<std::size_t>(n), 0);
  std::int64_t inner = 0;
  std::int64_t outer = 0;
  for (std::int64_t f = 0; f < total; ++f) {
    split.inner[static_cast<std::size_t>(f)] = inner;
    split.outer[static_cast<std::size_t>(f)] = outer;
    // Odometer increment, last subsystem fastest.
    for (int k = n - 1; k >= 0; --k) {
      auto& digit = digits[static_cast<std::size_t>(k)];
      auto& acc = in_block[static_cast<std::size_t>(k)] ? inner : outer;
      const auto s = stride[static_cast<std::size_t>(k)];
      if (digit + 1 < profile.dim(k)) {
        ++digit;
        acc += s;
        break;
      }
      acc -= s * digit;
      digit = 0;
    }
  }
  return split;
}

// Contribution of the `block` digits to the full flat index.
std::vector<std::int64_t> block_offsets(const DimensionProfile& profile, const Subsystems& block) {
  const int n = profile.parties();
  std::vector<std::int64_t> stride(static_cast<std::size_t>(n));
  std::int64_t s = 1;
  for (int k = n - 1; k >= 0; --k) {
    stride[static_cast<std::size_t>(k)] = s;
    s *= profile.dim(k);
  }
  const std::int64_t total = profile.total();
  std::vector<std::int64_t> offsets(static_cast<std::size_t>(total), 0);
  for (std::int64_t f = 0; f < total; ++f) {
    std::int64_t off = 0;
    for (int k : block) {
      const auto sk = stride[static_cast<std::size_t>(k)];
      off += ((f / sk) % profile.dim(k)) * sk;
    }
    offsets[static_cast<std::size_t>(f)] = off;
  }
  return offsets;
}

// Rows: block index, columns: complement index.
CMatrix coefficient_matrix(const Ket& psi, const Subsystems& block) {
  const auto split = split_indices(psi.profile(), block);
  CMatrix m = CMatrix::Zero(split.inner_dim, split.outer_dim);
  const auto& amps = psi.amplitudes();
  for (std::int64_t f = 0; f < psi.profile().total(); ++f) {
    m(split.inner[static_cast<std::size_t>(f)], split.outer[static_cast<std::size_t>(f)]) = amps(f);
  }
  return m;
}

CMatrix hermitize(const CMatrix& m) { return (m + m.adjoint()) * 0.5; }

double max_hermitian_deviation(const CMatrix& m) {
  if (m.rows() != m.cols()) return kInfinity;
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

}  // namespace

// ---------------------------------------------------------------- profile

DimensionProfile::DimensionProfile(std::vector<int> dims) : dims_(std::move(dims)) {
  if (dims_.empty()) throw InputError("DimensionProfile: at least one subsystem required");
  constexpr std::int64_t kMaxTotal = std::int64_t{1} << 40;
  for (int d : dims_) {
    if (d < 2) throw InputError("DimensionProfile: local dimension " + std::to_string(d) + " < 2");
    if (total_ > kMaxTotal / d) throw InputError("DimensionProfile: total dimension overflows");
    total_ *= d;
  }
}

std::int64_t DimensionProfile::block_dim(const Subsystems& block) const {
  std::int64_t d = 1;
  for (int k : block) d *= dim(k);
  return d;
}

DimensionProfile DimensionProfile::restrict_to(const Subsystems& block) const {
  std::vector<int> dims;
  for (int k : normalize_subsystems(block, parties())) dims.push_back(dim(k));
  return DimensionProfile(std::move(dims));
}

std::int64_t flat_index(std::span<const int> multi, const DimensionProfile& profile) {
  if (static_cast<int>(multi.size()) != profile.parties()) {
    throw InputError("flat_index: expected " + std::to_string(profile.parties()) + " indices");
  }
  std::int64_t f = 0;
  for (int k = 0; k < profile.parties(); ++k) {
    const int i = multi[static_cast<std::size_t>(k)];
    if (i < 0 || i >= profile.dim(k)) {
      throw InputError("flat_index: index " + std::to_string(i) + " out of range for subsystem " +
                       std::to_string(k));
    }
    f = f * profile.dim(k) + i;
  }
  return f;
}

std::vector<int> multi_index(std::int64_t flat, const DimensionProfile& profile) {
  if (flat < 0 || flat >= profile.total()) throw InputError("multi_index: flat index out of range");
  std::vector<int> multi(static_cast<std::size_t>(profile.parties()));
  for (int k = profile.parties() - 1; k >= 0; --k) {
    multi[static_cast<std::size_t>(k)] = static_cast<int>(flat % profile.dim(k));
    flat /= profile.dim(k);
  }
  return multi;
}

Subsystems normalize_subsystems(Subsystems block, int parties) {
  std::sort(block.begin(), block.end());
  for (std::size_t i = 0; i < block.size(); ++i) {
    if (block[i] < 0 || block[i] >= parties) {
      throw InputError("subsystem index " + std::to_string(block[i]) + " out of range");
    }
    if (i > 0 && block[i] == block[i - 1]) {
      throw InputError("subsystem index " + std::to_string(block[i]) + " repeated");
    }
  }
  return block;
}

Subsystems validate_cut(Subsystems block, int parties) {
  block = normalize_subsystems(std::move(block), parties);
  if (block.empty() || static_cast<int>(block.size()) == parties) {
    throw InputError("a cut needs a proper, non-empty block of subsystems");
  }
  return block;
}

Subsystems complement(const Subsystems& block, int parties) {
  Subsystems rest;
  for (int k = 0; k < parties; ++k) {
    if (!std::binary_search(block.begin(), block.end(), k)) rest.push_back(k);
  }
  return rest;
}

// ---------------------------------------------------------------- Ket

Ket::Ket(DimensionProfile profile, CVector amplitudes)
    : profile_(std::move(profile)), amplitudes_(std::move(amplitudes)) {
  if (amplitudes_.size() != profile_.total()) {
    throw InputError("Ket: " + std::to_string(amplitudes_.size()) + " amplitudes for dimension " +
                     std::to_string(profile_.total()));
  }
  if (std::abs(amplitudes_.norm() - 1.0) > tol::kNorm) throw InputError("Ket: amplitudes not normalized");
}

Ket Ket::normalized(DimensionProfile profile, CVector amplitudes) {
  const double norm = amplitudes.norm();
  if (!(norm > 0.0) || !std::isfinite(norm)) throw InputError("Ket: cannot normalize a zero or non-finite vector");
  amplitudes /= norm;
  return Ket(std::move(profile), std::move(amplitudes));
}

Ket Ket::basis(DimensionProfile profile, std::span<const int> multi) {
  CVector amps = CVector::Zero(profile.total());
  amps(flat_index(multi, profile)) = 1.0;
  return Ket(std::move(profile), std::move(amps));
}

Ket tensor(const Ket& a, const Ket& b) {
  std::vector<int> dims = a.profile().dims();
  dims.insert(dims.end(), b.profile().dims().begin(), b.profile().dims().end());
  CVector amps(a.profile().total() * b.profile().total());
  for (std::int64_t i = 0; i < a.profile().total(); ++i) {
    amps.segment(i * b.profile().total(), b.profile().total()) = a[i] * b.amplitudes();
  }
  return Ket::normalized(DimensionProfile(std::move(dims)), std::move(amps));
}

// ---------------------------------------------------------------- DensityOp

DensityOp::DensityOp(DimensionProfile profile, CMatrix matrix)
    : profile_(std::move(profile)), matrix_(std::move(matrix)) {
  if (matrix_.rows() != profile_.total() || matrix_.cols() != profile_.total()) {
    throw InputError("DensityOp: matrix shape does not match profile");
  }
  if (max_hermitian_deviation(matrix_) > tol::kHermitian) throw InputError("DensityOp: matrix not Hermitian");
  if (std::abs(matrix_.trace() - Complex(1.0)) > tol::kTrace) throw InputError("DensityOp: trace != 1");
  const RVector eig = hermitian_eigenvalues(matrix_);
  if (eig(eig.size() - 1) < -tol::kEigenFloor) throw InputError("DensityOp: matrix not positive semidefinite");
}

DensityOp::DensityOp(DimensionProfile profile, CMatrix matrix, Trusted)
    : profile_(std::move(profile)), matrix_(hermitize(matrix)) {}

double DensityOp::purity() const { return (matrix_ * matrix_).trace().real(); }

// ---------------------------------------------------------------- partitions

Partition::Partition(std::vector<Subsystems> blocks, int parties) : parties_(parties) {
  if (parties < 1) throw InputError("Partition: no parties");
  std::vector<bool> seen(static_cast<std::size_t>(parties), false);
  for (auto& b : blocks) {
    if (b.empty()) throw InputError("Partition: empty block");
    b = normalize_subsystems(std::move(b), parties);
    for (int k : b) {
      if (seen[static_cast<std::size_t>(k)]) {
        throw InputError("Partition: subsystem " + std::to_string(k + 1) + " appears in two blocks");
      }
      seen[static_cast<std::size_t>(k)] = true;
    }
  }
  if (std::find(seen.begin(), seen.end(), false) != seen.end()) {
    throw InputError("Partition: blocks do not cover every subsystem");
  }
  blocks_ = std::move(blocks);
}

Partition Partition::singletons(int parties) {
  std::vector<Subsystems> blocks;
  for (int k = 0; k < parties; ++k) blocks.push_back({k});
  return Partition(std::move(blocks), parties);
}

std::vector<Partition> all_partitions(int parties, int min_blocks, int max_blocks) {
  if (parties < 1) throw InputError("all_partitions: no parties");
  std::vector<Partition> out;
  std::vector<int> label(static_cast<std::size_t>(parties), 0);
  // Restricted growth strings: label[0] = 0, label[i] <= max(label[0..i-1]) + 1.
  auto emit = [&] {
    const int k = *std::max_element(label.begin(), label.end()) + 1;
    if (k < min_blocks || k > max_blocks) return;
    std::vector<Subsystems> blocks(static_cast<std::size_t>(k));
    for (int i = 0; i < parties; ++i) blocks[static_cast<std::size_t>(label[static_cast<std::size_t>(i)])].push_back(i);
    out.emplace_back(std::move(blocks), parties);
  };
  auto recurse = [&](auto&& self, int i, int max_so_far) -> void {
    if (i == parties) {
      emit();
      return;
    }
    for (int v = 0; v <= max_so_far + 1; ++v) {
      label[static_cast<std::size_t>(i)] = v;
      self(self, i + 1, std::max(max_so_far, v));
    }
  };
  recurse(recurse, 1, 0);
  return out;
}

// ---------------------------------------------------------------- reductions

DensityOp density_of(const Ket& psi) {
  const auto& a = psi.amplitudes();
  return DensityOp(psi.profile(), a * a.adjoint(), DensityOp::Trusted{});
}

DensityOp partial_trace(const DensityOp& rho, Subsystems keep) {
  const auto& profile = rho.profile();
  keep = normalize_subsystems(std::move(keep), profile.parties());
  if (keep.empty()) throw InputError("partial_trace: keep set is empty");

  const auto split = split_indices(profile, keep);
  // Group basis labels by their traced-out part.
  std::vector<std::vector<std::int64_t>> groups(static_cast<std::size_t>(split.outer_dim));
  for (std::int64_t f = 0; f < profile.total(); ++f) {
    groups[static_cast<std::size_t>(split.outer[static_cast<std::size_t>(f)])].push_back(f);
  }
  CMatrix out = CMatrix::Zero(split.inner_dim, split.inner_dim);
  const auto& m = rho.matrix();
  for (const auto& g : groups) {
    for (auto r : g) {
      for (auto c : g) {
        out(split.inner[static_cast<std::size_t>(r)], split.inner[static_cast<std::size_t>(c)]) += m(r, c);
      }
    }
  }
  return DensityOp(profile.restrict_to(keep), std::move(out), DensityOp::Trusted{});
}

DensityOp reduced_density(const Ket& psi, Subsystems keep) {
  keep = normalize_subsystems(std::move(keep), psi.profile().parties());
  if (keep.empty()) throw InputError("reduced_density: keep set is empty");
  const CMatrix m = coefficient_matrix(psi, keep);
  return DensityOp(psi.profile().restrict_to(keep), m * m.adjoint(), DensityOp::Trusted{});
}

CMatrix partial_transpose(const CMatrix& matrix, const DimensionProfile& profile, Subsystems block) {
  block = normalize_subsystems(std::move(block), profile.parties());
  if (matrix.rows() != profile.total() || matrix.cols() != profile.total()) {
    throw InputError("partial_transpose: matrix shape does not match profile");
  }
  const auto off = block_offsets(profile, block);
  const std::int64_t total = profile.total();
  CMatrix out(total, total);
  for (std::int64_t c = 0; c < total; ++c) {
    const auto oc = off[static_cast<std::size_t>(c)];
    for (std::int64_t r = 0; r < total; ++r) {
      const auto orow = off[static_cast<std::size_t>(r)];
      out(r - orow + oc, c - oc + orow) = matrix(r, c);
    }
  }
  return out;
}

CMatrix partial_transpose(const DensityOp& rho, Subsystems block) {
  return partial_transpose(rho.matrix(), rho.profile(), std::move(block));
}

RVector hermitian_eigenvalues(const CMatrix& m) {
  if (m.rows() != m.cols()) throw InputError("hermitian_eigenvalues: matrix not square");
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(hermitize(m), Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw InvariantViolation("hermitian eigensolve failed");
  return solver.eigenvalues().reverse();
}

void clamp_spectrum(std::vector<double>& values) {
  for (double& v : values) {
    if (v < -tol::kEigenFloor) {
      throw InvariantViolation("eigenvalue " + std::to_string(v) + " below the PSD floor");
    }
    if (v < 0.0) v = 0.0;
  }
}

std::vector<double> schmidt_coefficients(const Ket& psi, Subsystems block) {
  block = validate_cut(std::move(block), psi.profile().parties());
  const CMatrix m = coefficient_matrix(psi, block);
  // Singular values carry absolute error ~eps, so vanishing Schmidt
  // coefficients stay ~1e-16 instead of sqrt(eps) as with a Gram eigensolve.
  Eigen::JacobiSVD<CMatrix> svd(m);
  const RVector& s = svd.singularValues();
  std::vector<double> out(static_cast<std::size_t>(m.rows()), 0.0);
  for (Eigen::Index i = 0; i < s.size(); ++i) out[static_cast<std::size_t>(i)] = s(i);
  return out;
}

std::vector<double> reduced_spectrum(const Ket& psi, Subsystems block) {
  auto spectrum = schmidt_coefficients(psi, std::move(block));
  for (double& v : spectrum) v *= v;
  const double sum = std::accumulate(spectrum.begin(), spectrum.end(), 0.0);
  if (std::abs(sum - 1.0) > tol::kSpectrumSum) throw InvariantViolation("reduced spectrum does not sum to 1");
  return spectrum;
}

double schatten_norm(const CMatrix& m, double p) {
  if (std::isnan(p) || p < 1.0) throw InputError("schatten_norm: p must be >= 1");
  if (!m.allFinite()) throw InputError("schatten_norm: matrix has non-finite entries");
  if (m.size() == 0) return 0.0;

  RVector s;
  if (max_hermitian_deviation(m) <= tol::kHermitian) {
    s = hermitian_eigenvalues(m).cwiseAbs();
  } else {
    Eigen::BDCSVD<CMatrix> svd(m);
    s = svd.singularValues();
  }
  const double top = s.maxCoeff();
  if (p == kInfinity) return top;
  if (top == 0.0) return 0.0;
  double acc = 0.0;
  for (Eigen::Index i = 0; i < s.size(); ++i) acc += std::pow(s(i) / top, p);
  return top * std::pow(acc, 1.0 / p);
}

// ---------------------------------------------------------------- randomness

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t trial) {
  auto mix = [](std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  };
  return mix(mix(master) ^ trial);
}

namespace {

CMatrix ginibre(Eigen::Index rows, Eigen::Index cols, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  CMatrix g(rows, cols);
  for (Eigen::Index c = 0; c < cols; ++c) {
    for (Eigen::Index r = 0; r < rows; ++r) {
      const double re = normal(gen);
      const double im = normal(gen);
      g(r, c) = Complex(re, im);
    }
  }
  return g;
}

}  // namespace

Ket haar_random_ket(const DimensionProfile& profile, std::uint64_t seed) {
  CMatrix g = ginibre(profile.total(), 1, seed);
  return Ket::normalized(profile, g.col(0));
}

CMatrix haar_random_unitary(int dim, std::uint64_t seed) {
  if (dim < 1) throw InputError("haar_random_unitary: dimension must be positive");
  const CMatrix g = ginibre(dim, dim, seed);
  Eigen::HouseholderQR<CMatrix> qr(g);
  CMatrix q = qr.householderQ();
  const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int i = 0; i < dim; ++i) {
    const Complex d = r(i, i);
    const double a = std::abs(d);
    if (a > 0.0) q.col(i) *= d / a;
  }
  return q;
}

DensityOp random_density(const DimensionProfile& profile, std::int64_t rank, std::uint64_t seed) {
  if (rank < 1 || rank > profile.total()) {
    throw InputError("random_density: rank must lie in [1, " + std::to_string(profile.total()) + "]");
  }
  const CMatrix g = ginibre(profile.total(), rank, seed);
  CMatrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return DensityOp(profile, std::move(rho), DensityOp::Trusted{});
}

Ket apply_local_unitaries(const Ket& psi, std::span<const CMatrix> unitaries) {
  const auto& profile = psi.profile();
  if (static_cast<int>(unitaries.size()) != profile.parties()) {
    throw InputError("apply_local_unitaries: one unitary per subsystem required");
  }
  CVector amps = psi.amplitudes();
  std::int64_t stride = 1;
  for (int k = profile.parties() - 1; k >= 0; --k) {
    const auto& u = unitaries[static_cast<std::size_t>(k)];
    const int d = profile.dim(k);
    if (u.rows() != d || u.cols() != d) throw InputError("apply_local_unitaries: unitary shape mismatch");
    CVector next = CVector::Zero(amps.size());
    for (std::int64_t f = 0; f < amps.size(); ++f) {
      const int i = static_cast<int>((f / stride) % d);
      const std::int64_t base = f - i * stride;
      for (int a = 0; a < d; ++a) next(base + a * stride) += u(a, i) * amps(f);
    }
    amps = std::move(next);
    stride *= d;
  }
  return Ket::normalized(profile, std::move(amps));
}

}  // namespace epi
