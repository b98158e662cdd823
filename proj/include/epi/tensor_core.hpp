#pragma once

// Multi-qudit state representation and the linear-algebra kernels every
// measure is built on.
//
// Basis convention: a label |i_0 i_1 ... i_{n-1}> maps to the flat index
// sum_k i_k * prod_{l>k} d_l (row-major, subsystem 0 most significant).
// Subsystem indices are 0-based throughout the library; only the CLI
// speaks 1-based indices.

#include <complex>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "epi/errors.hpp"

namespace epi {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

/// Sorted, duplicate-free list of 0-based subsystem indices.
using Subsystems = std::vector<int>;

namespace tol {
inline constexpr double kNorm = 1e-12;        // Ket normalization
inline constexpr double kHermitian = 1e-12;   // max |M - M^dagger| entry
inline constexpr double kTrace = 1e-12;       // |Tr rho - 1|
inline constexpr double kEigenFloor = 1e-10;  // eigenvalues in [-floor, 0) clamp to 0
inline constexpr double kSpectrumSum = 1e-10; // |sum lambda - 1|
inline constexpr double kViolation = 1e-9;    // EPI residual below -kViolation is a violation
}  // namespace tol

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

class DimensionProfile {
 public:
  explicit DimensionProfile(std::vector<int> dims);

  [[nodiscard]] int parties() const { return static_cast<int>(dims_.size()); }
  [[nodiscard]] int dim(int k) const { return dims_.at(static_cast<std::size_t>(k)); }
  [[nodiscard]] const std::vector<int>& dims() const { return dims_; }
  [[nodiscard]] std::int64_t total() const { return total_; }

  /// Product of the local dimensions of `block`.
  [[nodiscard]] std::int64_t block_dim(const Subsystems& block) const;
  /// Profile restricted to `block` (kept in ascending order).
  [[nodiscard]] DimensionProfile restrict_to(const Subsystems& block) const;

  friend bool operator==(const DimensionProfile&, const DimensionProfile&) = default;

 private:
  std::vector<int> dims_;
  std::int64_t total_ = 1;
};

[[nodiscard]] std::int64_t flat_index(std::span<const int> multi, const DimensionProfile& profile);
[[nodiscard]] std::vector<int> multi_index(std::int64_t flat, const DimensionProfile& profile);

/// Validates `block` against `profile`: indices in range, sorted on return,
/// no duplicates. Empty blocks are allowed here; callers that need a proper
/// cut use `validate_cut`.
[[nodiscard]] Subsystems normalize_subsystems(Subsystems block, int parties);
/// Returns the sorted block after checking that it is a proper, non-empty subset.
[[nodiscard]] Subsystems validate_cut(Subsystems block, int parties);
[[nodiscard]] Subsystems complement(const Subsystems& block, int parties);

/// Normalized pure state.
class Ket {
 public:
  /// Requires | ||amps|| - 1 | <= tol::kNorm.
  Ket(DimensionProfile profile, CVector amplitudes);

  /// Rescales a non-zero vector to unit norm.
  [[nodiscard]] static Ket normalized(DimensionProfile profile, CVector amplitudes);
  /// Computational basis state |multi>.
  [[nodiscard]] static Ket basis(DimensionProfile profile, std::span<const int> multi);

  [[nodiscard]] const DimensionProfile& profile() const { return profile_; }
  [[nodiscard]] const CVector& amplitudes() const { return amplitudes_; }
  [[nodiscard]] Complex operator[](std::int64_t i) const { return amplitudes_(i); }

 private:
  DimensionProfile profile_;
  CVector amplitudes_;
};

/// Tensor product; the profile of `b` is appended after that of `a`.
[[nodiscard]] Ket tensor(const Ket& a, const Ket& b);

/// Hermitian, PSD, unit-trace operator.
class DensityOp {
 public:
  /// Validates Hermiticity, trace and the eigenvalue floor.
  DensityOp(DimensionProfile profile, CMatrix matrix);

  [[nodiscard]] const DimensionProfile& profile() const { return profile_; }
  [[nodiscard]] const CMatrix& matrix() const { return matrix_; }
  [[nodiscard]] double purity() const;

 private:
  struct Trusted {};
  DensityOp(DimensionProfile profile, CMatrix matrix, Trusted);

  friend DensityOp density_of(const Ket&);
  friend DensityOp partial_trace(const DensityOp&, Subsystems);
  friend DensityOp reduced_density(const Ket&, Subsystems);
  friend DensityOp random_density(const DimensionProfile&, std::int64_t, std::uint64_t);

  DimensionProfile profile_;
  CMatrix matrix_;
};

/// Ordered list of disjoint, non-empty blocks covering 0..n-1.
class Partition {
 public:
  Partition(std::vector<Subsystems> blocks, int parties);

  [[nodiscard]] static Partition singletons(int parties);

  [[nodiscard]] int size() const { return static_cast<int>(blocks_.size()); }
  [[nodiscard]] int parties() const { return parties_; }
  [[nodiscard]] const Subsystems& block(int j) const { return blocks_.at(static_cast<std::size_t>(j)); }
  [[nodiscard]] const std::vector<Subsystems>& blocks() const { return blocks_; }

  friend bool operator==(const Partition&, const Partition&) = default;

 private:
  std::vector<Subsystems> blocks_;
  int parties_;
};

/// Every set partition of n parties with a block count in [min_blocks, max_blocks],
/// enumerated by restricted growth strings.
[[nodiscard]] std::vector<Partition> all_partitions(int parties, int min_blocks, int max_blocks);

[[nodiscard]] DensityOp density_of(const Ket& psi);

/// Reduced state on `keep` (ascending order of subsystems).
[[nodiscard]] DensityOp partial_trace(const DensityOp& rho, Subsystems keep);

/// Same as partial_trace(density_of(psi), keep) without forming the D x D projector.
[[nodiscard]] DensityOp reduced_density(const Ket& psi, Subsystems keep);

/// Transposes the indices of the subsystems in `block`; involutive bit-for-bit.
[[nodiscard]] CMatrix partial_transpose(const CMatrix& matrix, const DimensionProfile& profile,
                                        Subsystems block);
[[nodiscard]] CMatrix partial_transpose(const DensityOp& rho, Subsystems block);

/// Schmidt coefficients sqrt(lambda_i) across block | complement, descending,
/// length block_dim(block) (zero padded when the block is the larger side).
[[nodiscard]] std::vector<double> schmidt_coefficients(const Ket& psi, Subsystems block);

/// Eigenvalues of the reduced state on `block` (squared Schmidt
/// coefficients), descending, length block_dim(block).
[[nodiscard]] std::vector<double> reduced_spectrum(const Ket& psi, Subsystems block);

/// Eigenvalues of (M + M^dagger)/2, descending. No clamping.
[[nodiscard]] RVector hermitian_eigenvalues(const CMatrix& m);

/// Clamps eigenvalues in [-tol::kEigenFloor, 0) to 0; anything more
/// negative throws InvariantViolation.
void clamp_spectrum(std::vector<double>& values);

/// Schatten p-norm for p >= 1; p == kInfinity returns the largest singular value.
[[nodiscard]] double schatten_norm(const CMatrix& m, double p);

/// SplitMix64-style mixing of (master seed, trial index).
[[nodiscard]] std::uint64_t derive_seed(std::uint64_t master, std::uint64_t trial);

/// Normalized complex Gaussian vector.
[[nodiscard]] Ket haar_random_ket(const DimensionProfile& profile, std::uint64_t seed);

/// Haar-random unitary (QR of a complex Ginibre matrix with phase fix).
[[nodiscard]] CMatrix haar_random_unitary(int dim, std::uint64_t seed);

/// Reduced state of a Haar-random purification with a `rank`-dimensional ancilla.
[[nodiscard]] DensityOp random_density(const DimensionProfile& profile, std::int64_t rank,
                                       std::uint64_t seed);

/// Applies U_0 (x) U_1 (x) ... to psi, one local unitary per subsystem.
[[nodiscard]] Ket apply_local_unitaries(const Ket& psi, std::span<const CMatrix> unitaries);

}  // namespace epi
