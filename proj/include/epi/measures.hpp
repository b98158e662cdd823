#pragma once

// Bipartite entanglement measures. Pure-state measures are spectral
// functions of the reduced spectrum across the cut, so they are
// symmetric under block <-> complement.

#include <span>
#include <string>
#include <vector>

#include "epi/tensor_core.hpp"

namespace epi {

class MeasureKind {
 public:
  enum class Tag { Gem, Negativity, Concurrence, QConcurrence };

  static MeasureKind gem() { return MeasureKind(Tag::Gem, 0.0); }
  static MeasureKind negativity() { return MeasureKind(Tag::Negativity, 0.0); }
  static MeasureKind concurrence() { return MeasureKind(Tag::Concurrence, 0.0); }
  /// Throws InputError when q < 1.
  static MeasureKind q_concurrence(double q);
  /// Accepts "gem", "negativity", "concurrence", "qconcurrence" (q required for the latter).
  static MeasureKind parse(const std::string& name, double q = 2.0);

  [[nodiscard]] Tag tag() const { return tag_; }
  [[nodiscard]] double q() const { return q_; }
  [[nodiscard]] std::string name() const;

  friend bool operator==(const MeasureKind&, const MeasureKind&) = default;

 private:
  MeasureKind(Tag tag, double q) : tag_(tag), q_(q) {}
  Tag tag_;
  double q_;
};

/// Evaluates a pure-state measure directly from a Schmidt spectrum.
[[nodiscard]] double measure_from_spectrum(std::span<const double> spectrum, const MeasureKind& kind);

/// Measure of psi across block | complement (spectral route).
[[nodiscard]] double evaluate(const Ket& psi, const Subsystems& block, const MeasureKind& kind);

/// Geometric measure 1 - lambda_max.
[[nodiscard]] double gem_pure(const Ket& psi, const Subsystems& block);

/// (||rho^{T_block}||_1 - 1) / 2 via the partial transpose.
[[nodiscard]] double negativity(const DensityOp& rho, const Subsystems& block);
[[nodiscard]] double negativity(const Ket& psi, const Subsystems& block);

/// ((sum sqrt(lambda))^2 - 1) / 2 from the reduced spectrum.
[[nodiscard]] double negativity_pure_schmidt(const Ket& psi, const Subsystems& block);

/// sqrt(2 (1 - Tr rho_S^2)).
[[nodiscard]] double concurrence_pure(const Ket& psi, const Subsystems& block);

/// 1 - Tr rho_S^q, q >= 1.
[[nodiscard]] double q_concurrence(const Ket& psi, const Subsystems& block, double q);

/// Eigenvalues mu_1 >= ... >= mu_4 of rho (sigma_y x sigma_y) rho^* (sigma_y x sigma_y)
/// from a general eigensolver. Imaginary parts above 1e-8 throw.
[[nodiscard]] std::vector<double> wootters_eigenvalues(const DensityOp& rho);

/// Wootters' closed form max(0, sqrt(mu_1) - sqrt(mu_2) - sqrt(mu_3) - sqrt(mu_4))
/// for two-qubit states.
[[nodiscard]] double wootters_concurrence(const DensityOp& rho);

}  // namespace epi
