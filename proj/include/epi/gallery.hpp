#pragma once

// Analytic state families with closed-form spectra and negativities, and
// the named example states exposed through the CLI as "gallery:<name>".

#include <array>
#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "epi/tensor_core.hpp"

namespace epi {

// ---------------------------------------------------------------- three-qubit canonical form

/// l0|000> + l1 e^{i theta}|100> + l2|101> + l3|110> + l4|111>.
struct AcinParams {
  std::array<double, 5> l{};
  double theta = 0.0;

  /// Checks l_i >= 0, sum l_i^2 = 1 (1e-12), theta in [0, pi).
  void validate() const;
  /// Uniform direction on the positive orthant of S^4, theta uniform in [0, pi).
  static AcinParams random(std::uint64_t seed);
};

enum class Cut { A, B, C };

/// Descending pairs (1 +- sqrt(1 - 4 Delta)) / 2 per cut.
struct AcinSpectra {
  std::array<double, 2> a_cut;
  std::array<double, 2> b_cut;
  std::array<double, 2> c_cut;
};

[[nodiscard]] Ket acin_state(const AcinParams& params);

/// det rho_A = l0^2 (l2^2 + l3^2 + l4^2). The |000> and |100> terms share
/// the BC label |00>, so rho_A is not diagonal unless l0 l1 = 0.
[[nodiscard]] double acin_delta_a(const AcinParams& params);
/// l0^2 l3^2 + l0^2 l4^2 + l1^2 l4^2 + l2^2 l3^2 - 2 l1 l2 l3 l4 cos(theta)
[[nodiscard]] double acin_delta0(const AcinParams& params);
/// l0^2 l2^2 + l0^2 l4^2 + l1^2 l4^2 + l2^2 l3^2 - 2 l1 l2 l3 l4 cos(theta)
[[nodiscard]] double acin_delta1(const AcinParams& params);

[[nodiscard]] AcinSpectra acin_schmidt_spectra(const AcinParams& params);

inline constexpr double kDefaultBiseparableTol = 1e-9;

/// Cuts across which the state factorizes: a cut separates when its
/// determinant (Delta_A, Delta_0 or Delta_1) is at most `tol`.
[[nodiscard]] std::set<Cut> acin_is_biseparable(const AcinParams& params, double tol = kDefaultBiseparableTol);

// ---------------------------------------------------------------- generalized W class

/// sum_i ( a_{1i}|i0..0> + ... + a_{ni}|0..0i> ), levels i = 1..d,
/// local dimension d + 1.
struct GWSpec {
  int parties = 0;
  int levels = 0;
  /// coeffs(j, i-1) is the amplitude of level i on party j.
  CMatrix coeffs;

  void validate() const;
  /// Weight sum_i |a_{ji}|^2 of party j.
  [[nodiscard]] double weight(int party) const;
  static GWSpec random(int parties, int levels, std::uint64_t seed);
};

[[nodiscard]] Ket gw_state(const GWSpec& spec);

/// Groups parties into blocks. Block vectors concatenate member vectors in
/// ascending party order, zero padded to the longest block.
[[nodiscard]] GWSpec gw_coarse_grain(const GWSpec& spec, const Partition& partition);

/// sqrt(a(b+c)), sqrt(b(a+c)), sqrt(c(a+b)) from the block weights of a
/// three-block coarse graining.
[[nodiscard]] std::array<double, 3> gw_negativity_closed(const GWSpec& spec, const Partition& tripartition);

// ---------------------------------------------------------------- product purifications

/// Spectra a (of rho) and b (of sigma) of a product state rho (x) sigma.
struct ProductPurificationSpec {
  std::vector<double> a;
  std::vector<double> b;

  void validate() const;
  /// Uniform on the simplex (normalized exponentials), all entries positive.
  static ProductPurificationSpec random(int dim_a, int dim_b, std::uint64_t seed);
};

/// sum_ij sqrt(a_i b_j)|i>_A|j>_B|ij>_C with C of dimension d_a d_b.
[[nodiscard]] Ket product_purification(const ProductPurificationSpec& spec);

/// N_{C|AB} - N_{A|BC} - N_{B|AC} = (1 - (sum sqrt a)^2)(1 - (sum sqrt b)^2) / 2.
[[nodiscard]] double negativity_gap_closed(const ProductPurificationSpec& spec);

// ---------------------------------------------------------------- named states

/// example1, example2, example3, bell, ghz(n), w(n). ghz and w without an
/// argument mean n = 3.
[[nodiscard]] Ket named_state(const std::string& name);

/// Identifiers accepted by named_state (with n shown as a placeholder).
[[nodiscard]] std::vector<std::string> named_state_list();

/// The printed largest-eigenvalue triple of example1 (cuts A, B, C).
inline constexpr std::array<double, 3> kExample1PrintedValues{9.0 / 25.0, 19.0 / 25.0, 14.0 / 25.0};

}  // namespace epi
