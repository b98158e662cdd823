#include "epi/measures.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace epi {

MeasureKind MeasureKind::q_concurrence(double q) {
  if (std::isnan(q) || q < 1.0) throw InputError("q-concurrence requires q >= 1");
  return MeasureKind(Tag::QConcurrence, q);
}

MeasureKind MeasureKind::parse(const std::string& name, double q) {
  if (name == "gem") return gem();
  if (name == "negativity") return negativity();
  if (name == "concurrence") return concurrence();
  if (name == "qconcurrence" || name == "q-concurrence") return q_concurrence(q);
  throw InputError("unknown measure '" + name + "'");
}

std::string MeasureKind::name() const {
  switch (tag_) {
    case Tag::Gem: return "gem";
    case Tag::Negativity: return "negativity";
    case Tag::Concurrence: return "concurrence";
    case Tag::QConcurrence: {
      std::ostringstream os;
      os << "qconcurrence(q=" << q_ << ")";
      return os.str();
    }
  }
  return "unknown";
}

namespace {

// sum_{i<j} x_i x_j without forming (sum x)^2 - sum x^2.
double pair_sum(std::span<const double> x) {
  double prefix = 0.0;
  double acc = 0.0;
  for (double v : x) {
    acc += v * prefix;
    prefix += v;
  }
  return acc;
}

}  // namespace

// The forms below use sum(lambda) = 1 to avoid 1 - (something close to 1):
//   1 - lambda_max          = sum of the other eigenvalues
//   ((sum sqrt l)^2 - 1)/2  = sum_{i<j} sqrt(l_i l_j)
//   1 - sum l^2             = 2 sum_{i<j} l_i l_j
double measure_from_spectrum(std::span<const double> spectrum, const MeasureKind& kind) {
  if (spectrum.empty()) throw InputError("measure_from_spectrum: empty spectrum");
  switch (kind.tag()) {
    case MeasureKind::Tag::Gem: {
      const auto top = std::max_element(spectrum.begin(), spectrum.end());
      double rest = 0.0;
      for (auto it = spectrum.begin(); it != spectrum.end(); ++it) {
        if (it != top) rest += *it;
      }
      return rest;
    }
    case MeasureKind::Tag::Negativity: {
      std::vector<double> roots;
      roots.reserve(spectrum.size());
      for (double l : spectrum) roots.push_back(std::sqrt(std::max(0.0, l)));
      return pair_sum(roots);
    }
    case MeasureKind::Tag::Concurrence:
      return std::sqrt(4.0 * pair_sum(spectrum));
    case MeasureKind::Tag::QConcurrence: {
      double trace_power = 0.0;
      for (double l : spectrum) trace_power += std::pow(l, kind.q());
      return std::max(0.0, 1.0 - trace_power);
    }
  }
  return 0.0;
}

double evaluate(const Ket& psi, const Subsystems& block, const MeasureKind& kind) {
  return measure_from_spectrum(reduced_spectrum(psi, block), kind);
}

double gem_pure(const Ket& psi, const Subsystems& block) { return evaluate(psi, block, MeasureKind::gem()); }

double negativity(const DensityOp& rho, const Subsystems& block) {
  const auto cut = validate_cut(block, rho.profile().parties());
  const double trace_norm = schatten_norm(partial_transpose(rho, cut), 1.0);
  return (trace_norm - 1.0) / 2.0;
}

double negativity(const Ket& psi, const Subsystems& block) { return negativity(density_of(psi), block); }

double negativity_pure_schmidt(const Ket& psi, const Subsystems& block) {
  return evaluate(psi, block, MeasureKind::negativity());
}

double concurrence_pure(const Ket& psi, const Subsystems& block) {
  return evaluate(psi, block, MeasureKind::concurrence());
}

double q_concurrence(const Ket& psi, const Subsystems& block, double q) {
  return evaluate(psi, block, MeasureKind::q_concurrence(q));
}

namespace {

// sigma_y (x) sigma_y in the computational basis |00>,|01>,|10>,|11>.
CMatrix spin_flip() {
  CMatrix flip = CMatrix::Zero(4, 4);
  flip(0, 3) = -1.0;
  flip(1, 2) = 1.0;
  flip(2, 1) = 1.0;
  flip(3, 0) = -1.0;
  return flip;
}

void require_two_qubits(const DensityOp& rho) {
  if (rho.profile().dims() != std::vector<int>{2, 2}) {
    throw InputError("wootters: two-qubit state (dims [2,2]) required");
  }
}

}  // namespace

std::vector<double> wootters_eigenvalues(const DensityOp& rho) {
  require_two_qubits(rho);
  const CMatrix flip = spin_flip();
  const CMatrix& r = rho.matrix();
  const CMatrix product = r * flip * r.conjugate() * flip;
  Eigen::ComplexEigenSolver<CMatrix> solver(product, false);
  if (solver.info() != Eigen::Success) throw InvariantViolation("wootters: eigensolve failed");

  std::vector<double> mu;
  for (Eigen::Index i = 0; i < 4; ++i) {
    const Complex ev = solver.eigenvalues()(i);
    if (std::abs(ev.imag()) > 1e-8) {
      throw InvariantViolation("wootters: eigenvalue with imaginary part " + std::to_string(ev.imag()));
    }
    if (ev.real() < -1e-8) throw InvariantViolation("wootters: negative eigenvalue " + std::to_string(ev.real()));
    mu.push_back(std::max(0.0, ev.real()));
  }
  std::sort(mu.begin(), mu.end(), std::greater<>());
  return mu;
}

double wootters_concurrence(const DensityOp& rho) {
  require_two_qubits(rho);
  // sqrt(mu_i) are the singular values of sqrt(rho) Y sqrt(rho)^*, since
  // that matrix times its adjoint is similar to rho Y rho^* Y.
  Eigen::SelfAdjointEigenSolver<CMatrix> es(rho.matrix());
  if (es.info() != Eigen::Success) throw InvariantViolation("wootters: eigensolve failed");
  RVector roots = es.eigenvalues();
  for (Eigen::Index i = 0; i < roots.size(); ++i) {
    if (roots(i) < -tol::kEigenFloor) throw InvariantViolation("wootters: density matrix not PSD");
    roots(i) = std::sqrt(std::max(0.0, roots(i)));
  }
  const CMatrix sqrt_rho = es.eigenvectors() * roots.asDiagonal() * es.eigenvectors().adjoint();
  const CMatrix a = sqrt_rho * spin_flip() * sqrt_rho.conjugate();
  const RVector s = Eigen::JacobiSVD<CMatrix>(a).singularValues();
  return std::clamp(s(0) - s(1) - s(2) - s(3), 0.0, 1.0);
}

}  // namespace epi
