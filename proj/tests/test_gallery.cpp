#include <doctest.h>

#include <cmath>
#include <numbers>

#include "epi/gallery.hpp"
#include "epi/measures.hpp"
#include "oracles.hpp"

using namespace epi;

namespace {

AcinParams make_acin(std::array<double, 5> l, double theta) {
  double norm = 0.0;
  for (double v : l) norm += v * v;
  for (double& v : l) v /= std::sqrt(norm);
  return AcinParams{l, theta};
}

std::array<double, 2> numeric_pair(const Ket& psi, int party) {
  const auto s = reduced_spectrum(psi, {party});
  return {s[0], s[1]};
}

}  // namespace

TEST_CASE("acin_state") {
  const Ket zero = acin_state(make_acin({1, 0, 0, 0, 0}, 0));
  CHECK(std::abs(zero[0] - Complex(1.0)) < 1e-15);

  const Ket ghz = acin_state(make_acin({1, 0, 0, 0, 1}, 0));
  CHECK((ghz.amplitudes() - named_state("ghz(3)").amplitudes()).norm() < 1e-15);

  const AcinParams p = make_acin({0.3, 0.5, 0.2, 0.6, 0.4}, 1.1);
  const Ket psi = acin_state(p);
  CHECK(std::abs(psi.amplitudes().norm() - 1.0) < 1e-12);
  CHECK(std::abs(psi[0b100] - p.l[1] * std::polar(1.0, 1.1)) < 1e-15);
  CHECK(psi[0b001] == Complex(0.0));

  CHECK_THROWS_AS((AcinParams{{0.5, 0.5, 0.5, 0.5, 0.1}, 0}).validate(), InputError);
  CHECK_THROWS_AS((AcinParams{{-1, 0, 0, 0, 0}, 0}).validate(), InputError);
  CHECK_THROWS_AS((AcinParams{{1, 0, 0, 0, 0}, 4.0}).validate(), InputError);
}

TEST_CASE("acin_schmidt_spectra") {
  SUBCASE("GHZ gives (1/2, 1/2) on every cut") {
    // At Delta = 1/4 the square root amplifies roundoff in Delta to ~1e-8.
    const auto s = acin_schmidt_spectra(make_acin({1, 0, 0, 0, 1}, 0));
    for (const auto& pair : {s.a_cut, s.b_cut, s.c_cut}) {
      CHECK(std::abs(pair[0] - 0.5) < 1e-7);
      CHECK(std::abs(pair[1] - 0.5) < 1e-7);
    }
  }
  SUBCASE("A cut is not (l0^2, 1 - l0^2) when l1 != 0") {
    const AcinParams p = make_acin({0.6, 0.5, 0.4, 0.3, 0.2}, 1.0);
    const auto num = numeric_pair(acin_state(p), 0);
    CHECK(std::abs(num[1] - p.l[0] * p.l[0]) > 1e-3);
    CHECK(std::abs(num[1] - acin_schmidt_spectra(p).a_cut[1]) < 1e-12);
  }
  SUBCASE("l3 = l4 = 0 factorizes the B cut") {
    const AcinParams p = make_acin({0.6, 0.5, 0.4, 0, 0}, 0.7);
    CHECK(acin_delta0(p) == 0.0);
    const auto s = acin_schmidt_spectra(p);
    CHECK(s.b_cut[0] == doctest::Approx(1.0));
    CHECK(std::abs(s.b_cut[1]) < 1e-15);
  }
  SUBCASE("random draws match numeric reduced spectra") {
    for (std::uint64_t t = 0; t < 200; ++t) {
      const AcinParams p = AcinParams::random(derive_seed(17, t));
      p.validate();
      const Ket psi = acin_state(p);
      const auto s = acin_schmidt_spectra(p);
      const std::array<std::array<double, 2>, 3> closed{s.a_cut, s.b_cut, s.c_cut};
      for (int k = 0; k < 3; ++k) {
        const auto num = numeric_pair(psi, k);
        CHECK(std::abs(num[0] - closed[static_cast<std::size_t>(k)][0]) < 1e-10);
        CHECK(std::abs(num[1] - closed[static_cast<std::size_t>(k)][1]) < 1e-10);
      }
    }
  }
  SUBCASE("Delta_0 has the sum-of-squares form") {
    for (std::uint64_t t = 0; t < 50; ++t) {
      const AcinParams p = AcinParams::random(t);
      const auto& l = p.l;
      const double alt = l[0] * l[0] * (l[3] * l[3] + l[4] * l[4]) + std::pow(l[1] * l[4] - l[2] * l[3], 2) +
                         4 * l[1] * l[2] * l[3] * l[4] * std::pow(std::sin(p.theta / 2), 2);
      CHECK(std::abs(alt - acin_delta0(p)) < 1e-14);
      CHECK(acin_delta0(p) <= 0.25 + 1e-12);
      CHECK(acin_delta1(p) <= 0.25 + 1e-12);
    }
  }
}

TEST_CASE("acin_is_biseparable") {
  CHECK(acin_is_biseparable(make_acin({0, 0.3, 0.5, 0.6, 0.4}, 0.2)) == std::set<Cut>{Cut::A});
  CHECK(acin_is_biseparable(make_acin({1, 0, 0, 0, 1}, 0)).empty());
  CHECK(acin_is_biseparable(make_acin({0.6, 0.5, 0.4, 0, 0}, 0.3)).count(Cut::B) == 1);
  // |000> and (l0|0> + l1 e^{i theta}|1>)|00> are fully product: every cut separates.
  CHECK(acin_is_biseparable(make_acin({1, 0, 0, 0, 0}, 0)).size() == 3);
  CHECK(acin_is_biseparable(make_acin({0.8, 0.6, 0, 0, 0}, 0.4)).size() == 3);
  for (std::uint64_t t = 0; t < 100; ++t) CHECK(acin_is_biseparable(AcinParams::random(t)).empty());
}

TEST_CASE("gw_state") {
  GWSpec w{3, 1, CMatrix::Constant(3, 1, Complex(1.0 / std::sqrt(3.0)))};
  CHECK((gw_state(w).amplitudes() - named_state("w(3)").amplitudes()).norm() < 1e-15);

  const Ket ex3 = named_state("example3");
  CHECK(ex3.profile().dims() == std::vector<int>{3, 3, 3, 3});
  CHECK(std::abs(ex3[flat_index(std::vector{1, 0, 0, 0}, ex3.profile())] - Complex(std::sqrt(0.5))) < 1e-15);
  CHECK(std::abs(ex3[flat_index(std::vector{0, 1, 0, 0}, ex3.profile())] - Complex(0.5)) < 1e-15);
  CHECK(std::abs(ex3[flat_index(std::vector{0, 0, 2, 0}, ex3.profile())] - Complex(0.4)) < 1e-15);
  CHECK(std::abs(ex3[flat_index(std::vector{0, 0, 0, 1}, ex3.profile())] - Complex(0.3)) < 1e-15);

  for (std::uint64_t s = 0; s < 20; ++s) {
    const GWSpec spec = GWSpec::random(2 + static_cast<int>(s % 3), 1 + static_cast<int>(s % 2), s);
    spec.validate();
    CHECK(std::abs(gw_state(spec).amplitudes().norm() - 1.0) < 1e-12);
  }
  CHECK_THROWS_AS((GWSpec{2, 1, CMatrix::Constant(2, 1, Complex(0.5))}).validate(), InputError);
}

TEST_CASE("gw_coarse_grain") {
  const GWSpec spec = GWSpec::random(4, 2, 3);
  const GWSpec same = gw_coarse_grain(spec, Partition::singletons(4));
  CHECK((same.coeffs - spec.coeffs).norm() == 0.0);

  SUBCASE("example3 with {A},{B,C},{D}") {
    CMatrix a = CMatrix::Zero(4, 2);
    a(0, 0) = std::sqrt(0.5);
    a(1, 0) = 0.5;
    a(2, 1) = 0.4;
    a(3, 0) = 0.3;
    const GWSpec ex3{4, 2, a};
    const GWSpec g = gw_coarse_grain(ex3, Partition({{0}, {1, 2}, {3}}, 4));
    CHECK(g.parties == 3);
    CHECK(g.levels == 4);
    // B levels then C levels.
    CHECK(std::abs(g.coeffs(1, 0) - 0.5) < 1e-15);
    CHECK(std::abs(g.coeffs(1, 3) - 0.4) < 1e-15);
    CHECK(g.weight(1) == doctest::Approx(0.41));
  }
  SUBCASE("one-to-rest spectra survive coarse graining") {
    for (std::uint64_t s = 0; s < 20; ++s) {
      const GWSpec sp = GWSpec::random(4, 2, derive_seed(8, s));
      const Partition part({{0, 2}, {1}, {3}}, 4);
      const Ket fine = gw_state(sp);
      const Ket coarse = gw_state(gw_coarse_grain(sp, part));
      for (int j = 0; j < 3; ++j) {
        const auto a = reduced_spectrum(fine, part.block(j));
        const auto b = reduced_spectrum(coarse, {j});
        for (std::size_t i = 0; i < 3; ++i) CHECK(std::abs(a[i] - b[i]) < 1e-12);
      }
    }
  }
  SUBCASE("full merge has zero entanglement left") {
    const GWSpec merged = gw_coarse_grain(spec, Partition({{0, 1, 2, 3}}, 4));
    CHECK(merged.parties == 1);
    CHECK(std::abs(merged.weight(0) - 1.0) < 1e-12);
  }
}

TEST_CASE("gw_negativity_closed") {
  const auto ex3 = gw_negativity_closed(
      [] {
        CMatrix a = CMatrix::Zero(4, 2);
        a(0, 0) = std::sqrt(0.5);
        a(1, 0) = 0.5;
        a(2, 1) = 0.4;
        a(3, 0) = 0.3;
        return GWSpec{4, 2, a};
      }(),
      Partition({{0}, {1, 2}, {3}}, 4));
  CHECK(std::abs(ex3[0] - 0.5) < 1e-12);
  CHECK(std::abs(ex3[1] - std::sqrt(0.2419)) < 1e-12);
  CHECK(std::abs(ex3[2] - std::sqrt(0.0819)) < 1e-12);

  const GWSpec w{3, 1, CMatrix::Constant(3, 1, Complex(1.0 / std::sqrt(3.0)))};
  for (double v : gw_negativity_closed(w, Partition::singletons(3))) {
    CHECK(v == doctest::Approx(std::sqrt(2.0) / 3.0).epsilon(1e-12));
  }

  CMatrix c = CMatrix::Zero(3, 1);
  c(0, 0) = std::sqrt(0.5);
  c(1, 0) = std::sqrt(0.5);
  CHECK(gw_negativity_closed(GWSpec{3, 1, c}, Partition::singletons(3))[2] == 0.0);

  CHECK_THROWS_AS((void)gw_negativity_closed(w, Partition({{0}, {1, 2}}, 3)), InputError);

  SUBCASE("matches the trace-norm negativity") {
    for (std::uint64_t s = 0; s < 30; ++s) {
      const GWSpec sp = GWSpec::random(3, 2, derive_seed(21, s));
      const Ket psi = gw_state(sp);
      const auto closed = gw_negativity_closed(sp, Partition::singletons(3));
      for (int k = 0; k < 3; ++k) CHECK(std::abs(negativity(psi, {k}) - closed[static_cast<std::size_t>(k)]) < 1e-9);
    }
  }
}

TEST_CASE("product_purification") {
  const ProductPurificationSpec thirds{{1.0 / 3, 1.0 / 3, 1.0 / 3}, {1.0 / 3, 1.0 / 3, 1.0 / 3}};
  const Ket psi = product_purification(thirds);
  CHECK(psi.profile().dims() == std::vector<int>{3, 3, 9});
  // Same negativities as example2 once C is moved to the front.
  CHECK(std::abs(negativity(psi, {2}) - 4.0) < 1e-9);
  CHECK(std::abs(negativity(psi, {0}) - 1.0) < 1e-9);
  CHECK(std::abs(negativity(psi, {1}) - 1.0) < 1e-9);
  CHECK(negativity_gap_closed(thirds) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(negativity_gap_closed({{0.5, 0.5}, {0.5, 0.5}}) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(std::abs(negativity_gap_closed({{1.0, 0.0}, {0.3, 0.7}})) < 1e-15);

  SUBCASE("AB marginal is diag(a) (x) diag(b)") {
    for (std::uint64_t s = 0; s < 20; ++s) {
      const auto spec = ProductPurificationSpec::random(2 + static_cast<int>(s % 2), 3, s);
      const Ket p = product_purification(spec);
      const CMatrix ab = reduced_density(p, {0, 1}).matrix();
      CMatrix expect = CMatrix::Zero(ab.rows(), ab.cols());
      for (std::size_t i = 0; i < spec.a.size(); ++i) {
        for (std::size_t j = 0; j < spec.b.size(); ++j) {
          const auto f = static_cast<Eigen::Index>(i * spec.b.size() + j);
          expect(f, f) = spec.a[i] * spec.b[j];
        }
      }
      CHECK((ab - expect).cwiseAbs().maxCoeff() < 1e-12);
    }
  }
  SUBCASE("rank-1 a leaves only the B side entangled with C") {
    const Ket p = product_purification({{1.0, 0.0}, {0.25, 0.75}});
    CHECK(std::abs(negativity(p, {0})) < 1e-12);
    CHECK(std::abs(negativity(p, {2}) - negativity(p, {1})) < 1e-12);
  }
  CHECK_THROWS_AS((ProductPurificationSpec{{1.0}, {0.5, 0.5}}).validate(), InputError);
  CHECK_THROWS_AS((ProductPurificationSpec{{0.6, 0.6}, {0.5, 0.5}}).validate(), InputError);
}

TEST_CASE("named_state") {
  const Ket ex1 = named_state("example1");
  CHECK(ex1.profile().dims() == std::vector<int>{3, 3, 3});
  CHECK((ex1.amplitudes().array().abs() > 1e-15).count() == 5);
  CHECK(std::abs(ex1.amplitudes().norm() - 1.0) < 1e-15);

  const Ket ex2 = named_state("example2");
  CHECK(ex2.profile().dims() == std::vector<int>{9, 3, 3});
  int thirds = 0;
  for (Eigen::Index i = 0; i < ex2.amplitudes().size(); ++i) {
    if (std::abs(ex2[i] - Complex(1.0 / 3.0)) < 1e-15) ++thirds;
  }
  CHECK(thirds == 9);
  CHECK(reduced_density(ex2, {1, 2}).matrix().isApprox(CMatrix::Identity(9, 9) / 9.0, 1e-14));

  const Ket bell = named_state("bell");
  CHECK(std::abs(bell[0] - Complex(std::numbers::sqrt2 / 2)) < 1e-15);
  CHECK(std::abs(bell[3] - Complex(std::numbers::sqrt2 / 2)) < 1e-15);

  CHECK(named_state("ghz").profile().parties() == 3);
  CHECK(named_state("w(5)").profile().parties() == 5);
  CHECK(named_state("ghz(4)").profile().total() == 16);
  CHECK_THROWS_AS((void)named_state("example4"), InputError);
  CHECK_THROWS_AS((void)named_state("ghz(1)"), InputError);
  CHECK_THROWS_AS((void)named_state("w(x)"), InputError);
  CHECK(named_state_list().size() >= 6);
}
