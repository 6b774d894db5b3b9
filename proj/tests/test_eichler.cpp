#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "mgrid/eichler.hpp"
#include "mgrid/quadrature.hpp"

using namespace mgrid;

namespace {

constexpr double kPi = std::numbers::pi;

const AutomorphyData& weight12() {
  static const auto data =
      AutomorphyData::make(GroupSpec::sl2z(), 12, Multiplier::trivial(), Representation::trivial());
  return data;
}

// Delta-proportional P_{-1} and the weakly holomorphic P_1, built once.
const FourierSeries& cusp() {
  static const auto f = poincare::poincare_series(weight12(), -1, 0, 0, 120, TruncationParams{});
  return f;
}
const FourierSeries& weakly() {
  static const auto f = poincare::poincare_series(weight12(), 1, 0, 0, 120, TruncationParams{});
  return f;
}

GroupElement random_word(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> len(1, 3), pick(0, 1), power(-2, 2);
  GroupElement g = GroupElement::identity();
  for (int i = len(rng); i > 0; --i) g = g * (pick(rng) == 0 ? GroupElement::S() : GroupElement::T(power(rng)));
  return g;
}

}  // namespace

TEST_CASE("adaptive quadrature on known integrals") {
  auto r = quadrature::integrate(
      [](double t, std::span<Complex> out) {
        out[0] = std::sin(t);
        out[1] = Complex(0, std::pow(t, 5));
      },
      2, 0, kPi, 1e-13);
  CHECK(std::abs(r.value[0] - 2.0) < 1e-12);
  CHECK(std::abs(r.value[1] - Complex(0, std::pow(kPi, 6) / 6)) < 1e-10);
  auto tail = quadrature::integrate_to_infinity(
      [](double t, std::span<Complex> out) { out[0] = t * t * std::exp(-3 * t); }, 1, 0.5, 3.0, 1e-14);
  double ref = std::exp(-1.5) * (0.25 / 3 + 2 * 0.5 / 9 + 2.0 / 27);
  CHECK(std::abs(tail.value[0] - ref) < 1e-13);
  CHECK(tail.error < 1e-12);
}

TEST_CASE("Eichler constant") {
  for (int k : {2, 10, 14}) {
    Complex ref = -std::tgamma(k + 1) / std::pow(Complex(0, 2 * kPi), k + 1);
    CHECK(std::abs(eichler::eichler_constant(k) - ref) <= 1e-14 * std::abs(ref));
  }
}

TEST_CASE("holomorphic Eichler integral inverts D^{k+1} on coefficients") {
  auto e = eichler::eichler_E(cusp());
  CHECK(e.weight() == -10);
  for (const auto& [key, c] : cusp().entries()) {
    if (key.l == 0) continue;
    Complex back = e.at(key.l, key.j) * std::pow(double(key.l), 11);
    CHECK(std::abs(back - c.value) <= 1e-13 * std::abs(c.value));
  }
  auto eis = AutomorphyData::make(GroupSpec::sl2z(), 4, Multiplier::trivial(), Representation::trivial());
  TruncationParams trunc;
  trunc.c_max = 200;
  CHECK_THROWS_AS(eichler::eichler_E(poincare::poincare_series(eis, 0, 0, 0, 3, trunc)), Error);
}

TEST_CASE("non-holomorphic Eichler integral by quadrature and by closed form") {
  PrecisionContext ctx{113, 1e-13};
  for (Complex tau : {Complex(0, 1), Complex(0.3, 0.2), Complex(-0.45, 0.6)}) {
    auto q = eichler::eichler_EN(cusp(), tau, ctx);
    auto s = eichler::eichler_EN_series(cusp(), tau);
    CAPTURE(tau);
    CHECK(std::abs(q[0] - s[0]) < 1e-9 * std::abs(s[0]));
  }
}

TEST_CASE("period polynomial from L-values equals c(E - E|S)") {
  eichler::PeriodOptions opt;
  auto r = eichler::period_r(cusp(), GroupElement::S(), opt);
  CHECK(r.converged);
  CHECK(r.coeffs.size() == 11);
  for (Complex tau : eichler::sample_points()) {
    Complex direct = eichler::period_direct(cusp(), GroupElement::S(), tau);
    CHECK(std::abs(r(tau) - direct) < 1e-9 * std::max(1.0, std::abs(direct)));
  }
}

TEST_CASE("holomorphic and non-holomorphic periods agree for cusp forms") {
  eichler::PeriodOptions opt;
  for (GroupElement g : {GroupElement::S(), GroupElement{1, 0, 2, 1}, GroupElement{2, -1, 3, -1}}) {
    auto rh = eichler::period_rH(cusp(), g, opt);
    auto rn = eichler::period_rN(cusp(), g, opt);
    for (Complex tau : eichler::sample_points()) {
      Complex a = rh(tau), b = std::conj(rn(std::conj(tau)));
      CAPTURE(g.to_string());
      CHECK(std::abs(a - b) < 1e-8 * std::max(1.0, std::abs(a)));
    }
  }
}

TEST_CASE("supplementary function identity") {
  eichler::PeriodOptions opt;
  auto rep = eichler::check_supplementary_identity(cusp(), weakly(), GroupElement::S(), eichler::sample_points(), opt);
  CHECK(rep.lhs.size() == 5);
  CHECK(rep.residual < 1e-5);
}

TEST_CASE("weakly holomorphic periods from L-values and from regularized integrals") {
  eichler::PeriodOptions opt;
  auto r = eichler::period_r(weakly(), GroupElement::S(), opt);
  auto ri = eichler::period_integral(weakly(), GroupElement::S(), opt);
  for (Complex tau : eichler::sample_points()) CHECK(std::abs(r(tau) - ri(tau)) < 1e-8 * std::abs(r(tau)));
}

TEST_CASE("r^H differs from r by the constant-term correction") {
  eichler::PeriodOptions opt;
  auto eh = eichler::eichler_EH(weakly(), opt.trunc);
  Complex corr = eichler::eichler_constant(10) * eh.constant[0];
  GroupElement g{1, 0, 2, 1};
  auto r = eichler::period_r(weakly(), g, opt);
  auto rh = eichler::period_rH(weakly(), g, opt);
  for (Complex tau : eichler::sample_points()) {
    Complex expect = r(tau) + corr * (1.0 - std::pow(2.0 * tau + 1.0, 10));
    CHECK(std::abs(rh(tau) - expect) < 1e-9 * std::max(1.0, std::abs(expect)));
  }
}

TEST_CASE("cocycle relation for random words") {
  std::mt19937_64 rng(2024);
  eichler::PeriodOptions opt;
  auto period = [&](const GroupElement& g) {
    return g.c == 0 ? eichler::period_r_parabolic(cusp(), g) : eichler::period_r(cusp(), g, opt);
  };
  const auto& chi = weight12().chi;
  for (int trial = 0; trial < 12; ++trial) {
    GroupElement g = random_word(rng), h = random_word(rng);
    auto rgh = period(g * h), rg = period(g), rh = period(h);
    for (Complex tau : {Complex(0.1, 0.7), Complex(-0.3, 1.2)}) {
      Complex lhs = rgh(tau);
      Complex rhs = eichler::slash(rg, chi, h, tau) + rh(tau);
      CAPTURE(g.to_string());
      CAPTURE(h.to_string());
      CHECK(std::abs(lhs - rhs) < 1e-6 * std::max(1.0, std::abs(lhs)));
    }
  }
}

TEST_CASE("parabolic periods vanish") {
  auto r = eichler::period_r_parabolic(cusp(), GroupElement::T(3));
  for (Complex c : r.coeffs) CHECK(c == Complex{});
  CHECK(r.err < 1e-12);
}

TEST_CASE("period polynomial arithmetic") {
  eichler::PeriodPolynomial p{GroupElement{1, 0, 2, 1}, 2, {1.0, 2.0, 3.0}};
  Complex tau(0.2, 0.5);
  Complex x = tau + 0.5;
  CHECK(std::abs(p(tau) - (1.0 + 2.0 * x + 3.0 * x * x)) < 1e-14);
  auto q = p;
  q += p;
  CHECK(std::abs(q(tau) - 2.0 * p(tau)) < 1e-14);
  eichler::PeriodPolynomial one{GroupElement::S(), 2, {1.0, 0.0, 0.0}};
  CHECK(std::abs(eichler::slash(one, Multiplier::trivial(), GroupElement::S(), tau) - tau * tau) < 1e-14);
}
