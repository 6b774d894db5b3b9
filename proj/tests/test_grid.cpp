#include <cmath>
#include <numbers>

#include "doctest.h"
#include "mgrid/grid.hpp"

using namespace mgrid;

namespace {

constexpr double kPi = std::numbers::pi;

AutomorphyData trivial_data(int weight) {
  return AutomorphyData::make(GroupSpec::sl2z(), weight, Multiplier::trivial(), Representation::trivial());
}

int64_t sigma11(int64_t l) {
  int64_t s = 0;
  for (int64_t d = 1; d <= l; ++d)
    if (l % d == 0) s += static_cast<int64_t>(std::llround(std::pow(double(d), 11)));
  return s;
}

}  // namespace

TEST_CASE("grid pair normalization") {
  auto data = trivial_data(12);
  TruncationParams trunc;
  auto f = grid::build_f(data, 1, 0, 4, trunc);
  CHECK(f.at(-1, 0) == Complex(1, 0));
  auto g = grid::build_G(data, 2, 0, 4, trunc);
  CHECK(g.holomorphic.at(-2, 0) == Complex(1, 0));
  CHECK(g.k == 10);
  CHECK(g.holomorphic.weight() == -10);
  CHECK_THROWS_AS(grid::build_G(data, 0, 0, 4, trunc), Error);
  auto eta = AutomorphyData::make(GroupSpec::sl2z(), 6, Multiplier::eta_power(4), Representation::trivial());
  CHECK_THROWS_AS(grid::build_f(eta, 0, 0, 4, trunc), Error);
}

TEST_CASE("weight 12 Eisenstein-type series has sigma_11 ratios") {
  auto f = grid::build_f(trivial_data(12), 0, 0, 3, TruncationParams{});
  for (int64_t l = 2; l <= 3; ++l) {
    double ratio = (f.at(l, 0) / f.at(1, 0)).real();
    CHECK(ratio == doctest::Approx(double(sigma11(l))).epsilon(1e-5));
  }
}

TEST_CASE("holomorphic part of G from independently computed P_n coefficients") {
  auto data = trivial_data(12);
  TruncationParams trunc;
  auto g = grid::build_G(data, 1, 0, 5, trunc);
  for (int64_t l = 1; l <= 5; ++l) {
    auto p = poincare::poincare_coefficient(data, 1, 0, l, 0, trunc);
    Complex ref = p.value * std::pow(-1.0 / double(l), 11);
    CHECK(std::abs(g.holomorphic.at(l, 0) - ref) < 1e-9 * std::abs(ref));
  }
}

TEST_CASE("duality for weights 4 and 12") {
  TruncationParams trunc;
  for (int weight : {4, 12}) {
    auto data = trivial_data(weight);
    for (int64_t n1 = 0; n1 <= 2; ++n1)
      for (int64_t n2 = 1; n2 <= 2; ++n2) {
        auto r = grid::verify_duality(data, n1, 0, n2, 0, trunc);
        CAPTURE(weight);
        CAPTURE(n1);
        CAPTURE(n2);
        CHECK(r.residual < 1e-6);
        CHECK(r.ok);
      }
  }
}

TEST_CASE("duality with an eta multiplier") {
  auto data = AutomorphyData::make(GroupSpec::sl2z(), 5, Multiplier::eta_power(2), Representation::trivial());
  auto r = grid::verify_duality(data, 1, 0, 1, 0, TruncationParams{});
  CHECK(r.residual < 1e-5);
  CHECK(std::abs(r.lhs) > 1e-3);
}

TEST_CASE("grid of records matches single evaluations") {
  auto data = trivial_data(12);
  TruncationParams trunc;
  auto recs = grid::verify_duality_grid(data, {{1, 0}, {2, 0}}, {{1, 0}, {3, 0}}, trunc);
  REQUIRE(recs.size() == 4);
  auto single = grid::verify_duality(data, 2, 0, 3, 0, trunc);
  CHECK(std::abs(recs[3].lhs - single.lhs) < 1e-9 * std::abs(single.lhs));
  CHECK(std::abs(recs[3].rhs - single.rhs) < 1e-9 * std::abs(single.rhs));
}

TEST_CASE("D^{k+1} and xi images against scaled Poincare series") {
  auto data = trivial_data(12);
  TruncationParams trunc;
  const int k = 10;
  for (int64_t n2 : {1, 2}) {
    auto g = grid::build_G(data, n2, 0, 5, trunc);
    auto d = grid::apply_Dk1(g);
    auto p = poincare::poincare_series(data.conjugate(12), n2, 0, -n2, 5, trunc);
    double sd = std::pow(-double(n2), k + 1);
    for (int64_t l = -n2; l <= 5; ++l) {
      if (l == 0) {
        CHECK(d.find(0, 0) == nullptr);
        continue;
      }
      if (l < 0 && l != -n2) {
        CHECK(d.find(l, 0) == nullptr);
        CHECK(p.find(l, 0) == nullptr);
        continue;
      }
      CAPTURE(l);
      Complex ref = sd * p.at(l, 0);
      CHECK(std::abs(d.at(l, 0) - ref) <= 1e-6 * std::abs(ref) + d.find(l, 0)->tail_bound);
    }
    auto xi = grid::apply_xi(g, data);
    auto shadow = poincare::poincare_series(data, -n2, 0, 1, 5, trunc);
    double sx = std::pow(-4 * kPi, k + 1) / std::tgamma(k + 1) * sd;
    for (int64_t l = 1; l <= 5; ++l) {
      CAPTURE(l);
      Complex ref = sx * shadow.at(l, 0);
      CHECK(std::abs(xi.at(l, 0) - ref) <= 1e-6 * std::abs(ref));
    }
  }
}

TEST_CASE("symmetry of non-holomorphic coefficients") {
  auto data = trivial_data(12);
  TruncationParams trunc;
  for (int64_t a = 1; a <= 3; ++a)
    for (int64_t b = 1; b <= 3; ++b) {
      auto s = grid::check_main2_symmetry(data, a, 0, b, 0, trunc);
      CHECK(s.residual < 1e-6);
    }
}

TEST_CASE("harmonic form is invariant under T") {
  auto data = trivial_data(12);
  PrecisionContext ctx{113, 1e-15};
  auto g = grid::build_G(data, 1, 0, 30, TruncationParams{});
  Complex tau(0.21, 1.3);
  CHECK(std::abs(g.eval(tau + 1.0, 0, ctx) - g.eval(tau, 0, ctx)) < 1e-9 * std::abs(g.eval(tau, 0, ctx)));
}
