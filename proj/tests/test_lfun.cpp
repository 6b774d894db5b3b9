#include <array>
#include <cmath>

#include "doctest.h"
#include "mgrid/lfun.hpp"

using namespace mgrid;

namespace {

const AutomorphyData& weight12() {
  static const auto data =
      AutomorphyData::make(GroupSpec::sl2z(), 12, Multiplier::trivial(), Representation::trivial());
  return data;
}

const FourierSeries& cusp() {
  static const auto f = poincare::poincare_series(weight12(), -1, 0, 0, 60, TruncationParams{});
  return f;
}

// L(Delta, s), s = 1..11, from an arbitrary-precision evaluation of the standard integral.
constexpr std::array<double, 11> kDeltaL = {
    0.037441281268515542, 0.14637454209126599, 0.31524156588099308, 0.50161764751090222,
    0.66670918843400364,  0.79212283864603057, 0.87735412538866092, 0.93070703029812609,
    0.96212645969442586,  0.97980908825122052, 0.9894329131003376};

// Petersson norm of Delta.
constexpr double kDeltaNorm = 1.035362056804320922e-6;

double rel(Complex a, Complex b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

TEST_CASE("untwisted L-values of Delta") {
  auto tw = lfun::TwistSpec::from(GroupElement::S());
  auto ls = lfun::lvalues_series(cusp(), tw, 11, 1.0, 1e-13);
  Complex a1 = cusp().at(1, 0);
  for (int s = 1; s <= 11; ++s) {
    CAPTURE(s);
    CHECK(rel(ls[s - 1].value / a1, kDeltaL[s - 1]) < 1e-10);
    CHECK(ls[s - 1].converged);
    CHECK(ls[s - 1].err < 1e-12 * std::abs(ls[s - 1].value));
  }
}

TEST_CASE("series and integral routes agree and do not depend on t0") {
  for (GroupElement g : {GroupElement::S(), GroupElement{1, 0, 2, 1}, GroupElement{2, -1, 3, -1}}) {
    auto tw = lfun::TwistSpec::from(g);
    auto base = lfun::lvalues_series(cusp(), tw, 11, tw.default_t0(), 1e-12);
    for (double scale : {0.5, 1.0, 2.0}) {
      double t0 = scale * tw.default_t0();
      auto ls = lfun::lvalues_series(cusp(), tw, 11, t0, 1e-12);
      auto li = lfun::lvalues_integral(cusp(), tw, 11, t0, 1e-12);
      for (int s = 0; s < 11; ++s) {
        CAPTURE(g.to_string());
        CAPTURE(t0);
        CAPTURE(s + 1);
        CHECK(rel(ls[s].value, li[s].value) < 1e-9);
        CHECK(rel(ls[s].value, base[s].value) < 1e-11);
      }
    }
  }
}

TEST_CASE("weakly holomorphic L-values are t0-invariant within their error") {
  auto f = poincare::poincare_series(weight12(), 1, 0, 0, 120, TruncationParams{});
  auto tw = lfun::TwistSpec::from(GroupElement::S());
  auto ref = lfun::lvalues_series(f, tw, 11, 1.0, 1e-12);
  for (double t0 : {0.5, 2.0}) {
    auto ls = lfun::lvalues_series(f, tw, 11, t0, 1e-12);
    for (int s = 0; s < 11; ++s) {
      CAPTURE(s + 1);
      CHECK(std::abs(ls[s].value - ref[s].value) <= ls[s].err + ref[s].err);
      CHECK(rel(ls[s].value, ref[s].value) < 1e-5);
    }
  }
}

TEST_CASE("twist normalization and preconditions") {
  auto tw = lfun::TwistSpec::from(GroupElement{-2, 1, -3, 1});
  CHECK(tw.gamma.c == 3);
  CHECK(tw.gamma.d == -1);
  CHECK(tw.default_t0() == doctest::Approx(1.0 / 3));
  CHECK_THROWS_AS(lfun::TwistSpec::from(GroupElement::T()), Error);
  auto eis = AutomorphyData::make(GroupSpec::sl2z(), 4, Multiplier::trivial(), Representation::trivial());
  TruncationParams trunc;
  trunc.c_max = 100;
  auto e4 = poincare::poincare_series(eis, 0, 0, 0, 5, trunc);
  CHECK_THROWS_AS(lfun::lvalue_series(e4, lfun::TwistSpec::from(GroupElement::S()), 1, 1.0, 1e-12), Error);
  auto weak = poincare::poincare_series(weight12(), 1, 0, 0, 20, TruncationParams{});
  CHECK_THROWS_AS(lfun::lvalue_integral(weak, lfun::TwistSpec::from(GroupElement::S()), 2, 1.0, 1e-12), Error);
}

TEST_CASE("expansion length grows until L-values converge") {
  std::vector<lfun::TwistSpec> twists = {lfun::TwistSpec::from(GroupElement::S()),
                                         lfun::TwistSpec::from(GroupElement{1, 0, 4, 1})};
  auto f = lfun::series_for_lvalues(
      [](int64_t l_max) { return poincare::poincare_series(weight12(), -1, 0, 0, l_max, TruncationParams{}); }, twists,
      1e-12);
  for (const auto& tw : twists)
    for (const auto& v : lfun::lvalues_series(f, tw, 11, tw.default_t0(), 1e-12)) CHECK(v.converged);
}

TEST_CASE("unfolding value of the Petersson norm") {
  Complex a1 = cusp().at(1, 0);
  Complex norm = lfun::petersson_poincare(cusp(), -1, 0);
  CHECK(rel(norm, a1 * a1 * kDeltaNorm) < 1e-8);
  CHECK_THROWS_AS(lfun::petersson_poincare(cusp(), 1, 0), Error);
}

TEST_CASE("unfolding values are hermitian") {
  std::vector<FourierSeries> p;
  for (int64_t n : {-1, -2, -3}) p.push_back(poincare::poincare_series(weight12(), n, 0, 0, 4, TruncationParams{}));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      Complex a = lfun::petersson_poincare(p[i], -1 - j, 0);
      Complex b = lfun::petersson_poincare(p[j], -1 - i, 0);
      CHECK(rel(a, std::conj(b)) < 1e-9);
    }
}

TEST_CASE("pairing fitted on one entry predicts held-out entries") {
  eichler::PeriodOptions opt;
  auto gens = group::generators(weight12().group);
  std::vector<lfun::PeriodFeatures> feats;
  for (int64_t n : {-1, -2}) feats.push_back(lfun::period_features(weight12(), n, gens, opt));
  CHECK(feats[0].generators.size() == 1);
  CHECK(feats[0].converged);
  std::vector<FourierSeries> p;
  for (int64_t n : {-1, -2}) p.push_back(poincare::poincare_series(weight12(), n, 0, 0, 4, TruncationParams{}));
  auto gram = [&](int i, int j) { return lfun::petersson_poincare(p[i], -1 - j, 0); };
  std::vector<lfun::GramEntry> train = {{0, 0, gram(0, 0)}};
  auto pm = lfun::fit_pairing(feats, train, 10);
  CHECK(pm.rank == 1);
  CHECK(pm.residual < 1e-10);
  auto pc = lfun::pairing_constants(pm, weight12());
  double nu = lfun::gram_normalization(weight12());
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      Complex pred = lfun::predict_gram(pm, feats[i], feats[j]);
      CAPTURE(i);
      CAPTURE(j);
      CHECK(rel(pred, gram(i, j)) < 1e-4);
      CHECK(rel(lfun::gram_from_constants(pc, feats[i], feats[j]), nu * pred) < 1e-10);
    }
}
