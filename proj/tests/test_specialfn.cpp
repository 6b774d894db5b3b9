#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "mgrid/specialfn.hpp"

using namespace mgrid;

namespace {

const PrecisionContext kCtx{113, 1e-15};

// Trapezoid rule on a periodic integrand over [0, pi]; spectrally accurate here.
template <class F>
double periodic_mean(F f, int m = 400) {
  double s = 0.5 * (f(0.0) + f(std::numbers::pi));
  for (int i = 1; i < m; ++i) s += f(std::numbers::pi * i / m);
  return s / m;
}

double rel(Complex a, Complex b) { return std::abs(a - b) / std::max(1e-300, std::abs(b)); }

}  // namespace

TEST_CASE("bessel J matches its integral representation") {
  for (int n : {0, 1, 3, 9, 11}) {
    for (double x : {0.25, 1.0, 7.5, 20.0, 60.0}) {
      double ref = periodic_mean([&](double t) { return std::cos(n * t - x * std::sin(t)); });
      CHECK(specialfn::bessel_j(n, x, kCtx) == doctest::Approx(ref).epsilon(1e-12).scale(1.0));
    }
  }
}

TEST_CASE("bessel I matches its integral representation") {
  for (int n : {0, 1, 3, 9, 11}) {
    for (double x : {0.25, 1.0, 7.5, 20.0}) {
      double ref = periodic_mean([&](double t) { return std::exp(x * std::cos(t)) * std::cos(n * t); });
      // The trapezoid sum carries absolute rounding of order e^x eps.
      CHECK(std::abs(specialfn::bessel_i(n, x, kCtx) - ref) < 1e-11 * ref + 1e-15 * std::exp(x));
    }
  }
}

TEST_CASE("bessel values from an arbitrary-precision reference") {
  CHECK(rel(specialfn::bessel_j(11, 20.0, kCtx), 0.0613563033759509255533) < 1e-13);
  CHECK(rel(specialfn::bessel_i(11, 20.0, kCtx), 2117191.37177305604443849) < 1e-13);
  CHECK(rel(specialfn::bessel_j(0, 0.5, kCtx), 0.93846980724081290422840) < 1e-14);
  CHECK(rel(specialfn::bessel_i(3, 0.01, kCtx), 2.08334635419921892531688e-8) < 1e-13);
  CHECK(rel(specialfn::bessel_i(11, 0.25, kCtx), 2.92024900308519858039014e-18) < 1e-13);
  CHECK(rel(specialfn::bessel_i(11, 1.0, kCtx), 1.24897830849249126135601e-11) < 1e-13);
  CHECK(specialfn::bessel_j(4, 0.0, kCtx) == 0.0);
  CHECK(specialfn::bessel_i(0, 0.0, kCtx) == 1.0);
}

TEST_CASE("incomplete gamma reference values") {
  struct Case {
    int s;
    Complex z, v;
  };
  const std::vector<Case> cases = {
      {0, {1, 0}, {0.21938393439552027, 0}},
      {0, {0.5, 2}, {-0.23812693789267187, -0.025877115590053965}},
      {0, {-3, 1}, {-7.8231346760015792, 2.9559271304025124}},
      {-2, {1, 1}, {-0.049550715360612526, -0.01227229860640142}},
      {3, {2, -5}, {-4.4691311826177111, 0.79495925831451985}},
      {12, {0, 7}, {-964371300.34195709, 213391280.61609427}},
      {-5, {0.1, 0.1}, {-1916.4889899490535, 2462.2980747300668}},
  };
  for (const auto& c : cases) {
    CAPTURE(c.s);
    CAPTURE(c.z);
    CHECK(rel(specialfn::gamma_upper(c.s, c.z, kCtx), c.v) < 1e-12);
  }
}

TEST_CASE("incomplete gamma recurrence and special cases") {
  for (Complex z : {Complex(0.3, 0.1), Complex(4, -2), Complex(-1.5, 0.5), Complex(0, 12)}) {
    CHECK(rel(specialfn::gamma_upper(1, z, kCtx), std::exp(-z)) < 1e-13);
    for (int s = -4; s < 8; ++s) {
      Complex lhs = specialfn::gamma_upper(s + 1, z, kCtx);
      Complex rhs = double(s) * specialfn::gamma_upper(s, z, kCtx) + std::pow(z, s) * std::exp(-z);
      CHECK(rel(lhs, rhs) < 1e-11);
    }
  }
}

TEST_CASE("h function is e^{-w} Gamma(k+1, -2w)") {
  for (int k : {2, 10}) {
    for (double w : {-0.05, -1.0, -6.0}) {
      Complex ref = std::exp(-w) * specialfn::gamma_upper(k + 1, Complex(-2 * w, 0), kCtx);
      CHECK(rel(specialfn::h_function(w, k, kCtx), ref) < 1e-13);
    }
  }
}

TEST_CASE("compensated summation recovers cancelled terms") {
  std::vector<Complex> terms = {{1, 0}, {1e100, 1e100}, {1, 1}, {-1e100, -1e100}};
  Complex s = specialfn::compensated_sum(terms);
  CHECK(s.real() == 2.0);
  CHECK(s.imag() == 1.0);
  specialfn::CompensatedSum a, b;
  a += Complex(1e16, 0);
  a += Complex(1, 0);
  b += Complex(-1e16, 0);
  b += Complex(1, 0);
  a.merge(b);
  CHECK(a.value().real() == 2.0);
}

TEST_CASE("precision context validation") {
  PrecisionContext bad{8, 1e-15};
  CHECK_THROWS_AS(bad.validate(), Error);
  CHECK_NOTHROW(kCtx.validate());
}
