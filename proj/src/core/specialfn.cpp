#include "mgrid/specialfn.hpp"

#include <cmath>
#include <string>

#include "bigfloat.hpp"

namespace mgrid {

void PrecisionContext::validate() const {
  require(mantissa_bits >= 24 && mantissa_bits <= 4096, ErrorCode::InvalidArgument,
          "mantissa_bits must lie in [24, 4096], got " + std::to_string(mantissa_bits));
  require(target_tol > 0 && std::isfinite(target_tol), ErrorCode::InvalidArgument,
          "target_tol must be positive");
}

namespace specialfn {
namespace {

using detail::BigComplex;
using detail::BigFloat;

double magnitude(double x) { return std::abs(x); }
double magnitude(const BigFloat& x) { return std::abs(x.to_double()); }

template <class R, class Make>
R bessel_series(int n, double x, bool modified, const PrecisionContext& ctx, Make make) {
  R half = make(x / 2);
  R q = half;
  q *= half;
  if (!modified) q = -q;
  R term = make(1.0);
  for (int i = 1; i <= n; ++i) {
    term *= half;
    term /= static_cast<double>(i);
  }
  R sum = term;
  const double rel = std::ldexp(1.0, -ctx.mantissa_bits - 2);
  const double h2 = (x / 2) * (x / 2);
  for (int t = 0;; ++t) {
    if (t > ctx.iteration_cap())
      fail(ErrorCode::NonConvergence, "Bessel series exceeded iteration cap at x=" + std::to_string(x));
    term *= q;
    term /= static_cast<double>(t + 1) * static_cast<double>(n + t + 1);
    sum += term;
    double r = h2 / (static_cast<double>(t + 2) * static_cast<double>(n + t + 2));
    if (r < 1) {
      double rest = magnitude(term) * r / (1 - r);
      // Relative stop: callers scale these values by large prefactors.
      if (rest <= std::max(rel, ctx.target_tol) * magnitude(sum)) return sum;
    }
  }
}

double bessel(int order, double x, bool modified, const PrecisionContext& ctx) {
  ctx.validate();
  require(order >= 0, ErrorCode::InvalidArgument, "Bessel order must be non-negative");
  require(x >= 0 && std::isfinite(x), ErrorCode::InvalidArgument, "Bessel argument must be finite and >= 0");
  if (x == 0) return order == 0 ? 1.0 : 0.0;
  bool fast = ctx.mantissa_bits <= 53 && (modified ? x < 600 : x <= 2);
  if (fast) return bessel_series<double>(order, x, modified, ctx, [](double v) { return v; });
  // Alternating J terms peak near e^x, so guard bits grow with x.
  long guard = 16 + (modified ? 0 : static_cast<long>(std::ceil(x * 1.4426950408889634)));
  mpfr_prec_t prec = ctx.mantissa_bits + guard;
  return bessel_series<BigFloat>(order, x, modified, ctx, [prec](double v) { return BigFloat(v, prec); })
      .to_double();
}

BigComplex gamma0_series(const BigComplex& z, const PrecisionContext& ctx) {
  mpfr_prec_t prec = z.prec();
  BigComplex mz = -z;
  BigComplex p(1.0, 0.0, prec);
  BigComplex sum(prec);
  BigFloat eps(std::ldexp(1.0, -static_cast<int>(prec)), prec);
  double az = std::hypot(z.re.to_double(), z.im.to_double());
  int cap = ctx.iteration_cap() + static_cast<int>(3 * az);
  for (int n = 1;; ++n) {
    if (n > cap) fail(ErrorCode::NonConvergence, "Gamma(0,z) series exceeded iteration cap");
    p *= mz;
    p /= static_cast<double>(n);
    BigComplex t = p;
    t /= static_cast<double>(n);
    sum += t;
    if (n > az && t.norm() <= eps * (abs(sum.re) + abs(sum.im) + BigFloat(1.0, prec))) break;
  }
  BigComplex r = -log(z) - sum;
  r.re -= detail::euler_gamma(prec);
  return r;
}

// E_1(z) by the even continued fraction, modified Lentz.
BigComplex gamma0_cf(const BigComplex& z, const PrecisionContext& ctx) {
  mpfr_prec_t prec = z.prec();
  BigComplex one(1.0, 0.0, prec);
  BigComplex b = z;
  b.re += 1.0;
  BigComplex c(1e300, 0.0, prec);
  BigComplex d = one / b;
  BigComplex h = d;
  BigFloat eps(std::ldexp(1.0, -static_cast<int>(prec) + 4), prec);
  for (int i = 1;; ++i) {
    if (i > ctx.iteration_cap()) fail(ErrorCode::NonConvergence, "Gamma(0,z) continued fraction exceeded iteration cap");
    double an = -static_cast<double>(i) * static_cast<double>(i);
    b.re += 2.0;
    BigComplex ad = d;
    ad *= an;
    d = one / (ad + b);
    BigComplex ac = one / c;
    ac *= an;
    c = b + ac;
    BigComplex del = c * d;
    h *= del;
    del.re += -1.0;
    if (del.norm() <= eps) break;
  }
  return h * exp(-z);
}

BigComplex gamma_upper_big(int s, const BigComplex& z, const PrecisionContext& ctx) {
  mpfr_prec_t prec = z.prec();
  BigComplex emz = exp(-z);
  if (s >= 1) {
    BigComplex g = emz;
    BigComplex zp(1.0, 0.0, prec);
    for (int j = 1; j < s; ++j) {
      zp *= z;
      g *= static_cast<double>(j);
      g += zp * emz;
    }
    return g;
  }
  double az = std::hypot(z.re.to_double(), z.im.to_double());
  BigComplex g = (az <= 8 || z.re.sign() < 0) ? gamma0_series(z, ctx) : gamma0_cf(z, ctx);
  BigComplex one(1.0, 0.0, prec);
  BigComplex zp = one;  // z^{j-1} for the current step
  BigComplex zinv = one / z;
  for (int j = 0; j > s; --j) {
    zp *= zinv;
    g -= zp * emz;
    g /= static_cast<double>(j - 1);
  }
  return g;
}

}  // namespace

double bessel_j(int order, double x, const PrecisionContext& ctx) { return bessel(order, x, false, ctx); }

double bessel_i(int order, double x, const PrecisionContext& ctx) { return bessel(order, x, true, ctx); }

Complex gamma_upper(int s, Complex z, const PrecisionContext& ctx) {
  ctx.validate();
  require(std::isfinite(z.real()) && std::isfinite(z.imag()), ErrorCode::InvalidArgument,
          "incomplete gamma argument must be finite");
  require(z != Complex(0, 0), ErrorCode::InvalidArgument, "incomplete gamma at z = 0 is not supported");
  double az = std::abs(z);
  long guard = 32 + static_cast<long>(std::abs(s)) * static_cast<long>(std::ceil(std::log2(az + 2)));
  if (z.real() < 0) guard += static_cast<long>(std::ceil(1.45 * az));
  mpfr_prec_t prec = ctx.mantissa_bits + guard;
  BigComplex bz(z.real(), z.imag() == 0 ? 0.0 : z.imag(), prec);
  BigComplex r = gamma_upper_big(s, bz, ctx);
  return {r.re.to_double(), r.im.to_double()};
}

double h_function(double w, int k, const PrecisionContext& ctx) {
  ctx.validate();
  require(std::isfinite(w), ErrorCode::InvalidArgument, "h_function argument must be finite");
  require(w < 0, ErrorCode::InvalidArgument, "h_function requires w < 0");
  require(k >= 0, ErrorCode::InvalidArgument, "h_function requires k >= 0");
  // e^{-w} Gamma(k+1, -2w) = k! e^{w} sum_{j<=k} (-2w)^j / j!, all terms positive.
  mpfr_prec_t prec = ctx.mantissa_bits + 16;
  BigFloat x(-2 * w, prec);
  BigFloat term(1.0, prec);
  BigFloat sum(1.0, prec);
  for (int j = 1; j <= k; ++j) {
    term = term * x / static_cast<double>(j);
    sum += term;
  }
  for (int j = 2; j <= k; ++j) sum *= static_cast<double>(j);
  return (sum * detail::exp(BigFloat(w, prec))).to_double();
}

Complex compensated_sum(std::span<const Complex> terms) {
  CompensatedSum acc;
  for (Complex t : terms) acc.add(t);
  return acc.value();
}

}  // namespace specialfn
}  // namespace mgrid
