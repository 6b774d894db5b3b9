#pragma once

#include <mpfr.h>

#include <utility>

namespace mgrid::detail {

// RAII wrapper over mpfr_t; all results take the precision of the left operand.
class BigFloat {
 public:
  explicit BigFloat(mpfr_prec_t prec) { mpfr_init2(v_, prec); mpfr_set_zero(v_, 1); }
  BigFloat(double x, mpfr_prec_t prec) { mpfr_init2(v_, prec); mpfr_set_d(v_, x, MPFR_RNDN); }
  BigFloat(const BigFloat& o) { mpfr_init2(v_, mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, MPFR_RNDN); }
  BigFloat(BigFloat&& o) noexcept {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_swap(v_, o.v_);
  }
  BigFloat& operator=(const BigFloat& o) {
    if (this != &o) mpfr_set(v_, o.v_, MPFR_RNDN);
    return *this;
  }
  BigFloat& operator=(BigFloat&& o) noexcept {
    mpfr_swap(v_, o.v_);
    return *this;
  }
  BigFloat& operator=(double x) {
    mpfr_set_d(v_, x, MPFR_RNDN);
    return *this;
  }
  ~BigFloat() { mpfr_clear(v_); }

  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }
  mpfr_prec_t prec() const { return mpfr_get_prec(v_); }
  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

  BigFloat& operator+=(const BigFloat& o) { mpfr_add(v_, v_, o.v_, MPFR_RNDN); return *this; }
  BigFloat& operator-=(const BigFloat& o) { mpfr_sub(v_, v_, o.v_, MPFR_RNDN); return *this; }
  BigFloat& operator*=(const BigFloat& o) { mpfr_mul(v_, v_, o.v_, MPFR_RNDN); return *this; }
  BigFloat& operator/=(const BigFloat& o) { mpfr_div(v_, v_, o.v_, MPFR_RNDN); return *this; }
  BigFloat& operator*=(double x) { mpfr_mul_d(v_, v_, x, MPFR_RNDN); return *this; }
  BigFloat& operator/=(double x) { mpfr_div_d(v_, v_, x, MPFR_RNDN); return *this; }
  BigFloat& operator+=(double x) { mpfr_add_d(v_, v_, x, MPFR_RNDN); return *this; }

  friend BigFloat operator+(BigFloat a, const BigFloat& b) { return a += b; }
  friend BigFloat operator-(BigFloat a, const BigFloat& b) { return a -= b; }
  friend BigFloat operator*(BigFloat a, const BigFloat& b) { return a *= b; }
  friend BigFloat operator/(BigFloat a, const BigFloat& b) { return a /= b; }
  friend BigFloat operator*(BigFloat a, double b) { return a *= b; }
  friend BigFloat operator/(BigFloat a, double b) { return a /= b; }
  BigFloat operator-() const {
    BigFloat r(*this);
    mpfr_neg(r.v_, r.v_, MPFR_RNDN);
    return r;
  }

  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  int sign() const { return mpfr_sgn(v_); }
  // log2 of |x|, or a large negative number for zero.
  long exponent() const { return is_zero() ? -(1L << 40) : mpfr_get_exp(v_); }

 private:
  mpfr_t v_;
};

inline BigFloat abs(const BigFloat& x) { BigFloat r(x); mpfr_abs(r.get(), r.get(), MPFR_RNDN); return r; }
inline BigFloat exp(const BigFloat& x) { BigFloat r(x.prec()); mpfr_exp(r.get(), x.get(), MPFR_RNDN); return r; }
inline BigFloat log(const BigFloat& x) { BigFloat r(x.prec()); mpfr_log(r.get(), x.get(), MPFR_RNDN); return r; }
inline BigFloat sqrt(const BigFloat& x) { BigFloat r(x.prec()); mpfr_sqrt(r.get(), x.get(), MPFR_RNDN); return r; }
inline BigFloat atan2(const BigFloat& y, const BigFloat& x) {
  BigFloat r(y.prec());
  mpfr_atan2(r.get(), y.get(), x.get(), MPFR_RNDN);
  return r;
}
inline BigFloat hypot(const BigFloat& x, const BigFloat& y) {
  BigFloat r(x.prec());
  mpfr_hypot(r.get(), x.get(), y.get(), MPFR_RNDN);
  return r;
}
inline BigFloat euler_gamma(mpfr_prec_t prec) { BigFloat r(prec); mpfr_const_euler(r.get(), MPFR_RNDN); return r; }
inline BigFloat pi(mpfr_prec_t prec) { BigFloat r(prec); mpfr_const_pi(r.get(), MPFR_RNDN); return r; }
inline bool operator<(const BigFloat& a, const BigFloat& b) { return mpfr_less_p(a.get(), b.get()) != 0; }
inline bool operator<=(const BigFloat& a, const BigFloat& b) { return mpfr_lessequal_p(a.get(), b.get()) != 0; }

struct BigComplex {
  BigFloat re, im;
  explicit BigComplex(mpfr_prec_t prec) : re(prec), im(prec) {}
  BigComplex(double r, double i, mpfr_prec_t prec) : re(r, prec), im(i, prec) {}
  BigComplex(BigFloat r, BigFloat i) : re(std::move(r)), im(std::move(i)) {}

  mpfr_prec_t prec() const { return re.prec(); }

  BigComplex& operator+=(const BigComplex& o) { re += o.re; im += o.im; return *this; }
  BigComplex& operator-=(const BigComplex& o) { re -= o.re; im -= o.im; return *this; }
  BigComplex& operator*=(const BigComplex& o) {
    BigFloat r = re * o.re - im * o.im;
    BigFloat i = re * o.im + im * o.re;
    re = std::move(r);
    im = std::move(i);
    return *this;
  }
  BigComplex& operator/=(const BigComplex& o) {
    BigFloat den = o.re * o.re + o.im * o.im;
    BigFloat r = (re * o.re + im * o.im) / den;
    BigFloat i = (im * o.re - re * o.im) / den;
    re = std::move(r);
    im = std::move(i);
    return *this;
  }
  BigComplex& operator*=(const BigFloat& x) { re *= x; im *= x; return *this; }
  BigComplex& operator*=(double x) { re *= x; im *= x; return *this; }
  BigComplex& operator/=(double x) { re /= x; im /= x; return *this; }

  friend BigComplex operator+(BigComplex a, const BigComplex& b) { return a += b; }
  friend BigComplex operator-(BigComplex a, const BigComplex& b) { return a -= b; }
  friend BigComplex operator*(BigComplex a, const BigComplex& b) { return a *= b; }
  friend BigComplex operator/(BigComplex a, const BigComplex& b) { return a /= b; }
  BigComplex operator-() const { return {-re, -im}; }

  BigFloat norm() const { return hypot(re, im); }
};

inline BigComplex exp(const BigComplex& z) {
  BigFloat m = exp(z.re);
  BigFloat c(z.prec()), s(z.prec());
  mpfr_sin_cos(s.get(), c.get(), z.im.get(), MPFR_RNDN);
  return {m * c, m * s};
}

// Principal logarithm, arg in (-pi, pi]; a negative zero imaginary part counts as +0.
inline BigComplex log(const BigComplex& z) {
  BigFloat im = z.im;
  if (im.is_zero()) im = 0.0;
  return {log(z.norm()), atan2(im, z.re)};
}

}  // namespace mgrid::detail
