#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <span>

#include "mgrid/error.hpp"

namespace mgrid {

using Complex = std::complex<double>;

/// Working precision shared by the special-function routines.
struct PrecisionContext {
  int mantissa_bits = 53;
  double target_tol = 1e-15;

  void validate() const;
  int iteration_cap() const { return 10 * mantissa_bits; }
};

namespace specialfn {

/// J_order(x) for integer order >= 0 and x >= 0.
double bessel_j(int order, double x, const PrecisionContext& ctx);

/// I_order(x) for integer order >= 0 and x >= 0.
double bessel_i(int order, double x, const PrecisionContext& ctx);

/// Upper incomplete gamma Gamma(s, z) for integer s and z != 0, principal branch.
Complex gamma_upper(int s, Complex z, const PrecisionContext& ctx);

/// e^{-w} Gamma(k+1, -2w) for w < 0.
double h_function(double w, int k, const PrecisionContext& ctx);

/// Neumaier-compensated accumulator, applied to real and imaginary parts separately.
class CompensatedSum {
 public:
  void add(Complex x) {
    add_part(sum_re_, comp_re_, x.real());
    add_part(sum_im_, comp_im_, x.imag());
  }
  CompensatedSum& operator+=(Complex x) {
    add(x);
    return *this;
  }
  void merge(const CompensatedSum& other) {
    add(Complex(other.sum_re_, other.sum_im_));
    add(Complex(other.comp_re_, other.comp_im_));
  }
  Complex value() const { return {sum_re_ + comp_re_, sum_im_ + comp_im_}; }

 private:
  static void add_part(double& sum, double& comp, double x) {
    double t = sum + x;
    if (std::abs(sum) >= std::abs(x))
      comp += (sum - t) + x;
    else
      comp += (x - t) + sum;
    sum = t;
  }
  double sum_re_ = 0, comp_re_ = 0, sum_im_ = 0, comp_im_ = 0;
};

Complex compensated_sum(std::span<const Complex> terms);

}  // namespace specialfn
}  // namespace mgrid
