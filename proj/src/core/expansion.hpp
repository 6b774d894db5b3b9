#pragma once

#include <cmath>
#include <numbers>
#include <vector>

#include "mgrid/series.hpp"

namespace mgrid::detail {

/// Fast evaluation of one component of a q-expansion by stepping through powers of
/// q = e^{2 pi i tau / lambda}; optionally restricted to the terms with positive exponent.
class ExpansionEvaluator {
 public:
  ExpansionEvaluator(const FourierSeries& f, int j, bool regular_only) : lambda_(f.data().lambda) {
    kappa_ = f.data().kappa[j];
    for (const auto& [key, c] : f.entries()) {
      if (key.j != j || c.value == Complex{}) continue;
      if (regular_only && f.exponent(key.l, j) <= 0) continue;
      l_.push_back(key.l);
      a_.push_back(c.value);
    }
  }

  bool empty() const { return l_.empty(); }
  /// Smallest positive exponent among the stored terms (0 if none).
  double min_positive_exponent() const {
    for (std::size_t i = 0; i < l_.size(); ++i) {
      double x = (static_cast<double>(l_[i]) + kappa_) / lambda_;
      if (x > 0) return x;
    }
    return 0;
  }

  Complex operator()(Complex tau) const {
    if (l_.empty()) return {};
    const double two_pi = 2 * std::numbers::pi;
    auto expo = [&](double x) { return std::exp(Complex(-two_pi * x * tau.imag(), two_pi * x * tau.real())); };
    Complex q = expo(1.0 / lambda_);
    Complex p = expo((static_cast<double>(l_[0]) + kappa_) / lambda_);
    Complex acc = a_[0] * p;
    for (std::size_t i = 1; i < l_.size(); ++i) {
      int64_t step = l_[i] - l_[i - 1];
      if (step == 1)
        p *= q;
      else
        p = expo((static_cast<double>(l_[i]) + kappa_) / lambda_);
      if (p == Complex{}) break;
      acc += a_[i] * p;
    }
    return acc;
  }

 private:
  double lambda_, kappa_ = 0;
  std::vector<int64_t> l_;
  std::vector<Complex> a_;
};

}  // namespace mgrid::detail
