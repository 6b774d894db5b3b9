#pragma once

#include <compare>
#include <cstdint>
#include <map>

#include "mgrid/automorphy.hpp"
#include "mgrid/specialfn.hpp"

namespace mgrid {

/// Truncation of the c-sums behind every Poincare coefficient.
struct TruncationParams {
  int64_t c_max = 5000;
  double tail_tol = 1e-8;
  PrecisionContext ctx{113, 1e-15};
  bool allow_slow_convergence = false;

  void validate(int weight) const;
};

struct SeriesKey {
  int64_t l = 0;
  int j = 0;
  auto operator<=>(const SeriesKey&) const = default;
};

struct Coefficient {
  Complex value{};
  double tail_bound = 0;
};

/// Truncated q-expansion sum a(l, j) e^{2 pi i (l + kappa_j) tau / lambda}, components j from 0.
class FourierSeries {
 public:
  FourierSeries() = default;
  explicit FourierSeries(AutomorphyData data) : data_(std::move(data)) {}

  const AutomorphyData& data() const { return data_; }
  int weight() const { return data_.weight; }
  int dim() const { return data_.dim(); }

  void set(int64_t l, int j, Coefficient c) { coeffs_[{l, j}] = c; }
  void add(int64_t l, int j, Complex v, double bound = 0);
  Complex at(int64_t l, int j) const;
  const Coefficient* find(int64_t l, int j) const;
  const std::map<SeriesKey, Coefficient>& entries() const { return coeffs_; }

  /// (l + kappa_j) / lambda.
  double exponent(int64_t l, int j) const { return (static_cast<double>(l) + data_.kappa[j]) / data_.lambda; }
  Complex eval(Complex tau, int j) const;
  /// Sum over stored entries with negative exponent.
  Complex principal_part(Complex tau, int j) const;

  int64_t l_max() const;
  /// All tail bounds within tail_tol * max(1, |value|).
  bool converged(double tail_tol) const;

  FourierSeries& scale(Complex s);
  /// Adds s * other; automorphy data must agree.
  FourierSeries& add_scaled(const FourierSeries& other, Complex s);

  // Provenance of a Poincare series; c_used is the largest c summed.
  int64_t n = 0;
  int alpha = 0;
  int64_t c_used = 0;
  TruncationParams truncation;

 private:
  AutomorphyData data_;
  std::map<SeriesKey, Coefficient> coeffs_;
};

}  // namespace mgrid
