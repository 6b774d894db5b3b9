#include "mgrid/series.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace mgrid {

void TruncationParams::validate(int weight) const {
  ctx.validate();
  require(c_max >= 1, ErrorCode::InvalidArgument, "c_max must be >= 1");
  require(tail_tol > 0 && std::isfinite(tail_tol), ErrorCode::InvalidArgument, "tail_tol must be positive");
  require(weight >= 3, ErrorCode::InvalidArgument, "Poincare series need weight >= 3, got " + std::to_string(weight));
  require(weight > 3 || allow_slow_convergence, ErrorCode::Precondition,
          "weight 3 converges slowly; enable allow_slow_convergence to proceed");
}

void FourierSeries::add(int64_t l, int j, Complex v, double bound) {
  auto& c = coeffs_[{l, j}];
  c.value += v;
  c.tail_bound += bound;
}

Complex FourierSeries::at(int64_t l, int j) const {
  auto it = coeffs_.find({l, j});
  return it == coeffs_.end() ? Complex{} : it->second.value;
}

const Coefficient* FourierSeries::find(int64_t l, int j) const {
  auto it = coeffs_.find({l, j});
  return it == coeffs_.end() ? nullptr : &it->second;
}

namespace {

Complex qpower(double x, Complex tau) {
  // e^{2 pi i x tau}
  double mag = std::exp(-2 * std::numbers::pi * x * tau.imag());
  return mag * turn_to_complex(x * tau.real());
}

}  // namespace

Complex FourierSeries::eval(Complex tau, int j) const {
  specialfn::CompensatedSum acc;
  for (const auto& [key, c] : coeffs_)
    if (key.j == j) acc.add(c.value * qpower(exponent(key.l, j), tau));
  return acc.value();
}

Complex FourierSeries::principal_part(Complex tau, int j) const {
  specialfn::CompensatedSum acc;
  for (const auto& [key, c] : coeffs_)
    if (key.j == j && exponent(key.l, j) < 0) acc.add(c.value * qpower(exponent(key.l, j), tau));
  return acc.value();
}

int64_t FourierSeries::l_max() const {
  int64_t m = INT64_MIN;
  for (const auto& [key, c] : coeffs_) m = std::max(m, key.l);
  return m;
}

bool FourierSeries::converged(double tail_tol) const {
  for (const auto& [key, c] : coeffs_)
    if (c.tail_bound > tail_tol * std::max(1.0, std::abs(c.value))) return false;
  return true;
}

FourierSeries& FourierSeries::scale(Complex s) {
  for (auto& [key, c] : coeffs_) {
    c.value *= s;
    c.tail_bound *= std::abs(s);
  }
  return *this;
}

FourierSeries& FourierSeries::add_scaled(const FourierSeries& other, Complex s) {
  require(other.weight() == weight() && other.data().kappa == data().kappa, ErrorCode::InvalidArgument,
          "cannot combine series with different automorphy data");
  for (const auto& [key, c] : other.entries()) add(key.l, key.j, s * c.value, std::abs(s) * c.tail_bound);
  return *this;
}

}  // namespace mgrid
