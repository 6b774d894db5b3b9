#include "mgrid/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

namespace mgrid::quadrature {
namespace {

constexpr int kNodes = 20;

struct Rule {
  std::array<double, kNodes> x{}, w{};
};

// Gauss-Legendre nodes on [-1, 1] by Newton iteration on P_n.
Rule make_rule() {
  Rule r;
  for (int i = 0; i < kNodes; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (kNodes + 0.5));
    double dp = 0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1, p1 = x;
      for (int n = 2; n <= kNodes; ++n) {
        double p2 = ((2 * n - 1) * x * p1 - (n - 1) * p0) / n;
        p0 = p1;
        p1 = p2;
      }
      dp = kNodes * (x * p1 - p0) / (x * x - 1);
      double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    r.x[i] = x;
    r.w[i] = 2 / ((1 - x * x) * dp * dp);
  }
  return r;
}

const Rule& rule() {
  static const Rule r = make_rule();
  return r;
}

class Panel {
 public:
  Panel(const Integrand& f, std::size_t width) : f_(f), buf_(width), width_(width) {}

  void apply(double a, double b, std::vector<Complex>& out, int& evals) {
    std::fill(out.begin(), out.end(), Complex{});
    const auto& r = rule();
    double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    for (int i = 0; i < kNodes; ++i) {
      f_(mid + half * r.x[i], buf_);
      for (std::size_t m = 0; m < width_; ++m) out[m] += r.w[i] * half * buf_[m];
    }
    evals += kNodes;
  }

 private:
  const Integrand& f_;
  std::vector<Complex> buf_;
  std::size_t width_;
};

double max_diff(const std::vector<Complex>& x, const std::vector<Complex>& y) {
  double m = 0;
  for (std::size_t i = 0; i < x.size(); ++i) m = std::max(m, std::abs(x[i] - y[i]));
  return m;
}

double max_abs(std::span<const Complex> x) {
  double m = 0;
  for (auto v : x) m = std::max(m, std::abs(v));
  return m;
}

}  // namespace

Result integrate(const Integrand& f, std::size_t width, double a, double b, double abs_tol) {
  require(std::isfinite(a) && std::isfinite(b) && b >= a, ErrorCode::InvalidArgument, "bad integration interval");
  require(abs_tol > 0, ErrorCode::InvalidArgument, "integration tolerance must be positive");
  Result res;
  res.value.assign(width, Complex{});
  if (b == a) return res;

  Panel panel(f, width);
  struct Item {
    double a, b;
    std::vector<Complex> whole;
  };
  constexpr int kInitial = 8;
  const double total = b - a;
  std::vector<Item> stack;
  for (int i = kInitial - 1; i >= 0; --i) {
    double lo = a + total * i / kInitial, hi = i + 1 == kInitial ? b : a + total * (i + 1) / kInitial;
    Item it{lo, hi, std::vector<Complex>(width)};
    panel.apply(lo, hi, it.whole, res.evaluations);
    stack.push_back(std::move(it));
  }
  std::vector<Complex> left(width), right(width), both(width);
  // Left-to-right processing keeps the accumulation order deterministic.
  while (!stack.empty()) {
    Item it = std::move(stack.back());
    stack.pop_back();
    double mid = 0.5 * (it.a + it.b);
    panel.apply(it.a, mid, left, res.evaluations);
    panel.apply(mid, it.b, right, res.evaluations);
    for (std::size_t m = 0; m < width; ++m) both[m] = left[m] + right[m];
    double err = max_diff(both, it.whole);
    // Rounding floor: a panel already at working precision cannot improve by splitting.
    double share = std::max(abs_tol * (it.b - it.a) / total, 64 * 2.2e-16 * max_abs(both));
    if (err <= share || (it.b - it.a) < 1e-13 * total) {
      if (err > share) fail(ErrorCode::NonConvergence, "adaptive quadrature did not converge");
      for (std::size_t m = 0; m < width; ++m) res.value[m] += both[m];
      res.error += err;
      continue;
    }
    Item r{mid, it.b, right};
    Item l{it.a, mid, left};
    stack.push_back(std::move(r));
    stack.push_back(std::move(l));
  }
  return res;
}

Result integrate_to_infinity(const Integrand& f, std::size_t width, double a, double rate, double abs_tol) {
  require(rate > 0, ErrorCode::InvalidArgument, "decay rate must be positive");
  std::vector<Complex> buf(width);
  auto size_at = [&](double t) {
    f(t, buf);
    return max_abs(buf);
  };
  double len = std::max(1.0, 1.0 / rate);
  double tail = 0;
  for (int it = 0;; ++it) {
    require(it < 60, ErrorCode::NonConvergence, "integrand does not decay");
    double b = a + len;
    tail = std::max(size_at(b), size_at(b + 0.5 / rate)) / rate;
    if (tail <= 1e-3 * abs_tol) break;
    len *= 1.5;
  }
  Result res = integrate(f, width, a, a + len, 0.5 * abs_tol);
  res.error += tail;
  return res;
}

}  // namespace mgrid::quadrature
