#pragma once

#include <cstdint>
#include <vector>

#include "mgrid/series.hpp"

namespace mgrid::poincare {

struct CoefficientResult {
  Complex value{};
  double tail_bound = 0;
  int64_t c_used = 0;
  bool converged = false;
};

/// a_{n,alpha}(l, j): the c-sum of the Poincare series, without the leading term at (-n, alpha).
CoefficientResult poincare_coefficient(const AutomorphyData& data, int64_t n, int alpha, int64_t l, int j,
                                       const TruncationParams& trunc);

/// Several a_{n,alpha}(l, j) sharing one pass over c.
std::vector<CoefficientResult> poincare_coefficients(const AutomorphyData& data, int64_t n, int alpha,
                                                     const std::vector<std::pair<int64_t, int>>& wanted,
                                                     const TruncationParams& trunc);

/// Expansion of P_{n,alpha} for l in [l_min, l_max] and every component, including the
/// leading term 1 at (-n, alpha). Entries with l + kappa_j <= 0 other than the leading term are omitted.
FourierSeries poincare_series(const AutomorphyData& data, int64_t n, int alpha, int64_t l_min, int64_t l_max,
                              const TruncationParams& trunc);

/// Sum over C+(c) of chi^{-1} rho(gamma^{-1})_{j,alpha} e^{2 pi i ((-n+kappa_alpha) a + (l+kappa_j) d) / (c lambda)}.
Complex kloosterman_layer(const AutomorphyData& data, int64_t n, int alpha, int64_t l, int j, int64_t c);

/// Constant term of the holomorphic Eichler integral, per component (zero where kappa_j != 0).
/// `tail_bound`, when given, receives a bound on the truncated c-range common to all components.
std::vector<Complex> constant_term_cf(const FourierSeries& f, const TruncationParams& trunc,
                                      double* tail_bound = nullptr);

/// Number of worker threads: MGRID_THREADS if set, else hardware concurrency.
unsigned worker_threads();

}  // namespace mgrid::poincare
