#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

namespace mgrid {

/// Integer matrix (a b; c d) with determinant one.
struct GroupElement {
  int64_t a = 1, b = 0, c = 0, d = 1;

  static GroupElement identity() { return {1, 0, 0, 1}; }
  static GroupElement S() { return {0, -1, 1, 0}; }
  static GroupElement T(int64_t m = 1) { return {1, m, 0, 1}; }
  static GroupElement minus_identity() { return {-1, 0, 0, -1}; }

  bool is_unimodular() const;
  GroupElement inverse() const { return {d, -b, -c, a}; }
  GroupElement operator-() const { return {-a, -b, -c, -d}; }
  friend GroupElement operator*(const GroupElement& x, const GroupElement& y);
  friend bool operator==(const GroupElement&, const GroupElement&) = default;
  std::string to_string() const;
};

/// Gamma_0(N) together with the cusp width at infinity and a generating set.
struct GroupSpec {
  int64_t level = 1;
  double lambda = 1.0;
  std::vector<GroupElement> generators;

  static GroupSpec sl2z();
  /// Gamma_0(level); generators must be supplied unless level == 1.
  static GroupSpec gamma0(int64_t level, std::vector<GroupElement> generators = {});

  bool contains(const GroupElement& g) const { return g.is_unimodular() && g.c % level == 0; }
  void validate() const;
};

namespace group {

/// Coset representatives of Gamma_infty \ Gamma / Gamma_infty with lower-left entry c > 0,
/// as matrices with d in (-c lambda, 0] and a in [0, c lambda), in order of increasing -d.
std::vector<GroupElement> enumerate_cplus(const GroupSpec& spec, int64_t c);

/// (a tau + b) / (c tau + d).
std::complex<double> moebius(const GroupElement& g, std::complex<double> tau);

/// Generating set: [S, T] for SL_2(Z), otherwise the validated caller-supplied list.
std::vector<GroupElement> generators(const GroupSpec& spec);

int64_t gcd(int64_t a, int64_t b);
/// Inverse of x modulo m (m >= 1, gcd(x, m) = 1), in [0, m).
int64_t inverse_mod(int64_t x, int64_t m);

/// Word in S and powers of T with g = sign * S^{e_0} T^{m_1} S T^{m_2} ..., see decompose().
struct Word {
  int sign = 1;
  // Sequence of letters; 0 stands for S, any other value m stands for T^m.
  std::vector<int64_t> letters;
  static constexpr int64_t kS = 0;
};

/// Writes an element of SL_2(Z) as +-(product of S and T^m).
Word decompose(const GroupElement& g);

}  // namespace group
}  // namespace mgrid
