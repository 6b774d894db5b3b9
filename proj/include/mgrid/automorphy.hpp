#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "mgrid/group.hpp"

namespace mgrid {

using Complex = std::complex<double>;

/// Root of unity e^{2 pi i t} with t reduced into [0, 1).
Complex turn_to_complex(double turns);

/// Scalar multiplier system: trivial, powers of the eta multiplier, or Dirichlet characters on d.
class Multiplier {
 public:
  enum class Kind { Trivial, EtaPower, Dirichlet };

  static Multiplier trivial() { return Multiplier(); }
  /// v_eta^r; r must be even.
  static Multiplier eta_power(int r);
  /// chi(gamma) = psi(d mod modulus); `turns[i]` is the value on the i-th unit mod modulus
  /// (units in ascending order).
  static Multiplier dirichlet(int64_t modulus, std::vector<double> turns);
  /// "trivial", "eta:r", or "dirichlet:N:t1,t2,..." with turns as decimals or p/q.
  static Multiplier parse(std::string_view text);

  Kind kind() const { return kind_; }
  int eta_exponent() const { return eta_r_; }
  int64_t modulus() const { return modulus_; }

  /// Argument of chi(gamma) in turns, reduced into [0, 1).
  double turns(const GroupElement& g) const;
  Complex operator()(const GroupElement& g) const { return turn_to_complex(turns(g)); }
  Multiplier conjugate() const;
  std::string to_string() const;

 private:
  Kind kind_ = Kind::Trivial;
  int eta_r_ = 0;
  int64_t modulus_ = 1;
  std::vector<double> unit_turns_;  // indexed by residue, NaN on non-units
};

/// 12 c s(h, c) for gcd(h, c) = 1, c >= 1 (an integer).
int64_t dedekind_sum12(int64_t h, int64_t c);

/// Exponent e in v_eta(g)^2 = e^{2 pi i e / 12}, in [0, 12).
int eta_square_exponent(const GroupElement& g);

/// Finite-dimensional unitary representation with rho(T) diagonal.
class Representation {
 public:
  /// One-dimensional trivial representation.
  static Representation trivial() { return diagonal({Multiplier::trivial()}); }
  static Representation diagonal(std::vector<Multiplier> components);
  /// Representation of SL_2(Z) from the images of S and T (row-major p x p, rho(T) diagonal).
  static Representation from_generators(int p, std::vector<Complex> rho_s, std::vector<Complex> rho_t);
  /// "diag(m1,m2,...)" with multiplier syntax as in Multiplier::parse, or "trivial".
  static Representation parse(std::string_view text);

  int dim() const { return dim_; }
  bool is_diagonal() const { return generators_.empty(); }
  const std::vector<Multiplier>& components() const { return components_; }

  /// rho(g) as a row-major p x p matrix.
  std::vector<Complex> eval(const GroupElement& g) const;
  /// Turns of the diagonal entries of rho(T).
  std::vector<double> t_turns() const;
  Representation conjugate() const;
  std::string to_string() const;

 private:
  int dim_ = 1;
  std::vector<Multiplier> components_;
  std::vector<Complex> generators_;  // rho(S) followed by rho(T) for non-diagonal representations
  std::vector<double> t_turns_;
};

/// kappa_j in [0, 1) with chi(T) rho_jj(T) = e^{2 pi i kappa_j}.
std::vector<double> kappa_vector(const Multiplier& chi, const Representation& rho);

/// Automorphy data of weight K: (chi, rho, kappa, lambda) on a group.
struct AutomorphyData {
  GroupSpec group;
  int weight = 0;
  Multiplier chi;
  Representation rho = Representation::trivial();
  std::vector<double> kappa;
  double lambda = 1.0;

  /// Validates that chi(-I) = (-1)^weight and rho(-I) = I, then computes kappa.
  static AutomorphyData make(GroupSpec group, int weight, Multiplier chi, Representation rho);

  int dim() const { return rho.dim(); }
  /// chi(g)^{-1} rho(g^{-1})_{j, alpha}.
  Complex inverse_factor(const GroupElement& g, int j, int alpha) const;
  /// Conjugate data (chi-bar, rho-bar, kappa') with the given weight.
  AutomorphyData conjugate(int new_weight) const;
  std::string describe() const;
};

/// Index n' of the dual Poincare series: -n if kappa = 0, else 1 - n.
int64_t n_prime(int64_t n, double kappa);

/// kappa' = 1 - kappa for kappa > 0, else 0.
double kappa_prime(double kappa);

}  // namespace mgrid
