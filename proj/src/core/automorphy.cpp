#include "mgrid/automorphy.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "mgrid/error.hpp"

namespace mgrid {
namespace {

double reduce_turns(double t) {
  t -= std::floor(t);
  if (t >= 1.0 || t < 1e-13 || 1.0 - t < 1e-13) t = 0.0;
  return t;
}

double parse_turn(std::string_view s) {
  auto slash = s.find('/');
  auto to_double = [](std::string_view v) {
    std::string str(v);
    char* end = nullptr;
    double x = std::strtod(str.c_str(), &end);
    require(!str.empty() && end == str.c_str() + str.size(), ErrorCode::InvalidArgument,
            "cannot parse number '" + str + "'");
    return x;
  };
  if (slash == std::string_view::npos) return to_double(s);
  double den = to_double(s.substr(slash + 1));
  require(den != 0, ErrorCode::InvalidArgument, "zero denominator in '" + std::string(s) + "'");
  return to_double(s.substr(0, slash)) / den;
}

int64_t parse_int(std::string_view s) {
  int64_t v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  require(ec == std::errc() && p == s.data() + s.size(), ErrorCode::InvalidArgument,
          "cannot parse integer '" + std::string(s) + "'");
  return v;
}

std::vector<std::string_view> split_top(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  int depth = 0;
  size_t start = 0;
  for (size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '(') ++depth;
    if (s[i] == ')') --depth;
    if (s[i] == sep && depth == 0) {
      out.push_back(s.substr(start, i - start));
      start = i + 1;
    }
  }
  out.push_back(s.substr(start));
  return out;
}

// 12 c s(h, c) via reciprocity; __int128 keeps the intermediate h^2 + c^2 exact.
__int128 t12(__int128 h, __int128 c) {
  if (c == 1) return 0;
  h %= c;
  if (h < 0) h += c;
  if (h == 0) fail(ErrorCode::InvalidArgument, "Dedekind sum requires gcd(h, c) = 1");
  // h t(h,c) + c t(c,h) = h^2 + c^2 + 1 - 3hc
  __int128 rest = t12(c % h, h);
  __int128 num = h * h + c * c + 1 - 3 * h * c - c * rest;
  if (num % h != 0) fail(ErrorCode::Internal, "Dedekind reciprocity produced a non-integer");
  return num / h;
}

}  // namespace

Complex turn_to_complex(double turns) {
  double t = turns - std::floor(turns);
  // Exact values on the quarter turns keep trivial products exact.
  if (t == 0.0) return {1, 0};
  if (t == 0.5) return {-1, 0};
  if (t == 0.25) return {0, 1};
  if (t == 0.75) return {0, -1};
  double ang = 2 * std::numbers::pi * t;
  return {std::cos(ang), std::sin(ang)};
}

int64_t dedekind_sum12(int64_t h, int64_t c) {
  require(c >= 1, ErrorCode::InvalidArgument, "Dedekind sum requires c >= 1");
  require(group::gcd(h, c) == 1, ErrorCode::InvalidArgument, "Dedekind sum requires gcd(h, c) = 1");
  return static_cast<int64_t>(t12(h, c));
}

int eta_square_exponent(const GroupElement& g) {
  require(g.is_unimodular(), ErrorCode::InvalidArgument, "eta multiplier needs a unimodular matrix");
  auto mod12 = [](__int128 x) { return static_cast<int>(((x % 12) + 12) % 12); };
  if (g.c == 0) {
    // d = 1: e^{pi i b / 6}; d = -1: -e^{-pi i b / 6}.
    return g.d == 1 ? mod12(g.b) : mod12(6 - static_cast<__int128>(g.b));
  }
  if (g.c < 0) return mod12(eta_square_exponent(-g) + 6);
  __int128 num = static_cast<__int128>(g.a) + g.d - t12(g.d, g.c);
  require(num % g.c == 0, ErrorCode::Internal, "Rademacher Phi is not an integer");
  return mod12(num / g.c - 3);
}

Multiplier Multiplier::eta_power(int r) {
  require(r % 2 == 0, ErrorCode::InvalidArgument, "eta multiplier powers must be even at integral weight");
  Multiplier m;
  m.kind_ = r == 0 ? Kind::Trivial : Kind::EtaPower;
  m.eta_r_ = r;
  return m;
}

Multiplier Multiplier::dirichlet(int64_t modulus, std::vector<double> turns) {
  require(modulus >= 1, ErrorCode::InvalidArgument, "Dirichlet modulus must be >= 1");
  std::vector<int64_t> units;
  for (int64_t r = 0; r < modulus; ++r)
    if (group::gcd(r, modulus) == 1) units.push_back(r);
  require(turns.size() == units.size(), ErrorCode::InvalidArgument,
          "Dirichlet character mod " + std::to_string(modulus) + " needs " + std::to_string(units.size()) +
              " values, got " + std::to_string(turns.size()));
  Multiplier m;
  m.kind_ = Kind::Dirichlet;
  m.modulus_ = modulus;
  m.unit_turns_.assign(modulus, std::numeric_limits<double>::quiet_NaN());
  for (size_t i = 0; i < units.size(); ++i) m.unit_turns_[units[i]] = reduce_turns(turns[i]);
  for (int64_t u : units)
    for (int64_t v : units) {
      double lhs = m.unit_turns_[(u * v) % modulus];
      double diff = lhs - m.unit_turns_[u] - m.unit_turns_[v];
      diff -= std::round(diff);
      require(std::abs(diff) < 1e-9, ErrorCode::InvalidArgument, "Dirichlet values are not multiplicative");
    }
  return m;
}

Multiplier Multiplier::parse(std::string_view text) {
  if (text == "trivial" || text == "1") return trivial();
  if (text.starts_with("eta:")) return eta_power(static_cast<int>(parse_int(text.substr(4))));
  if (text.starts_with("dirichlet:")) {
    auto rest = text.substr(10);
    auto colon = rest.find(':');
    require(colon != std::string_view::npos, ErrorCode::InvalidArgument, "expected dirichlet:N:values");
    int64_t n = parse_int(rest.substr(0, colon));
    std::vector<double> turns;
    auto vals = rest.substr(colon + 1);
    if (!vals.empty())
      for (auto v : split_top(vals, ',')) turns.push_back(parse_turn(v));
    return dirichlet(n, std::move(turns));
  }
  fail(ErrorCode::InvalidArgument, "unknown character '" + std::string(text) + "'");
}

double Multiplier::turns(const GroupElement& g) const {
  switch (kind_) {
    case Kind::Trivial:
      return 0.0;
    case Kind::EtaPower: {
      int64_t e = static_cast<int64_t>(eta_square_exponent(g)) * (eta_r_ / 2);
      return static_cast<double>(((e % 12) + 12) % 12) / 12.0;
    }
    case Kind::Dirichlet: {
      int64_t r = ((g.d % modulus_) + modulus_) % modulus_;
      double t = unit_turns_[r];
      require(!std::isnan(t), ErrorCode::InvalidArgument, "Dirichlet character evaluated at a non-unit");
      return t;
    }
  }
  return 0.0;
}

Multiplier Multiplier::conjugate() const {
  Multiplier m = *this;
  m.eta_r_ = -eta_r_;
  for (double& t : m.unit_turns_)
    if (!std::isnan(t)) t = reduce_turns(-t);
  return m;
}

std::string Multiplier::to_string() const {
  switch (kind_) {
    case Kind::Trivial:
      return "trivial";
    case Kind::EtaPower:
      return "eta:" + std::to_string(eta_r_);
    case Kind::Dirichlet: {
      std::ostringstream os;
      os.precision(17);
      os << "dirichlet:" << modulus_ << ":";
      bool first = true;
      for (double t : unit_turns_) {
        if (std::isnan(t)) continue;
        os << (first ? "" : ",") << t;
        first = false;
      }
      return os.str();
    }
  }
  return "?";
}

Representation Representation::diagonal(std::vector<Multiplier> components) {
  require(!components.empty(), ErrorCode::InvalidArgument, "representation needs at least one component");
  Representation r;
  r.dim_ = static_cast<int>(components.size());
  for (const auto& c : components) r.t_turns_.push_back(c.turns(GroupElement::T()));
  r.components_ = std::move(components);
  return r;
}

namespace {

using Mat = std::vector<Complex>;

Mat matmul(const Mat& x, const Mat& y, int p) {
  Mat z(static_cast<size_t>(p) * p);
  for (int i = 0; i < p; ++i)
    for (int k = 0; k < p; ++k)
      for (int j = 0; j < p; ++j) z[i * p + j] += x[i * p + k] * y[k * p + j];
  return z;
}

Mat identity(int p) {
  Mat m(static_cast<size_t>(p) * p);
  for (int i = 0; i < p; ++i) m[i * p + i] = 1;
  return m;
}

double distance(const Mat& x, const Mat& y) {
  double d = 0;
  for (size_t i = 0; i < x.size(); ++i) d = std::max(d, std::abs(x[i] - y[i]));
  return d;
}

Mat adjoint(const Mat& x, int p) {
  Mat y(x.size());
  for (int i = 0; i < p; ++i)
    for (int j = 0; j < p; ++j) y[j * p + i] = std::conj(x[i * p + j]);
  return y;
}

}  // namespace

Representation Representation::from_generators(int p, std::vector<Complex> rho_s, std::vector<Complex> rho_t) {
  require(p >= 1, ErrorCode::InvalidArgument, "representation dimension must be >= 1");
  size_t n = static_cast<size_t>(p) * p;
  require(rho_s.size() == n && rho_t.size() == n, ErrorCode::InvalidArgument, "generator matrices must be p x p");
  const double tol = 1e-10;
  Mat id = identity(p);
  require(distance(matmul(rho_s, adjoint(rho_s, p), p), id) < tol, ErrorCode::InvalidArgument, "rho(S) is not unitary");
  require(distance(matmul(rho_t, adjoint(rho_t, p), p), id) < tol, ErrorCode::InvalidArgument, "rho(T) is not unitary");
  for (int i = 0; i < p; ++i)
    for (int j = 0; j < p; ++j)
      require(i == j || std::abs(rho_t[i * p + j]) < tol, ErrorCode::InvalidArgument, "rho(T) must be diagonal");
  Mat s2 = matmul(rho_s, rho_s, p);
  require(distance(matmul(s2, s2, p), id) < tol, ErrorCode::InvalidArgument, "rho(S)^4 != I");
  Mat st = matmul(rho_s, rho_t, p);
  require(distance(matmul(matmul(st, st, p), st, p), s2) < tol, ErrorCode::InvalidArgument, "rho(ST)^3 != rho(S)^2");
  Representation r;
  r.dim_ = p;
  for (int i = 0; i < p; ++i) r.t_turns_.push_back(reduce_turns(std::arg(rho_t[i * p + i]) / (2 * std::numbers::pi)));
  r.generators_ = std::move(rho_s);
  r.generators_.insert(r.generators_.end(), rho_t.begin(), rho_t.end());
  return r;
}

Representation Representation::parse(std::string_view text) {
  if (text == "trivial" || text.empty()) return trivial();
  require(text.starts_with("diag(") && text.ends_with(")"), ErrorCode::InvalidArgument,
          "representation must be 'trivial' or 'diag(...)'");
  std::vector<Multiplier> comps;
  for (auto part : split_top(text.substr(5, text.size() - 6), ',')) {
    // Dirichlet values are separated by ',' too; re-join pieces that cannot start a multiplier.
    if (!comps.empty() && !(part.starts_with("trivial") || part.starts_with("eta:") || part.starts_with("dirichlet:"))) {
      fail(ErrorCode::InvalidArgument, "diag() components with Dirichlet characters must use ';' between values");
    }
    std::string s(part);
    for (char& ch : s)
      if (ch == ';') ch = ',';
    comps.push_back(Multiplier::parse(s));
  }
  return diagonal(std::move(comps));
}

std::vector<Complex> Representation::eval(const GroupElement& g) const {
  int p = dim_;
  if (is_diagonal()) {
    Mat m(static_cast<size_t>(p) * p);
    for (int j = 0; j < p; ++j) m[j * p + j] = components_[j](g);
    return m;
  }
  Mat rs(generators_.begin(), generators_.begin() + p * p);
  group::Word w = group::decompose(g);
  Mat m = w.sign < 0 ? matmul(rs, rs, p) : identity(p);
  for (int64_t letter : w.letters) {
    if (letter == group::Word::kS) {
      m = matmul(m, rs, p);
    } else {
      for (int i = 0; i < p; ++i) {
        Complex f = turn_to_complex(static_cast<double>(letter) * t_turns_[i]);
        for (int r = 0; r < p; ++r) m[r * p + i] *= f;
      }
    }
  }
  return m;
}

std::vector<double> Representation::t_turns() const { return t_turns_; }

Representation Representation::conjugate() const {
  Representation r = *this;
  for (auto& c : r.components_) c = c.conjugate();
  for (auto& z : r.generators_) z = std::conj(z);
  for (auto& t : r.t_turns_) t = reduce_turns(-t);
  return r;
}

std::string Representation::to_string() const {
  if (!is_diagonal()) return "matrix(" + std::to_string(dim_) + ")";
  if (dim_ == 1 && components_[0].kind() == Multiplier::Kind::Trivial) return "trivial";
  std::string s = "diag(";
  for (int j = 0; j < dim_; ++j) s += (j ? "," : "") + components_[j].to_string();
  return s + ")";
}

std::vector<double> kappa_vector(const Multiplier& chi, const Representation& rho) {
  double base = chi.turns(GroupElement::T());
  std::vector<double> k;
  for (double t : rho.t_turns()) k.push_back(reduce_turns(base + t));
  return k;
}

AutomorphyData AutomorphyData::make(GroupSpec group, int weight, Multiplier chi, Representation rho) {
  group.validate();
  if (chi.kind() == Multiplier::Kind::Dirichlet)
    require(group.level % chi.modulus() == 0, ErrorCode::InvalidArgument,
            "Dirichlet modulus must divide the level");
  for (const auto& c : rho.components())
    if (c.kind() == Multiplier::Kind::Dirichlet)
      require(group.level % c.modulus() == 0, ErrorCode::InvalidArgument, "Dirichlet modulus must divide the level");
  require(rho.is_diagonal() || group.level == 1, ErrorCode::InvalidArgument,
          "matrix representations are defined on SL_2(Z) only");
  GroupElement minus = GroupElement::minus_identity();
  double parity = chi.turns(minus) - (weight % 2 == 0 ? 0.0 : 0.5);
  parity -= std::round(parity);
  require(std::abs(parity) < 1e-9, ErrorCode::Precondition,
          "chi(-I) must equal (-1)^weight (weight " + std::to_string(weight) + ", chi " + chi.to_string() + ")");
  Mat rm = rho.eval(minus);
  require(distance(rm, identity(rho.dim())) < 1e-9, ErrorCode::Precondition, "rho(-I) must be the identity");
  AutomorphyData d;
  d.lambda = group.lambda;
  d.group = std::move(group);
  d.weight = weight;
  d.kappa = kappa_vector(chi, rho);
  d.chi = std::move(chi);
  d.rho = std::move(rho);
  return d;
}

Complex AutomorphyData::inverse_factor(const GroupElement& g, int j, int alpha) const {
  double ct = chi.turns(g);
  if (rho.is_diagonal()) {
    if (j != alpha) return 0;
    return turn_to_complex(-ct - rho.components()[j].turns(g));
  }
  int p = rho.dim();
  Mat m = rho.eval(g);
  return turn_to_complex(-ct) * std::conj(m[alpha * p + j]);
}

AutomorphyData AutomorphyData::conjugate(int new_weight) const {
  AutomorphyData d;
  d.group = group;
  d.weight = new_weight;
  d.chi = chi.conjugate();
  d.rho = rho.conjugate();
  d.kappa = kappa_vector(d.chi, d.rho);
  d.lambda = lambda;
  return d;
}

std::string AutomorphyData::describe() const {
  return "level=" + std::to_string(group.level) + " weight=" + std::to_string(weight) + " chi=" + chi.to_string() +
         " rho=" + rho.to_string();
}

int64_t n_prime(int64_t n, double kappa) { return kappa == 0.0 ? -n : 1 - n; }

double kappa_prime(double kappa) { return kappa == 0.0 ? 0.0 : 1.0 - kappa; }

}  // namespace mgrid
