#include "mgrid/group.hpp"

#include <cmath>
#include <sstream>

#include "mgrid/error.hpp"

namespace mgrid {

bool GroupElement::is_unimodular() const {
  return static_cast<__int128>(a) * d - static_cast<__int128>(b) * c == 1;
}

GroupElement operator*(const GroupElement& x, const GroupElement& y) {
  return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
}

std::string GroupElement::to_string() const {
  std::ostringstream os;
  os << "[" << a << "," << b << "," << c << "," << d << "]";
  return os.str();
}

GroupSpec GroupSpec::sl2z() { return {1, 1.0, {GroupElement::S(), GroupElement::T()}}; }

GroupSpec GroupSpec::gamma0(int64_t level, std::vector<GroupElement> generators) {
  if (level == 1 && generators.empty()) return sl2z();
  GroupSpec g{level, 1.0, std::move(generators)};
  g.validate();
  return g;
}

void GroupSpec::validate() const {
  require(level >= 1, ErrorCode::InvalidArgument, "level must be >= 1");
  require(lambda > 0 && std::isfinite(lambda), ErrorCode::InvalidArgument, "lambda must be positive");
  require(!generators.empty(), ErrorCode::InvalidArgument, "generator list must not be empty");
  for (const auto& g : generators)
    require(contains(g), ErrorCode::InvalidArgument, "generator " + g.to_string() + " is not in Gamma_0(" +
                                                         std::to_string(level) + ")");
}

namespace group {

std::complex<double> moebius(const GroupElement& g, std::complex<double> tau) {
  return (static_cast<double>(g.a) * tau + static_cast<double>(g.b)) /
         (static_cast<double>(g.c) * tau + static_cast<double>(g.d));
}

std::vector<GroupElement> generators(const GroupSpec& spec) {
  if (spec.level == 1 && spec.generators.empty()) return GroupSpec::sl2z().generators;
  spec.validate();
  return spec.generators;
}

int64_t gcd(int64_t a, int64_t b) {
  a = a < 0 ? -a : a;
  b = b < 0 ? -b : b;
  while (b != 0) {
    int64_t t = a % b;
    a = b;
    b = t;
  }
  return a;
}

int64_t inverse_mod(int64_t x, int64_t m) {
  if (m == 1) return 0;
  int64_t r0 = m, r1 = ((x % m) + m) % m;
  int64_t s0 = 0, s1 = 1;
  while (r1 != 0) {
    int64_t q = r0 / r1;
    int64_t t = r0 - q * r1;
    r0 = r1;
    r1 = t;
    t = s0 - q * s1;
    s0 = s1;
    s1 = t;
  }
  require(r0 == 1, ErrorCode::InvalidArgument, "no inverse modulo " + std::to_string(m));
  return ((s0 % m) + m) % m;
}

std::vector<GroupElement> enumerate_cplus(const GroupSpec& spec, int64_t c) {
  require(c >= 1, ErrorCode::InvalidArgument, "enumerate_cplus requires c >= 1");
  require(spec.lambda == 1.0, ErrorCode::InvalidArgument, "coset enumeration supports cusp width 1 only");
  std::vector<GroupElement> out;
  if (c % spec.level != 0) return out;
  if (c == 1) {
    out.push_back({0, -1, 1, 0});
    return out;
  }
  // Residues sharing a prime factor with c are sieved out instead of testing gcd per residue.
  std::vector<char> coprime(c, 1);
  int64_t rest = c;
  for (int64_t q = 2; q * q <= rest; ++q) {
    if (rest % q != 0) continue;
    while (rest % q == 0) rest /= q;
    for (int64_t m = 0; m < c; m += q) coprime[m] = 0;
  }
  if (rest > 1)
    for (int64_t m = 0; m < c; m += rest) coprime[m] = 0;
  // Batch inversion: one extended Euclid per c, three modular products per unit.
  std::vector<int64_t> units, prefix;
  units.reserve(c);
  prefix.reserve(c);
  unsigned __int128 acc = 1;
  for (int64_t m = 1; m < c; ++m) {
    if (!coprime[m]) continue;
    int64_t r = c - m;  // d = -m is congruent to r
    units.push_back(r);
    acc = (acc * static_cast<unsigned __int128>(r)) % static_cast<unsigned __int128>(c);
    prefix.push_back(static_cast<int64_t>(acc));
  }
  std::vector<int64_t> inv(units.size());
  unsigned __int128 running = static_cast<unsigned __int128>(inverse_mod(static_cast<int64_t>(acc), c));
  for (size_t i = units.size(); i-- > 0;) {
    unsigned __int128 before = i == 0 ? 1 : static_cast<unsigned __int128>(prefix[i - 1]);
    inv[i] = static_cast<int64_t>((running * before) % static_cast<unsigned __int128>(c));
    running = (running * static_cast<unsigned __int128>(units[i])) % static_cast<unsigned __int128>(c);
  }
  out.reserve(units.size());
  for (size_t i = 0; i < units.size(); ++i) {
    int64_t d = units[i] - c;
    int64_t a = inv[i];
    int64_t b = static_cast<int64_t>((static_cast<__int128>(a) * d - 1) / c);
    out.push_back({a, b, c, d});
  }
  return out;
}

Word decompose(const GroupElement& g0) {
  require(g0.is_unimodular(), ErrorCode::InvalidArgument, "decompose requires a unimodular matrix");
  // Reduce g to +-T^m by left multiplication with S and T powers, recording the inverses.
  GroupElement g = g0;
  std::vector<int64_t> left;  // letters applied on the left, in order
  while (g.c != 0) {
    // choose m so that |a - m c| is minimal, then apply S.
    int64_t q = static_cast<int64_t>(std::floor(static_cast<long double>(g.a) / g.c + 0.5L));
    if (q != 0) {
      g = GroupElement::T(-q) * g;
      left.push_back(-q);
    }
    g = GroupElement::S() * g;
    left.push_back(Word::kS);
  }
  Word w;
  w.sign = g.a == 1 ? 1 : -1;
  // g = L_n ... L_1 g0, hence g0 = L_1^{-1} ... L_n^{-1} g.
  // Inverse of S is -S, inverse of T^m is T^{-m}.
  int sign = w.sign;
  for (auto it = left.begin(); it != left.end(); ++it) {
    if (*it == Word::kS) {
      w.letters.push_back(Word::kS);
      sign = -sign;
    } else {
      w.letters.push_back(-*it);
    }
  }
  int64_t m = g.a == 1 ? g.b : -g.b;
  if (m != 0) w.letters.push_back(m);
  w.sign = sign;
  return w;
}

}  // namespace group
}  // namespace mgrid
