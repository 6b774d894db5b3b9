#include <random>
#include <set>
#include <vector>

#include "doctest.h"
#include "mgrid/error.hpp"
#include "mgrid/group.hpp"

using namespace mgrid;

namespace {

// Euler totient by sieve, independent of the coset enumeration.
std::vector<int64_t> totients(int64_t n) {
  std::vector<int64_t> phi(static_cast<std::size_t>(n + 1));
  for (int64_t i = 0; i <= n; ++i) phi[i] = i;
  for (int64_t p = 2; p <= n; ++p)
    if (phi[p] == p)
      for (int64_t m = p; m <= n; m += p) phi[m] -= phi[m] / p;
  return phi;
}

GroupElement random_element(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> pick(0, 3), power(-4, 4);
  GroupElement g = GroupElement::identity();
  for (int i = 0; i < 6; ++i) g = g * (pick(rng) == 0 ? GroupElement::S() : GroupElement::T(power(rng)));
  return g;
}

GroupElement evaluate(const group::Word& w) {
  GroupElement g = GroupElement::identity();
  for (int64_t letter : w.letters) g = g * (letter == group::Word::kS ? GroupElement::S() : GroupElement::T(letter));
  return w.sign == 1 ? g : -g;
}

}  // namespace

TEST_CASE("coset count equals Euler phi for c <= 200") {
  auto phi = totients(200);
  auto spec = GroupSpec::sl2z();
  for (int64_t c = 1; c <= 200; ++c) {
    CAPTURE(c);
    CHECK(static_cast<int64_t>(group::enumerate_cplus(spec, c).size()) == phi[c]);
  }
}

TEST_CASE("coset representatives are normalized and distinct") {
  auto spec = GroupSpec::sl2z();
  for (int64_t c : {1, 2, 7, 12, 60}) {
    std::set<int64_t> ds;
    int64_t prev = -1;
    for (const auto& g : group::enumerate_cplus(spec, c)) {
      CHECK(g.is_unimodular());
      CHECK(g.c == c);
      CHECK(g.d <= 0);
      CHECK(g.d > -c);
      CHECK(g.a >= 0);
      CHECK(g.a < c);
      CHECK(-g.d > prev);
      CHECK(ds.insert(g.d).second);
      prev = -g.d;
    }
  }
}

TEST_CASE("level N cosets appear only for c divisible by N") {
  auto spec = GroupSpec::gamma0(3, {GroupElement::T(), {1, 0, 3, 1}, {-1, 0, 0, -1}});
  CHECK(group::enumerate_cplus(spec, 4).empty());
  auto phi = totients(30);
  for (int64_t c : {3, 6, 9, 12, 30}) CHECK(static_cast<int64_t>(group::enumerate_cplus(spec, c).size()) == phi[c]);
}

TEST_CASE("generator validation") {
  CHECK_THROWS_AS(GroupSpec::gamma0(2, {}).validate(), Error);
  CHECK_THROWS_AS(GroupSpec::gamma0(2, {GroupElement::S()}).validate(), Error);
  CHECK_NOTHROW(GroupSpec::gamma0(2, {GroupElement::T(), {1, 0, 2, 1}}).validate());
  auto gens = group::generators(GroupSpec::sl2z());
  REQUIRE(gens.size() == 2);
  CHECK(gens[0] == GroupElement::S());
  CHECK(gens[1] == GroupElement::T());
}

TEST_CASE("modular arithmetic helpers") {
  CHECK(group::gcd(84, -36) == 12);
  CHECK(group::gcd(0, 5) == 5);
  for (int64_t m : {2, 7, 30, 97})
    for (int64_t x = 1; x < m; ++x)
      if (group::gcd(x, m) == 1) CHECK((x * group::inverse_mod(x, m)) % m == 1);
  CHECK(group::inverse_mod(-3, 7) == 2);
  CHECK_THROWS_AS(group::inverse_mod(4, 8), Error);
}

TEST_CASE("word decomposition reproduces the element") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    GroupElement g = random_element(rng);
    CHECK(evaluate(group::decompose(g)) == g);
  }
  CHECK(evaluate(group::decompose(GroupElement::minus_identity())) == GroupElement::minus_identity());
  CHECK_THROWS_AS(group::decompose({2, 0, 0, 1}), Error);
}

TEST_CASE("moebius action is a group action") {
  std::mt19937_64 rng(11);
  const std::complex<double> tau(0.17, 0.9);
  for (int trial = 0; trial < 50; ++trial) {
    GroupElement g = random_element(rng), h = random_element(rng);
    auto lhs = group::moebius(g * h, tau);
    auto rhs = group::moebius(g, group::moebius(h, tau));
    CHECK(std::abs(lhs - rhs) < 1e-9 * std::max(1.0, std::abs(lhs)));
  }
  CHECK(std::abs(group::moebius(GroupElement::S(), {0, 1}) - std::complex<double>(0, 1)) < 1e-15);
}

TEST_CASE("inverse and product") {
  GroupElement g{2, 3, 5, 8};
  CHECK(g.is_unimodular());
  CHECK(g * g.inverse() == GroupElement::identity());
  CHECK(GroupElement::S() * GroupElement::S() == GroupElement::minus_identity());
}
