#include <catch2/catch_amalgamated.hpp>
#include <random>
#include <set>

#include "lptwist/cocycle.hpp"
#include "lptwist/cohomology.hpp"
#include "lptwist/mackey.hpp"
#include "lptwist/twist.hpp"

using namespace lptwist;

namespace {

// random normalized 1-cochain with values in mu_m
std::vector<UnitScalar> random_gamma(const FiniteGroup& g, std::int64_t m,
                                     std::mt19937_64& rng) {
  std::uniform_int_distribution<std::int64_t> d(0, m - 1);
  std::vector<UnitScalar> out(g.n);
  for (int x = 0; x < g.n; ++x)
    out[x] = x == g.e ? UnitScalar::one() : UnitScalar::root_of_unity(d(rng), m);
  return out;
}

GroupCocycle cocycle_product(const GroupCocycle& a, const GroupCocycle& b) {
  auto t = a.table;
  for (int x = 0; x < a.group.n; ++x)
    for (int y = 0; y < a.group.n; ++y) t[x][y] = t[x][y] * b.at(x, y);
  return validate_group_cocycle(a.group, t);
}

}  // namespace

TEST_CASE("trivial tables validate on any group") {
  for (const FiniteGroup& g : {cyclic_group(4), cyclic_group(5)})
    CHECK_NOTHROW(validate_group_cocycle(g, trivial_group_cocycle(g).table));
}

TEST_CASE("the Z2 sign table is a cocycle (all 8 triples)") {
  CHECK_NOTHROW(sign_cocycle());
}

TEST_CASE("rotation tables on ZN^2 are cocycles for every k") {
  for (int N : {2, 3, 4})
    for (int k = 0; k < N; ++k) CHECK_NOTHROW(rotation_cocycle(N, k));
}

TEST_CASE("normalization failures are witnessed") {
  FiniteGroup z2 = cyclic_group(2);
  auto t = trivial_group_cocycle(z2).table;
  t[0][1] = UnitScalar::minus_one();
  try {
    validate_group_cocycle(z2, t);
    FAIL("expected NotNormalized");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotNormalized);
  }
}

TEST_CASE("cocycle identity failures carry a witnessing triple") {
  FiniteGroup z4 = cyclic_group(4);
  auto t = trivial_group_cocycle(z4).table;
  t[1][1] = UnitScalar::i();  // identity fails at (1,1,1)
  try {
    validate_group_cocycle(z4, t);
    FAIL("expected CocycleIdentityFails");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::CocycleIdentityFails);
    CHECK(std::string(e.what()).find("witness") != std::string::npos);
  }
}

TEST_CASE("trivial groupoid cocycle on R3 validates") {
  auto g = pair_groupoid(3);
  CHECK_NOTHROW(validate_groupoid_cocycle(g, trivial_groupoid_cocycle(g).table));
}

TEST_CASE("groupoid coboundaries validate: gamma((0,1)) = i on R2") {
  FiniteGroupoid g = pair_groupoid(2);
  std::vector<UnitScalar> gamma(g.n_arrows);
  gamma[1] = UnitScalar::i();  // arrow (0,1)
  CHECK_NOTHROW(coboundary(g, gamma));
}

TEST_CASE("groupoid normalization at a unit is enforced") {
  FiniteGroupoid g = pair_groupoid(2);
  auto t = trivial_groupoid_cocycle(g).table;
  t[0][1] = UnitScalar::minus_one();  // unit 0 against arrow 1
  try {
    validate_groupoid_cocycle(g, t);
    FAIL("expected NotNormalized");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotNormalized);
  }
}

TEST_CASE("coboundary of gamma == 1 is the trivial cocycle") {
  FiniteGroup g = cyclic_group(4);
  auto c = coboundary(g, std::vector<UnitScalar>(g.n));
  for (int x = 0; x < g.n; ++x)
    for (int y = 0; y < g.n; ++y) CHECK(c.at(x, y).is_one());
}

TEST_CASE("Z2 with gamma(1) = i gives d(gamma)(1,1) = -1") {
  FiniteGroup z2 = cyclic_group(2);
  std::vector<UnitScalar> gamma{UnitScalar::one(), UnitScalar::i()};
  auto c = coboundary(z2, gamma);
  CHECK(c.at(1, 1) == UnitScalar::minus_one());
}

TEST_CASE("Z4 with the character gamma(x) = i^x has trivial coboundary") {
  FiniteGroup z4 = cyclic_group(4);
  std::vector<UnitScalar> gamma(4);
  for (int x = 0; x < 4; ++x) gamma[x] = UnitScalar::root_of_unity(x, 4);
  auto c = coboundary(z4, gamma);
  for (int x = 0; x < 4; ++x)
    for (int y = 0; y < 4; ++y) CHECK(c.at(x, y).is_one());
}

TEST_CASE("gamma not normalized at the identity is rejected") {
  FiniteGroup z2 = cyclic_group(2);
  std::vector<UnitScalar> gamma{UnitScalar::i(), UnitScalar::one()};
  try {
    coboundary(z2, gamma);
    FAIL("expected NotNormalized");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotNormalized);
  }
}

TEST_CASE("coboundary output always passes validation (random sample)") {
  std::mt19937_64 rng(7);
  for (const FiniteGroup& g :
       {cyclic_group(8), direct_product(cyclic_group(4), cyclic_group(4)),
        direct_product(cyclic_group(2), cyclic_group(2))}) {
    for (int rep = 0; rep < 20; ++rep)
      CHECK_NOTHROW(coboundary(g, random_gamma(g, 8, rng)));
  }
}

TEST_CASE("identical cocycles are cohomologous via a character witness") {
  auto sigma = rotation_cocycle(3, 1);
  auto v = are_cohomologous(sigma, sigma);
  REQUIRE(v.cohomologous());
  // the witness differential must equal sigma * conj(sigma) = 1
  auto d = coboundary(sigma.group, v.gamma->gamma);
  for (int x = 0; x < sigma.group.n; ++x)
    for (int y = 0; y < sigma.group.n; ++y) CHECK(d.at(x, y).is_one());
}

TEST_CASE("Z2 sign cocycle is cohomologous to trivial, needing mu_4") {
  auto sigma = sign_cocycle();
  auto kappa = trivial_group_cocycle(sigma.group);
  auto v = are_cohomologous(sigma, kappa);
  REQUIRE(v.cohomologous());
  auto d = coboundary(sigma.group, v.gamma->gamma);
  CHECK(d.at(1, 1) == UnitScalar::minus_one());
  // gamma(1) must be a primitive 4th root
  CHECK(v.gamma->gamma[1].pow(2) == UnitScalar::minus_one());
}

TEST_CASE("rotation classes on ZN^2 obey k = k' mod N for N = 2, 3") {
  for (int N : {2, 3}) {
    for (int k = 0; k < N; ++k)
      for (int kp = 0; kp < N; ++kp) {
        auto v = are_cohomologous(rotation_cocycle(N, k), rotation_cocycle(N, kp));
        CHECK(v.cohomologous() == (k == kp));
        if (!v.cohomologous()) CHECK(v.certified_negative);
      }
  }
}

TEST_CASE("linear solver agrees with the generator-propagation search") {
  std::mt19937_64 rng(11);
  FiniteGroup g = direct_product(cyclic_group(2), cyclic_group(2));
  GroupCocycle cls = rotation_cocycle(2, 1);  // nontrivial class on Z2^2
  for (int rep = 0; rep < 12; ++rep) {
    auto a = cocycle_product(coboundary(g, random_gamma(g, 4, rng)),
                             rep % 2 ? cls : trivial_group_cocycle(g));
    auto b = cocycle_product(coboundary(g, random_gamma(g, 4, rng)),
                             rep % 3 ? cls : trivial_group_cocycle(g));
    auto lin = are_cohomologous(a, b);
    auto srch = are_cohomologous_search(a, b, 8);
    CHECK(lin.cohomologous() == srch.cohomologous());
  }
}

TEST_CASE("cohomologous-ness is an equivalence relation on random triples") {
  std::mt19937_64 rng(23);
  FiniteGroup g = direct_product(cyclic_group(2), cyclic_group(2));
  GroupCocycle cls = rotation_cocycle(2, 1);
  std::uniform_int_distribution<int> coin(0, 1);
  for (int rep = 0; rep < 8; ++rep) {
    std::vector<GroupCocycle> cs;
    for (int i = 0; i < 3; ++i) {
      auto c = coboundary(g, random_gamma(g, 4, rng));
      if (coin(rng)) c = cocycle_product(c, cls);
      cs.push_back(c);
    }
    auto ab = are_cohomologous(cs[0], cs[1]).cohomologous();
    auto ba = are_cohomologous(cs[1], cs[0]).cohomologous();
    auto bc = are_cohomologous(cs[1], cs[2]).cohomologous();
    auto ac = are_cohomologous(cs[0], cs[2]).cohomologous();
    CHECK(are_cohomologous(cs[0], cs[0]).cohomologous());  // reflexive
    CHECK(ab == ba);                                       // symmetric
    if (ab && bc) CHECK(ac);                               // transitive
  }
}

TEST_CASE("float tables need a configured search order") {
  FiniteGroup z2 = cyclic_group(2);
  auto t = trivial_group_cocycle(z2).table;
  t[1][1] = UnitScalar::from_complex({-1.0, 1e-12});
  GroupCocycle sigma{z2, t};
  CHECK_THROWS_AS(are_cohomologous(sigma, trivial_group_cocycle(z2)), Error);
  auto v = are_cohomologous_search(sigma, trivial_group_cocycle(z2), 4);
  CHECK(v.cohomologous());
}

TEST_CASE("mismatched carriers are rejected") {
  auto a = trivial_group_cocycle(cyclic_group(2));
  auto b = trivial_group_cocycle(cyclic_group(3));
  CHECK_THROWS_AS(are_cohomologous(a, b), Error);
}

TEST_CASE("mackey group of the trivial cocycle is the direct product") {
  FiniteGroup g = cyclic_group(3);
  auto mg = mackey_group(trivial_group_cocycle(g), 2);
  CHECK(mg.group.n == 6);
  CHECK(is_isomorphic(mg.group, direct_product(cyclic_group(2), cyclic_group(3))));
}

TEST_CASE("mackey group of the Z2 sign cocycle is Z4") {
  auto mg = mackey_group(sign_cocycle());
  CHECK(mg.m == 2);
  CHECK(mg.group.n == 4);
  CHECK(is_isomorphic(mg.group, cyclic_group(4)));
  // (1, x=1) has order 4
  CHECK(mg.group.order_of(mg.id(1, 1)) == 4);
}

TEST_CASE("mackey inverses match (z,x)^-1 = (conj(z sigma(x^-1,x)), x^-1)") {
  auto sigma = rotation_cocycle(4, 1);
  auto mg = mackey_group(sigma);
  const FiniteGroup& base = sigma.group;
  for (std::int64_t k = 0; k < mg.m; ++k)
    for (int x = 0; x < base.n; ++x) {
      auto s = sigma.at(base.inv[x], x);
      std::int64_t ke = -k - s.numerator() * (mg.m / s.denominator());
      CHECK(mg.group.inv[mg.id(k, x)] == mg.id(ke, base.inv[x]));
    }
}

TEST_CASE("cohomologous cocycles give isomorphic mackey groups") {
  // promote both to the modulus containing the witness values
  auto sigma = sign_cocycle();
  auto kappa = trivial_group_cocycle(sigma.group);
  auto a = mackey_group(sigma, 4);
  auto b = mackey_group(kappa, 4);
  CHECK(is_isomorphic(a.group, b.group));
}

TEST_CASE("twist fibers have m points, freely and transitively rotated") {
  auto g = pair_groupoid(2);
  auto tw = twist_groupoid(trivial_groupoid_cocycle(g), 2);
  CHECK(tw.total.n_arrows == 8);
  for (int a = 0; a < g.n_arrows; ++a) {
    std::set<int> fiber;
    for (int e = 0; e < tw.total.n_arrows; ++e)
      if (tw.pi(e) == a) fiber.insert(e);
    CHECK(fiber.size() == size_t(tw.m));
    int e0 = *fiber.begin();
    std::set<int> orbit;
    for (std::int64_t k = 0; k < tw.m; ++k) orbit.insert(tw.rotate(e0, k));
    CHECK(orbit == fiber);
  }
}

TEST_CASE("pi o i embeds the units and pi^-1(units) = i(units x mu_m)") {
  auto g = pair_groupoid(2);
  auto tw = twist_groupoid(trivial_groupoid_cocycle(g), 2);
  std::set<int> img, pre;
  for (int u : g.units) {
    CHECK(tw.pi(tw.i(u, 0)) == u);
    for (std::int64_t k = 0; k < tw.m; ++k) img.insert(tw.i(u, k));
  }
  for (int e = 0; e < tw.total.n_arrows; ++e)
    if (g.is_unit(tw.pi(e))) pre.insert(e);
  CHECK(img == pre);
}

TEST_CASE("the fiber copy is central: i(r(e),z)e = e i(s(e),z)") {
  FiniteGroupoid g = pair_groupoid(2);
  std::vector<UnitScalar> gamma(g.n_arrows);
  gamma[1] = UnitScalar::i();
  auto tw = twist_groupoid(coboundary(g, gamma));
  for (int e = 0; e < tw.total.n_arrows; ++e)
    for (std::int64_t k = 0; k < tw.m; ++k) {
      int left = tw.total.mul[tw.i(tw.base.rng[tw.pi(e)], k)][e];
      int right = tw.total.mul[e][tw.i(tw.base.src[tw.pi(e)], k)];
      CHECK(left == right);
    }
}

TEST_CASE("the canonical section recovers sigma exactly") {
  FiniteGroupoid g = pair_groupoid(3);
  std::vector<UnitScalar> gamma(g.n_arrows);
  gamma[1] = UnitScalar::i();
  gamma[5] = UnitScalar::root_of_unity(3, 4);
  auto sigma = coboundary(g, gamma);
  auto tw = twist_groupoid(sigma);
  std::vector<int> sec(g.n_arrows);
  for (int a = 0; a < g.n_arrows; ++a) sec[a] = tw.section(a);
  auto rec = cocycle_from_section(tw, sec);
  for (int a = 0; a < g.n_arrows; ++a)
    for (int b = 0; b < g.n_arrows; ++b)
      if (g.composable(a, b)) CHECK(rec.at(a, b) == sigma.at(a, b));
}

TEST_CASE("a section shifted by a 1-cochain recovers a cohomologous cocycle") {
  FiniteGroupoid g = pair_groupoid(2);
  std::vector<UnitScalar> gamma(g.n_arrows);
  gamma[2] = UnitScalar::minus_one();
  auto sigma = coboundary(g, gamma);
  auto tw = twist_groupoid(sigma, 4);
  std::vector<int> sec(g.n_arrows);
  for (int a = 0; a < g.n_arrows; ++a)
    sec[a] = g.is_unit(a) ? tw.section(a) : tw.id(1, a);  // shift off units
  auto rec = cocycle_from_section(tw, sec);
  auto v = are_cohomologous(rec, sigma);
  CHECK(v.cohomologous());
}
