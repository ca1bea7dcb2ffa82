#include <catch2/catch_amalgamated.hpp>

#include "lptwist/weyl.hpp"

using namespace lptwist;

namespace {

GroupoidCocycle r2_coboundary() {
  FiniteGroupoid g = pair_groupoid(2);
  std::vector<UnitScalar> gamma(g.n_arrows);
  gamma[1] = UnitScalar::i();
  return coboundary(g, gamma);
}

GroupoidCocycle r3_coboundary() {
  FiniteGroupoid g = pair_groupoid(3);
  std::vector<UnitScalar> gamma(g.n_arrows);
  gamma[1] = UnitScalar::i();
  gamma[5] = UnitScalar::root_of_unity(3, 4);
  return coboundary(g, gamma);
}

}  // namespace

TEST_CASE("the pair from a single R2 arrow realizes source -> range") {
  FiniteGroupoid g = pair_groupoid(2);
  auto sigma = trivial_groupoid_cocycle(g);
  // arrow 1 = (0,1): source unit 3 = (1,1), range unit 0 = (0,0)
  auto pair = admissible_from_bisection(sigma, Bisection{{1}});
  CHECK(std::abs(pair.a.coeffs[1] - Cplx(1.0)) < 1e-14);
  CHECK(std::abs(pair.b.coeffs[2] - Cplx(1.0)) < 1e-14);
  auto ba = convolve_groupoid(pair.b, pair.a);
  auto ab = convolve_groupoid(pair.a, pair.b);
  CHECK(std::abs(ba.coeffs[3] - Cplx(1.0)) < 1e-14);  // e22
  CHECK(std::abs(ab.coeffs[0] - Cplx(1.0)) < 1e-14);  // e11
  REQUIRE(pair.realized.size() == 1);
  CHECK(pair.realized.at(3) == 0);
}

TEST_CASE("the unit bisection with h = 1 realizes the identity") {
  auto sigma = r2_coboundary();
  const FiniteGroupoid& g = sigma.groupoid;
  auto pair = admissible_from_bisection(sigma, Bisection{g.units});
  REQUIRE(pair.realized.size() == g.units.size());
  for (int u : g.units) CHECK(pair.realized.at(u) == u);
}

TEST_CASE("a twisted pair carries its phase into the twist element") {
  auto sigma = r2_coboundary();
  const FiniteGroupoid& g = sigma.groupoid;
  std::vector<UnitScalar> u(g.n_arrows);
  u[1] = UnitScalar::i();  // phase i over the arrow (0,1)
  auto pair = admissible_from_bisection(sigma, Bisection{{1, 2}}, nullptr, &u);
  auto tw = weyl_twist({pair}, sigma);
  bool found = false;
  for (const auto& el : tw.elements)
    if (el.arrow == 1) {
      found = true;
      CHECK(el.phase == UnitScalar::i());
    }
  CHECK(found);
}

TEST_CASE("check_admissible accepts (e01, e10) and rejects (e01, e01)") {
  FiniteGroupoid g = pair_groupoid(2);
  auto sigma = trivial_groupoid_cocycle(g);
  auto ok = check_admissible(GroupoidAlgElement{sigma, delta(sigma, 1).coeffs},
                             GroupoidAlgElement{sigma, delta(sigma, 2).coeffs},
                             3.0);
  CHECK(ok.ok);
  CHECK(ok.realized.at(3) == 0);

  auto bad = check_admissible(GroupoidAlgElement{sigma, delta(sigma, 1).coeffs},
                              GroupoidAlgElement{sigma, delta(sigma, 1).coeffs},
                              3.0);
  CHECK_FALSE(bad.ok);
  CHECK_FALSE(bad.failure.empty());
}

TEST_CASE("(f, conj f) is admissible and realizes the identity on supp f") {
  auto sigma = r3_coboundary();
  const FiniteGroupoid& g = sigma.groupoid;
  Vec f = Vec::Zero(g.n_arrows);
  f[0] = Cplx(0.5, 0.5);   // unit (0,0), complex value
  f[4] = Cplx(2.0, 0.0);   // unit (1,1)
  Vec fb = f.conjugate();
  auto chk = check_admissible(GroupoidAlgElement{sigma, f},
                              GroupoidAlgElement{sigma, fb}, 3.0);
  REQUIRE(chk.ok);
  CHECK(chk.realized.size() == 2);
  CHECK(chk.realized.at(0) == 0);
  CHECK(chk.realized.at(4) == 4);
}

TEST_CASE("p = 2 is refused for admissibility") {
  auto sigma = r2_coboundary();
  auto e = unit_indicator(sigma);
  CHECK_THROWS_AS(check_admissible(e, e, 2.0), Error);
}

TEST_CASE("bisection -> pair -> bisection is the identity on maximal bisections") {
  for (const GroupoidCocycle& sigma :
       {trivial_groupoid_cocycle(pair_groupoid(2)), r2_coboundary(),
        r3_coboundary(),
        trivial_groupoid_cocycle(
            disjoint_union(pair_groupoid(2), pair_groupoid(2)))}) {
    for (const Bisection& b : bisections(sigma.groupoid)) {
      auto pair = admissible_from_bisection(sigma, b);
      auto back = bisection_from_pair(pair);
      CHECK(back.arrows == b.arrows);
    }
  }
}

TEST_CASE("the identity pair induces a bisection inside the units") {
  auto sigma = r2_coboundary();
  const FiniteGroupoid& g = sigma.groupoid;
  auto pair = admissible_from_bisection(sigma, Bisection{g.units});
  auto b = bisection_from_pair(pair);
  for (int c : b.arrows) CHECK(g.is_unit(c));
}

TEST_CASE("phase-scaled pairs induce the same bisection") {
  auto sigma = r3_coboundary();
  auto pair = admissible_from_bisection(
      sigma, bisections(sigma.groupoid).front());
  auto scaled = scale_pair(pair, std::polar(1.0, 1.1));
  CHECK(bisection_from_pair(scaled).arrows ==
        bisection_from_pair(pair).arrows);
}

TEST_CASE("the reverse pair realizes the inverse map") {
  auto sigma = r3_coboundary();
  auto pair = admissible_from_bisection(
      sigma, bisections(sigma.groupoid).front());
  auto rev = reverse_pair(pair);
  auto chk = check_admissible(rev.a, rev.b, 3.0);
  REQUIRE(chk.ok);
  for (const auto& [x, y] : pair.realized) CHECK(chk.realized.at(y) == x);
}

TEST_CASE("the product pair realizes the composition") {
  auto sigma = r3_coboundary();
  auto bs = bisections(sigma.groupoid);
  auto n = admissible_from_bisection(sigma, bs[0]);
  auto m = admissible_from_bisection(sigma, bs[1]);
  auto nm = product_pair(n, m);
  auto chk = check_admissible(nm.a, nm.b, 3.0);
  REQUIRE(chk.ok);
  for (const auto& [x, y] : m.realized) {
    auto it = n.realized.find(y);
    if (it == n.realized.end()) continue;
    CHECK(chk.realized.at(x) == it->second);
  }
}

TEST_CASE("positivity certificate holds for every admissible pair") {
  auto sigma = r3_coboundary();
  const FiniteGroupoid& g = sigma.groupoid;
  for (const Bisection& b : bisections(sigma.groupoid)) {
    auto pair = admissible_from_bisection(sigma, b);
    for (int c = 0; c < g.n_arrows; ++c) {
      Cplx v = sigma.at(g.inv[c], c).value() * pair.b.coeffs[g.inv[c]] *
               pair.a.coeffs[c];
      CHECK(v.real() >= -1e-12);
      CHECK(std::abs(v.imag()) <= 1e-12);
    }
  }
}

TEST_CASE("non-principal carriers are refused") {
  auto gc = sign_cocycle();
  FiniteGroupoid g = group_as_groupoid(gc.group);
  auto sigma = validate_groupoid_cocycle(g, gc.table);
  auto e = unit_indicator(sigma);
  AdmissiblePair pair{e, e, {{0, 0}}};
  CHECK_THROWS_AS(bisection_from_pair(pair), Error);
  CHECK_THROWS_AS(weyl_roundtrip(sigma, 3.0), Error);
}

TEST_CASE("weyl groupoid of all maximal bisections of R3 is R3") {
  auto sigma = r3_coboundary();
  auto rt = weyl_roundtrip(sigma, 3.0);
  CHECK(rt.groupoid_iso());
  CHECK(rt.groupoid_part.germ.groupoid.n_arrows == 9);
  // theta is a bijection onto the carrier arrows
  std::set<int> image(rt.groupoid_part.theta.begin(),
                      rt.groupoid_part.theta.end());
  CHECK(image.size() == 9);
}

TEST_CASE("a single identity pair reconstructs only the unit space") {
  auto sigma = r3_coboundary();
  auto pair =
      admissible_from_bisection(sigma, Bisection{sigma.groupoid.units});
  auto res = weyl_groupoid({pair});
  CHECK(res.germ.groupoid.n_arrows == 3);
  CHECK(res.germ.groupoid.units.size() == 3);
  CHECK_FALSE(res.groupoid_iso);
}

TEST_CASE("disjoint unions reconstruct componentwise") {
  auto g = disjoint_union(pair_groupoid(2), pair_groupoid(2));
  auto sigma = trivial_groupoid_cocycle(g);
  auto rt = weyl_roundtrip(sigma, 3.0);
  CHECK(rt.groupoid_iso());
  CHECK(rt.twist_class_match());
}

TEST_CASE("trivial twist reconstructs with phase 1 everywhere") {
  auto sigma = trivial_groupoid_cocycle(pair_groupoid(2));
  auto rt = weyl_roundtrip(sigma, 3.0);
  CHECK(rt.groupoid_iso());
  CHECK(rt.twist_class_match());
  CHECK(rt.twist_part.diagram_commutes);
  CHECK(rt.twist_part.phase_consistent);
  for (const auto& el : rt.twist_part.elements) CHECK(el.phase.is_one());
}

TEST_CASE("scaling a pair by z multiplies the class phase by z") {
  auto sigma = r2_coboundary();
  auto bs = bisections(sigma.groupoid);
  std::vector<AdmissiblePair> family, family_scaled;
  for (const auto& b : bs) family.push_back(admissible_from_bisection(sigma, b));
  family_scaled = family;
  family_scaled[0] = scale_pair(family[0], UnitScalar::i().value());
  auto tw_plain = weyl_twist(family, sigma);
  auto tw_scaled = weyl_twist(family_scaled, sigma);
  REQUIRE(tw_plain.elements.size() == tw_scaled.elements.size());
  for (size_t i = 0; i < tw_plain.elements.size(); ++i) {
    CHECK(tw_scaled.elements[i].arrow == tw_plain.elements[i].arrow);
    UnitScalar expect = tw_plain.elements[i].pair_index == 0
                            ? tw_plain.elements[i].phase * UnitScalar::i()
                            : tw_plain.elements[i].phase;
    CHECK(tw_scaled.elements[i].phase == expect);
  }
}

TEST_CASE("coboundary twists reconstruct with a matching class") {
  for (const GroupoidCocycle& sigma : {r2_coboundary(), r3_coboundary()}) {
    auto rt = weyl_roundtrip(sigma, 3.0);
    CHECK(rt.groupoid_iso());
    CHECK(rt.twist_class_match());
    CHECK(rt.twist_part.diagram_commutes);
    CHECK(rt.twist_part.phase_consistent);
  }
}

TEST_CASE("the witness oracle agrees with the canonical form on R2") {
  auto sigma = r2_coboundary();
  auto pair = admissible_from_bisection(
      sigma, bisections(sigma.groupoid).front());
  // same pair scaled by a positive real: equivalent, same phase
  auto pos = scale_pair(pair, 2.0);
  // scaled by i: same arrow, different phase, not equivalent
  auto rot = scale_pair(pair, UnitScalar::i().value());
  int x = pair.realized.begin()->first;
  CHECK(weyl_detail::equiv_witness_search(pair, pos, x));
  CHECK_FALSE(weyl_detail::equiv_witness_search(pair, rot, x));
}

TEST_CASE("phi maps the fiber copy to the fiber copy: phi(i_A(x,z)) = i(x,z)") {
  auto sigma = r2_coboundary();
  const FiniteGroupoid& g = sigma.groupoid;
  std::vector<AdmissiblePair> covering;
  for (const auto& b : bisections(g))
    covering.push_back(admissible_from_bisection(sigma, b));
  for (std::int64_t k = 0; k < 4; ++k) {
    Cplx z = UnitScalar::root_of_unity(k, 4).value();
    for (int x : g.units) {
      // n_f with f = z at x: the class [[n_f, x]] must come out as (x, z)
      Vec f = Vec::Zero(g.n_arrows);
      f[x] = z;
      AdmissiblePair nf{GroupoidAlgElement{sigma, f},
                        GroupoidAlgElement{sigma, f.conjugate()},
                        {{x, x}}};
      auto chk = check_admissible(nf.a, nf.b, 3.0);
      REQUIRE(chk.ok);
      std::vector<AdmissiblePair> family{nf};
      family.insert(family.end(), covering.begin(), covering.end());
      auto tw = weyl_twist(family, sigma);
      REQUIRE(tw.elements.size() >= 1);
      CHECK(tw.elements[0].pair_index == 0);
      CHECK(tw.elements[0].arrow == x);
      CHECK(tw.elements[0].phase == UnitScalar::root_of_unity(k, 4));
    }
  }
}
