// Acceptance suite: one pass/fail line per criterion, each with its stated
// tolerance and time budget pinned in code. Exits nonzero on any failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "lptwist/algebra.hpp"
#include "lptwist/cohomology.hpp"
#include "lptwist/commutant.hpp"
#include "lptwist/core.hpp"
#include "lptwist/isometry_group.hpp"
#include "lptwist/lamperti.hpp"
#include "lptwist/mackey.hpp"
#include "lptwist/reports.hpp"
#include "lptwist/weyl.hpp"

using namespace lptwist;

namespace {

int failures = 0;

void run_criterion(int number, const std::string& label, double budget_s,
                   const std::function<bool(std::string&)>& body) {
  std::string detail;
  bool ok = false;
  auto start = std::chrono::steady_clock::now();
  try {
    ok = body(detail);
  } catch (const std::exception& e) {
    ok = false;
    detail = std::string("exception: ") + e.what();
  }
  double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  if (elapsed > budget_s) {
    ok = false;
    detail += (detail.empty() ? "" : "; ") + std::string("over time budget");
  }
  std::printf("%s criterion %2d (%.2fs/%.0fs): %s%s%s\n",
              ok ? "PASS" : "FAIL", number, elapsed, budget_s, label.c_str(),
              detail.empty() ? "" : " -- ", detail.c_str());
  if (!ok) ++failures;
}

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

GroupoidCocycle r2r2_coboundary() {
  FiniteGroupoid g = disjoint_union(pair_groupoid(2), pair_groupoid(2));
  std::vector<UnitScalar> gamma(g.n_arrows);
  gamma[1] = UnitScalar::i();
  gamma[6] = UnitScalar::root_of_unity(3, 4);
  return coboundary(g, gamma);
}

// 1. exhaustive cocycle validation over the shipped corpus, exact arithmetic
bool criterion_1(std::string& detail) {
  validate_group_cocycle(cyclic_group(4),
                         trivial_group_cocycle(cyclic_group(4)).table);
  auto sign = sign_cocycle();
  validate_group_cocycle(sign.group, sign.table);
  for (int N : {2, 3, 4})
    for (int k = 0; k < N; ++k) {
      auto rot = rotation_cocycle(N, k);
      validate_group_cocycle(rot.group, rot.table);
    }
  for (const GroupoidCocycle& c : {r2_coboundary(), r3_coboundary()})
    validate_groupoid_cocycle(c.groupoid, c.table);
  validate_groupoid_cocycle(pair_groupoid(3),
                            trivial_groupoid_cocycle(pair_groupoid(3)).table);
  detail = "trivial, sign, rotations N<=4, coboundaries on R2/R3";
  return true;
}

// 2. the isometry distance formula against pnorm brackets
bool criterion_2(std::string& detail) {
  int checked = 0;
  for (int n : {3, 4}) {
    auto sigma = trivial_group_cocycle(cyclic_group(n));
    std::vector<Mat> lambdas;
    for (int g = 0; g < n; ++g)
      lambdas.push_back(left_translation_matrix(sigma, g));
    for (double p : {1.0, 1.5, 3.0, 4.0}) {
      for (int g = 0; g < n; ++g)
        for (int h = 0; h < n; ++h)
          for (int cg = 0; cg < 8; ++cg)
            for (int ch = 0; ch < 8; ++ch) {
              Cplx gamma = UnitScalar::root_of_unity(cg, 8).value();
              Cplx beta = UnitScalar::root_of_unity(ch, 8).value();
              double expected = g == h ? std::abs(beta - gamma) : 2.0;
              Mat diff = gamma * lambdas[g] - beta * lambdas[h];
              auto est = pnorm(diff, p, 7157, 4);
              if (expected < est.lower - 1e-4 || expected > est.upper + 1e-4)
                return false;
              ++checked;
            }
    }
  }
  detail = std::to_string(checked) + " pairs within bracket+1e-4";
  return true;
}

// 3. component groups distinguish Z4 from Z2 x Z2
bool criterion_3(std::string& detail) {
  auto bicommutant = [](const GroupCocycle& s) {
    std::vector<Mat> gens;
    for (int g = 0; g < s.group.n; ++g)
      gens.push_back(left_translation_matrix(s, g));
    return double_commutant(gens);
  };
  auto z4 = trivial_group_cocycle(cyclic_group(4));
  auto klein =
      trivial_group_cocycle(direct_product(cyclic_group(2), cyclic_group(2)));
  auto res4 = isometries_in_algebra(bicommutant(z4), 3.0);
  auto resk = isometries_in_algebra(bicommutant(klein), 3.0);
  if (res4.families.size() != 4 || resk.families.size() != 4) return false;
  if (!is_isomorphic(res4.pi0, cyclic_group(4))) return false;
  if (!is_isomorphic(resk.pi0,
                     direct_product(cyclic_group(2), cyclic_group(2))))
    return false;
  if (is_isomorphic(res4.pi0, resk.pi0)) return false;
  detail = "4 + 4 phase families; pi0 groups certified non-isomorphic";
  return true;
}

// 4. the phase-decorated family group is the finite Mackey group
bool criterion_4(std::string& detail) {
  auto sigma = sign_cocycle();
  std::vector<Mat> gens;
  for (int g = 0; g < 2; ++g)
    gens.push_back(left_translation_matrix(sigma, g));
  auto res = isometries_in_algebra(double_commutant(gens), 3.0);
  auto phase_group = isometry_phase_group(res, 2);
  auto mackey = mackey_group(sigma);
  if (!is_isomorphic(phase_group, mackey.group)) return false;
  if (!is_isomorphic(phase_group, cyclic_group(4))) return false;
  detail = "mu_2-phase family group = Z4 = Mackey group";
  return true;
}

// 5. rotation cocycle classes on Z_N^2
bool criterion_5(std::string& detail) {
  int checked = 0;
  for (int N : {2, 3, 4})
    for (int k = 0; k < N; ++k)
      for (int kp = 0; kp < N; ++kp) {
        auto v = are_cohomologous(rotation_cocycle(N, k), rotation_cocycle(N, kp));
        if (v.cohomologous() != (k == kp)) return false;
        if (!v.cohomologous() && !v.certified_negative) return false;
        ++checked;
      }
  detail = std::to_string(checked) + " class decisions, negatives certified";
  return true;
}

// 6. the self-adjoint core is the unit diagonal
bool criterion_6(std::string& detail) {
  for (const GroupoidCocycle& sigma :
       {r3_coboundary(),
        trivial_groupoid_cocycle(
            disjoint_union(pair_groupoid(2), pair_groupoid(2)))}) {
    std::vector<Mat> basis;
    for (int a = 0; a < sigma.groupoid.n_arrows; ++a)
      basis.push_back(groupoid_full_rep(delta(sigma, a)));
    for (double p : {1.0, 3.0, 4.0}) {
      auto core = core_basis(basis, p, 1e-7);
      if (!core.conclusive) return false;
      if (core.complex_dim != int(sigma.groupoid.units.size())) return false;
      for (const Mat& h : core.hermitian_basis)
        for (Eigen::Index r = 0; r < h.rows(); ++r)
          for (Eigen::Index c = 0; c < h.cols(); ++c)
            if (r != c && std::abs(h(r, c)) > 1e-9) return false;
    }
  }
  detail = "R3 and R2+R2 at p in {1,3,4}: core = unit diagonal";
  return true;
}

// 7. full reconstruction round trip
bool criterion_7(std::string& detail) {
  std::vector<GroupoidCocycle> carriers = {
      trivial_groupoid_cocycle(pair_groupoid(2)),
      trivial_groupoid_cocycle(pair_groupoid(3)),
      trivial_groupoid_cocycle(
          disjoint_union(pair_groupoid(2), pair_groupoid(2))),
      r2_coboundary(),
      r3_coboundary(),
      r2r2_coboundary()};
  for (const GroupoidCocycle& sigma : carriers) {
    auto rt = weyl_roundtrip(sigma, 3.0);
    if (!rt.groupoid_iso()) return false;
    if (!rt.twist_class_match()) return false;
    if (!rt.twist_part.diagram_commutes) return false;
    if (!rt.twist_part.phase_consistent) return false;
  }
  detail = "6 carriers: groupoid_iso, twist_class_match, exact diagram";
  return true;
}

// 8. norm sandwich on random elements
bool criterion_8(std::string& detail) {
  auto sigma = r3_coboundary();
  const FiniteGroupoid& g = sigma.groupoid;
  std::mt19937_64 rng(7157);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  auto bs = bisections(g);
  for (int rep = 0; rep < 200; ++rep) {
    Vec c(g.n_arrows);
    for (int i = 0; i < g.n_arrows; ++i) c[i] = Cplx(u(rng), u(rng));
    GroupoidAlgElement f{sigma, c};
    double lo = sup_norm(f), hi = i_norm(f);
    for (double p : {1.0, 1.5, 3.0}) {
      auto est = reduced_norm(f, p, 7157);
      if (lo > est.lower + 1e-9) return false;
      if (est.lower > est.upper + 1e-12) return false;
      if (est.upper > hi + 1e-9) return false;
    }
    // a bisection-supported companion achieves the sup norm
    const Bisection& b = bs[rep % bs.size()];
    Vec cb = Vec::Zero(g.n_arrows);
    for (int a : b.arrows) cb[a] = Cplx(u(rng), u(rng));
    GroupoidAlgElement fb{sigma, cb};
    for (double p : {1.5, 3.0}) {
      auto est = reduced_norm(fb, p, 7157);
      if (std::abs(est.lower - sup_norm(fb)) > 1e-6) return false;
      if (std::abs(est.upper - sup_norm(fb)) > 1e-6) return false;
    }
  }
  detail = "200 elements, p in {1,1.5,3}; bisection-supported hit sup norm";
  return true;
}

// 9. power iteration against the grid oracle and rank-one values
bool criterion_9(std::string& detail) {
  std::mt19937_64 rng(7157);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int rep = 0; rep < 100; ++rep) {
    Mat m(3, 3);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) m(i, j) = Cplx(u(rng), u(rng));
    for (double p : {1.0, 1.7, 2.0, 3.0, kPInfinity}) {
      double oracle = pnorm_oracle(m, p);
      auto est = pnorm(m, p, 7157);
      if (std::abs(est.lower - oracle) > 1e-4) {
        detail = "oracle disagreement at rep " + std::to_string(rep);
        return false;
      }
    }
  }
  for (int rep = 0; rep < 20; ++rep) {
    Vec a(3), b(3);
    for (int i = 0; i < 3; ++i) {
      a[i] = Cplx(u(rng), u(rng));
      b[i] = Cplx(u(rng), u(rng));
    }
    for (double p : {1.3, 1.7, 3.0, 4.0}) {
      double q = p / (p - 1.0);
      double expect = vector_pnorm(a, p) * vector_pnorm(b, q);
      auto est = pnorm(Mat(a * b.adjoint()), p, 7157);
      if (std::abs(est.lower - expect) > 1e-6) {
        detail = "rank-one mismatch at rep " + std::to_string(rep);
        return false;
      }
    }
  }
  detail = "100 random 3x3 within 1e-4 of oracle; rank-one within 1e-6";
  return true;
}

// 10. box compressions of the lattice hopping operator
bool criterion_10(std::string& detail) {
  ExperimentConfig cfg;
  cfg.p = 2.0;
  cfg.seed = 7157;
  auto rep = cmd_nctorus_folner(0.0, {4, 8, 16}, cfg);
  if (rep["results"]["strictly_increasing"] != true) return false;
  for (const auto& row : rep["results"]["boxes"]) {
    int N = row["N"].get<int>();
    // independent oracle: the top eigenvalue of the path graph on 2N+1
    // vertices, doubled for the two lattice directions
    int side = 2 * N + 1;
    Mat path = Mat::Zero(side, side);
    for (int i = 0; i + 1 < side; ++i) path(i, i + 1) = path(i + 1, i) = 1.0;
    Eigen::SelfAdjointEigenSolver<Mat> es(path);
    double oracle = 2.0 * es.eigenvalues().maxCoeff();
    double closed_form = 4.0 * std::cos(std::numbers::pi / (2.0 * N + 2.0));
    if (std::abs(oracle - closed_form) > 1e-9) return false;
    if (std::abs(row["lower"].get<double>() - closed_form) > 1e-6) return false;
  }
  detail = "N = 4, 8, 16 increasing, matching 4 cos(pi/(2N+2))";
  return true;
}

}  // namespace

int main() {
  run_criterion(1, "cocycle axioms hold exactly on the corpus", 1.0, criterion_1);
  run_criterion(2, "isometry distance formula vs pnorm brackets", 60.0,
                criterion_2);
  run_criterion(3, "component groups separate Z4 from Z2xZ2", 10.0, criterion_3);
  run_criterion(4, "mu_2-phase families realize the Mackey group", 1.0,
                criterion_4);
  run_criterion(5, "rotation classes decided exactly on Z_N^2", 30.0,
                criterion_5);
  run_criterion(6, "self-adjoint core equals the unit diagonal", 60.0,
                criterion_6);
  run_criterion(7, "groupoid and twist reconstruction round trip", 120.0,
                criterion_7);
  run_criterion(8, "norm sandwich on random R3 elements", 60.0, criterion_8);
  run_criterion(9, "norm engine vs grid oracle and rank-one values", 120.0,
                criterion_9);
  run_criterion(10, "box compressions increase to the lattice norm", 30.0,
                criterion_10);
  if (failures) {
    std::printf("%d criterion(s) failed\n", failures);
    return 1;
  }
  std::printf("all criteria passed\n");
  return 0;
}
