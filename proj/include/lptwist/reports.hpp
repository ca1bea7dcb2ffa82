#pragma once

#include <chrono>
#include <string>
#include <vector>

#include "lptwist/commutant.hpp"
#include "lptwist/core.hpp"
#include "lptwist/isometry_group.hpp"
#include "lptwist/json_io.hpp"
#include "lptwist/weyl.hpp"

namespace lptwist {

struct ExperimentConfig {
  double p = 3.0;
  std::uint64_t seed = default_seed();
  double tol = 1e-9;
  int starts = 32;
  std::int64_t search_modulus = 0;  // cohomology search order override

  json to_json() const {
    return json{{"p", p},
                {"seed", seed},
                {"tol", tol},
                {"starts", starts},
                {"search_modulus", search_modulus}};
  }
};

// Reports carry the command echo, provenance and a deterministic results
// subtree; wall time lives outside "results" so identical configs produce
// byte-identical results.
class Report {
 public:
  Report(const std::string& command, const ExperimentConfig& cfg) {
    doc_["command"] = command;
    doc_["config"] = cfg.to_json();
    doc_["results"] = json::object();
    start_ = std::chrono::steady_clock::now();
  }

  json& results() { return doc_["results"]; }

  json finish() {
    auto end = std::chrono::steady_clock::now();
    doc_["wall_time_ms"] =
        std::chrono::duration_cast<std::chrono::milliseconds>(end - start_)
            .count();
    return doc_;
  }

 private:
  json doc_;
  std::chrono::steady_clock::time_point start_;
};

// ---- validate ---------------------------------------------------------------

// Dispatches on the document shape: group, groupoid, or cocycle with an
// embedded carrier.
inline json cmd_validate(const json& input, const ExperimentConfig& cfg) {
  Report rep("validate", cfg);
  json& res = rep.results();
  try {
    if (input.contains("mul") && input.contains("n")) {
      FiniteGroup g = group_from_json(input);
      res["kind"] = "group";
      res["ok"] = true;
      res["n"] = g.n;
      res["identity"] = g.e;
    } else if (input.contains("arrows")) {
      FiniteGroupoid g = groupoid_from_json(input);
      auto props = groupoid_properties(g);
      res["kind"] = "groupoid";
      res["ok"] = true;
      res["arrows"] = g.n_arrows;
      res["units"] = g.units;
      res["principal"] = props.is_principal;
      res["effective"] = props.is_effective;
    } else if (input.contains("exp") && input.contains("group")) {
      FiniteGroup g = group_from_json(input.at("group"));
      group_cocycle_from_json(input, g);
      res["kind"] = "group-cocycle";
      res["ok"] = true;
    } else if (input.contains("exp") && input.contains("groupoid")) {
      FiniteGroupoid g = groupoid_from_json(input.at("groupoid"));
      groupoid_cocycle_from_json(input, g);
      res["kind"] = "groupoid-cocycle";
      res["ok"] = true;
    } else {
      throw Error(ErrorKind::ParseError,
                  "unrecognized document; expected a group, groupoid, or "
                  "cocycle with embedded carrier");
    }
  } catch (const Error& e) {
    res["ok"] = false;
    res["error"] = e.what();
  }
  return rep.finish();
}

// ---- rigidity ----------------------------------------------------------------

// Computes the component groups of the invertible isometries on both sides,
// tests them for isomorphism, and when isomorphic scans base-group
// isomorphisms for a cocycle-class match. Verdicts are symmetric in the
// argument order.
inline json cmd_rigidity(const GroupCocycle& sigma, const GroupCocycle& kappa,
                         const ExperimentConfig& cfg) {
  if (cfg.p == 2.0)
    throw Error(ErrorKind::BadExponent,
                "rigidity needs p != 2 (isometries are too plentiful on l^2)");
  Report rep("rigidity", cfg);
  json& res = rep.results();

  auto pi0_of = [&](const GroupCocycle& s, json& side) -> FiniteGroup {
    std::vector<Mat> gens;
    for (int g = 0; g < s.group.n; ++g)
      gens.push_back(left_translation_matrix(s, g));
    if (s.group.n <= 6) {
      auto dc = double_commutant(gens);
      auto iso = isometries_in_algebra(dc, cfg.p, cfg.tol);
      side["pi0_method"] = "enumeration";
      side["families"] = int(iso.families.size());
      side["bicommutant_dim"] = int(dc.size());
      side["span_dim"] = s.group.n;
      if (int(dc.size()) != s.group.n)
        side["dimension_note"] =
            "bicommutant dimension differs from the translation span";
      return iso.pi0;
    }
    side["pi0_method"] = "theorem-backed (enumeration capped at dimension 6)";
    side["families"] = s.group.n;
    return s.group;
  };

  json side_a = json::object(), side_b = json::object();
  FiniteGroup pa = pi0_of(sigma, side_a);
  FiniteGroup pb = pi0_of(kappa, side_b);
  res["left"] = side_a;
  res["right"] = side_b;

  if (!is_isomorphic(pa, pb)) {
    res["verdict"] = "OBSTRUCTED";
    res["obstruction"] = "pi0 groups are not isomorphic";
    return rep.finish();
  }
  res["pi0_isomorphic"] = true;

  // scan base-group isomorphisms for a cohomologous pullback
  bool all_certified = true;
  for (const auto& psi : all_isomorphisms(sigma.group, kappa.group)) {
    std::vector<std::vector<UnitScalar>> pulled(
        sigma.group.n, std::vector<UnitScalar>(sigma.group.n));
    for (int x = 0; x < sigma.group.n; ++x)
      for (int y = 0; y < sigma.group.n; ++y)
        pulled[x][y] = kappa.at(psi[x], psi[y]);
    auto kappa_pulled = validate_group_cocycle(sigma.group, pulled);
    auto verdict = are_cohomologous(sigma, kappa_pulled, cfg.search_modulus);
    if (verdict.cohomologous()) {
      res["verdict"] = "ISOMETRIC-ISO-POSSIBLE";
      res["witness"] = {{"gamma", coboundary_to_json(*verdict.gamma)},
                        {"group_isomorphism", psi},
                        {"induced_map", "f(x) -> gamma(x) f(x)"},
                        {"modulus_used", verdict.modulus_used}};
      return rep.finish();
    }
    all_certified = all_certified && verdict.certified_negative;
  }
  res["verdict"] = "OBSTRUCTED";
  res["obstruction"] = "cocycle classes differ under every group isomorphism";
  res["negative_certified"] = all_certified;
  return rep.finish();
}

// ---- weyl roundtrip ----------------------------------------------------------

inline json cmd_weyl_roundtrip(const GroupoidCocycle& sigma,
                               const ExperimentConfig& cfg) {
  Report rep("weyl", cfg);
  auto rt = weyl_roundtrip(sigma, cfg.p);
  json& res = rep.results();
  res["groupoid_iso"] = rt.groupoid_iso();
  res["theta"] = rt.groupoid_part.theta;
  json germs = json::array();
  for (const auto& [x, y] : rt.groupoid_part.germ.germs)
    germs.push_back(json::array({x, y}));
  res["germs"] = germs;
  res["twist_class_match"] = rt.twist_class_match();
  res["diagram_commutes"] = rt.twist_part.diagram_commutes;
  res["phase_consistent"] = rt.twist_part.phase_consistent;
  res["extracted_cocycle"] = groupoid_cocycle_to_json(rt.twist_part.extracted);
  res["class_note"] = rt.twist_part.class_verdict.note;
  return rep.finish();
}

// ---- noncommutative torus experiments ----------------------------------------

// finite-quotient mode: the rotation cocycle on Z_N x Z_N
inline json cmd_nctorus_quotient(int k, int N, const ExperimentConfig& cfg) {
  if (N < 1) throw Error(ErrorKind::BadTheta, "theta denominator must be >= 1");
  Report rep("nctorus-quotient", cfg);
  json& res = rep.results();
  res["model"] = "finite quotient Z_N^2 (a discretization, not the full "
                 "integer-lattice algebra)";
  res["N"] = N;
  res["k"] = k;

  auto sigma = rotation_cocycle(N, k);
  const FiniteGroup& g = sigma.group;

  // class against the untwisted table
  auto verdict = are_cohomologous(sigma, trivial_group_cocycle(g));
  res["cohomologous_to_trivial"] = verdict.cohomologous();
  res["class_note"] = verdict.note;

  // generator relation: lambda(d10) lambda(d01) = zeta lambda(d01) lambda(d10)
  int u_gen = 1 * N + 0, v_gen = 0 * N + 1;
  auto lu = exact_left_translation(sigma, u_gen);
  auto lv = exact_left_translation(sigma, v_gen);
  UnitScalar zeta = UnitScalar::root_of_unity(k, N);
  res["generator_relation_exact"] = (lu * lv) == (lv * lu).scaled(zeta);

  // p-norm table for f = U + V + U^-1 + V^-1
  Vec c = Vec::Zero(g.n);
  c[u_gen] += 1.0;
  c[v_gen] += 1.0;
  c[g.inv[u_gen]] += 1.0;
  c[g.inv[v_gen]] += 1.0;
  GroupAlgElement f{g, c};
  Mat lam = left_regular_matrix(f, sigma).matrix;
  json table = json::array();
  for (double p : {1.0, cfg.p, 2.0}) {
    auto est = pnorm(lam, p, cfg.seed, cfg.starts);
    table.push_back({{"p", p}, {"norm", norm_estimate_to_json(est)}});
  }
  res["hopping_norms"] = table;
  return rep.finish();
}

// Folner-box mode: the hopping operator compressed to [-N, N]^2 inside the
// integer lattice; norms are reported strictly as lower bounds
inline json cmd_nctorus_folner(double theta, const std::vector<int>& boxes,
                               const ExperimentConfig& cfg) {
  Report rep("nctorus-folner", cfg);
  json& res = rep.results();
  res["theta"] = theta;
  res["note"] = "compressions give lower bounds only; no convergence rate is claimed";

  const double two_pi = 2.0 * std::numbers::pi;
  json rows = json::array();
  double prev = -1.0;
  bool increasing = true;
  for (int N : boxes) {
    if (N < 1) throw Error(ErrorKind::BadTheta, "box size must be >= 1");
    int side = 2 * N + 1;
    int dim = side * side;
    auto idx = [&](int i, int j) { return (i + N) * side + (j + N); };
    Mat m = Mat::Zero(dim, dim);
    const int dirs[4][2] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
    for (int zi = -N; zi <= N; ++zi)
      for (int zj = -N; zj <= N; ++zj)
        for (const auto& d : dirs) {
          int xi = zi + d[0], xj = zj + d[1];
          if (xi < -N || xi > N || xj < -N || xj > N) continue;
          // sigma_theta((m,n),(p,q)) = exp(2 pi i theta m q)
          m(idx(xi, xj), idx(zi, zj)) =
              std::polar(1.0, two_pi * theta * d[0] * zj);
        }
    double lower;
    std::string method;
    if (cfg.p == 2.0) {
      // hermitian compression: exact via the spectrum
      Eigen::SelfAdjointEigenSolver<Mat> es(m);
      lower = std::max(std::abs(es.eigenvalues().minCoeff()),
                       std::abs(es.eigenvalues().maxCoeff()));
      method = "exact";
    } else {
      auto est = pnorm(m, cfg.p, cfg.seed, cfg.starts);
      lower = est.lower;
      method = est.method;
    }
    if (lower <= prev) increasing = false;
    prev = lower;
    rows.push_back({{"N", N}, {"lower", lower}, {"method", method}});
  }
  res["boxes"] = rows;
  res["strictly_increasing"] = increasing;
  return rep.finish();
}

// ---- direct numeric commands ---------------------------------------------------

inline json cmd_pnorm(const Mat& m, const ExperimentConfig& cfg) {
  Report rep("pnorm", cfg);
  auto est = pnorm(m, cfg.p, cfg.seed, cfg.starts);
  rep.results() = {{"rows", m.rows()},
                   {"cols", m.cols()},
                   {"estimate", norm_estimate_to_json(est)}};
  return rep.finish();
}

inline json cmd_isometries(const GroupCocycle& sigma,
                           const ExperimentConfig& cfg) {
  Report rep("isometries", cfg);
  std::vector<Mat> gens;
  for (int g = 0; g < sigma.group.n; ++g)
    gens.push_back(left_translation_matrix(sigma, g));
  auto dc = double_commutant(gens);
  auto iso = isometries_in_algebra(dc, cfg.p, cfg.tol);
  json& res = rep.results();
  res["bicommutant_dim"] = int(dc.size());
  res["span_dim"] = sigma.group.n;
  json fams = json::array();
  for (const auto& fam : iso.families)
    fams.push_back({{"permutation", fam.base.phi},
                    {"multiplier", vec_to_json(fam.base.f)},
                    {"phase_free", fam.phase_free}});
  res["families"] = fams;
  res["pi0"] = group_to_json(iso.pi0);
  res["pi0_isomorphic_to_base"] = is_isomorphic(iso.pi0, sigma.group);
  return rep.finish();
}

inline json cmd_core(const GroupoidCocycle& sigma, const ExperimentConfig& cfg) {
  Report rep("core", cfg);
  std::vector<Mat> basis;
  for (int a = 0; a < sigma.groupoid.n_arrows; ++a)
    basis.push_back(groupoid_full_rep(delta(sigma, a)));
  auto core = core_basis(basis, cfg.p, 1e-7, cfg.seed);
  json& res = rep.results();
  res["complex_dim"] = core.complex_dim;
  res["units"] = int(sigma.groupoid.units.size());
  res["conclusive"] = core.conclusive;
  res["equals_unit_diagonal"] =
      core.conclusive && core.complex_dim == int(sigma.groupoid.units.size());
  if (!core.note.empty()) res["note"] = core.note;
  return rep.finish();
}

// ---- CSV flattening -------------------------------------------------------------

inline void flatten_json(const json& j, const std::string& prefix,
                         std::string& out) {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it)
      flatten_json(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(),
                   out);
  } else if (j.is_array()) {
    for (size_t i = 0; i < j.size(); ++i)
      flatten_json(j[i], prefix + "[" + std::to_string(i) + "]", out);
  } else {
    out += prefix + "," + j.dump() + "\n";
  }
}

inline std::string report_to_csv(const json& report) {
  std::string out = "key,value\n";
  flatten_json(report, "", out);
  return out;
}

}  // namespace lptwist
