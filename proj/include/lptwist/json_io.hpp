#pragma once

#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "lptwist/algebra.hpp"
#include "lptwist/cocycle.hpp"
#include "lptwist/errors.hpp"
#include "lptwist/group.hpp"
#include "lptwist/groupoid.hpp"
#include "lptwist/pnorm.hpp"

namespace lptwist {

using json = nlohmann::json;

inline json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::ParseError, "cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw Error(ErrorKind::ParseError, path + ": " + e.what());
  }
  return j;
}

// ---- structures ------------------------------------------------------------

inline json group_to_json(const FiniteGroup& g) {
  return json{{"n", g.n}, {"mul", g.mul}};
}

inline FiniteGroup group_from_json(const json& j) {
  if (!j.contains("n") || !j.contains("mul"))
    throw Error(ErrorKind::ParseError, "group wants {\"n\", \"mul\"}");
  auto mul = j.at("mul").get<std::vector<std::vector<int>>>();
  if (int(mul.size()) != j.at("n").get<int>())
    throw Error(ErrorKind::ParseError, "group: n and mul disagree");
  return build_group(mul);
}

inline json groupoid_to_json(const FiniteGroupoid& g) {
  std::vector<std::vector<int>> mul;
  for (int a = 0; a < g.n_arrows; ++a)
    for (int b = 0; b < g.n_arrows; ++b)
      if (g.mul[a][b] >= 0) mul.push_back({a, b, g.mul[a][b]});
  return json{{"arrows", g.n_arrows}, {"units", g.units}, {"s", g.src},
              {"r", g.rng},           {"mul", mul},       {"inv", g.inv}};
}

inline FiniteGroupoid groupoid_from_json(const json& j) {
  for (const char* key : {"arrows", "units", "s", "r", "mul", "inv"})
    if (!j.contains(key))
      throw Error(ErrorKind::ParseError,
                  std::string("groupoid is missing \"") + key + "\"");
  return build_groupoid(j.at("arrows").get<int>(),
                        j.at("units").get<std::vector<int>>(),
                        j.at("s").get<std::vector<int>>(),
                        j.at("r").get<std::vector<int>>(),
                        j.at("mul").get<std::vector<std::vector<int>>>(),
                        j.at("inv").get<std::vector<int>>());
}

// ---- scalars and cocycles --------------------------------------------------

inline json unit_scalar_to_json(const UnitScalar& u) {
  if (u.is_exact()) return json{{"k", u.numerator()}, {"m", u.denominator()}};
  return json{{"re", u.value().real()}, {"im", u.value().imag()}};
}

inline UnitScalar unit_scalar_from_json(const json& j) {
  if (j.contains("k") && j.contains("m"))
    return UnitScalar::root_of_unity(j.at("k").get<std::int64_t>(),
                                     j.at("m").get<std::int64_t>());
  if (j.contains("re") && j.contains("im"))
    return UnitScalar::from_complex(
        {j.at("re").get<double>(), j.at("im").get<double>()});
  throw Error(ErrorKind::ParseError, "unit scalar wants {k,m} or {re,im}");
}

inline json group_cocycle_to_json(const GroupCocycle& sigma) {
  std::int64_t m = sigma.modulus();
  std::vector<std::vector<std::int64_t>> exp(
      sigma.group.n, std::vector<std::int64_t>(sigma.group.n));
  for (int x = 0; x < sigma.group.n; ++x)
    for (int y = 0; y < sigma.group.n; ++y) {
      const UnitScalar& v = sigma.at(x, y);
      exp[x][y] = v.numerator() * (m / v.denominator());
    }
  return json{{"m", m}, {"exp", exp}};
}

inline GroupCocycle group_cocycle_from_json(const json& j,
                                            const FiniteGroup& g) {
  if (!j.contains("m") || !j.contains("exp"))
    throw Error(ErrorKind::ParseError, "cocycle wants {\"m\", \"exp\"}");
  std::int64_t m = j.at("m").get<std::int64_t>();
  auto exp = j.at("exp").get<std::vector<std::vector<std::int64_t>>>();
  if (int(exp.size()) != g.n)
    throw Error(ErrorKind::ParseError, "cocycle table size mismatch");
  std::vector<std::vector<UnitScalar>> t(g.n, std::vector<UnitScalar>(g.n));
  for (int x = 0; x < g.n; ++x) {
    if (int(exp[x].size()) != g.n)
      throw Error(ErrorKind::ParseError, "cocycle table size mismatch");
    for (int y = 0; y < g.n; ++y)
      t[x][y] = UnitScalar::root_of_unity(exp[x][y], m);
  }
  return validate_group_cocycle(g, t);
}

inline json groupoid_cocycle_to_json(const GroupoidCocycle& sigma) {
  std::int64_t m = sigma.modulus();
  std::vector<std::vector<std::int64_t>> exp;
  const FiniteGroupoid& g = sigma.groupoid;
  for (int a = 0; a < g.n_arrows; ++a)
    for (int b = 0; b < g.n_arrows; ++b)
      if (g.composable(a, b)) {
        const UnitScalar& v = sigma.at(a, b);
        exp.push_back({a, b, v.numerator() * (m / v.denominator())});
      }
  return json{{"m", m}, {"exp", exp}};
}

inline GroupoidCocycle groupoid_cocycle_from_json(const json& j,
                                                  const FiniteGroupoid& g) {
  if (!j.contains("m") || !j.contains("exp"))
    throw Error(ErrorKind::ParseError, "cocycle wants {\"m\", \"exp\"}");
  std::int64_t m = j.at("m").get<std::int64_t>();
  std::vector<std::vector<UnitScalar>> t(
      g.n_arrows, std::vector<UnitScalar>(g.n_arrows));
  for (const auto& row : j.at("exp")) {
    if (!row.is_array() || row.size() != 3)
      throw Error(ErrorKind::ParseError, "cocycle rows must be [a, b, e]");
    int a = row[0].get<int>(), b = row[1].get<int>();
    if (a < 0 || a >= g.n_arrows || b < 0 || b >= g.n_arrows ||
        !g.composable(a, b))
      throw Error(ErrorKind::ParseError, "cocycle entry off the composable set");
    t[a][b] = UnitScalar::root_of_unity(row[2].get<std::int64_t>(), m);
  }
  return validate_groupoid_cocycle(g, t);
}

inline json coboundary_to_json(const Coboundary& cb) {
  std::int64_t m = 1;
  for (const auto& v : cb.gamma) {
    if (!v.is_exact()) {
      json arr = json::array();
      for (const auto& u : cb.gamma) arr.push_back(unit_scalar_to_json(u));
      return json{{"gamma", arr}};
    }
    m = std::lcm(m, v.denominator());
  }
  std::vector<std::int64_t> exp;
  for (const auto& v : cb.gamma)
    exp.push_back(v.numerator() * (m / v.denominator()));
  return json{{"m", m}, {"exp", exp}};
}

// ---- vectors and matrices --------------------------------------------------

inline json complex_to_json(Cplx z) { return json::array({z.real(), z.imag()}); }

inline json vec_to_json(const Vec& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(complex_to_json(v[i]));
  return out;
}

inline Vec vec_from_json(const json& j) {
  Vec out(j.size());
  for (size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_array() || j[i].size() != 2)
      throw Error(ErrorKind::ParseError, "coefficients must be [re, im] pairs");
    out[i] = Cplx(j[i][0].get<double>(), j[i][1].get<double>());
  }
  return out;
}

inline json matrix_to_json(const Mat& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      row.push_back(complex_to_json(m(i, j)));
    rows.push_back(row);
  }
  return rows;
}

inline Mat matrix_from_json(const json& j) {
  if (!j.is_array() || j.empty())
    throw Error(ErrorKind::ParseError, "matrix must be a nonempty array of rows");
  size_t cols = j[0].size();
  Mat m(j.size(), cols);
  for (size_t r = 0; r < j.size(); ++r) {
    if (j[r].size() != cols)
      throw Error(ErrorKind::ParseError, "ragged matrix rows");
    for (size_t c = 0; c < cols; ++c)
      m(r, c) = Cplx(j[r][c][0].get<double>(), j[r][c][1].get<double>());
  }
  return m;
}

inline std::string matrix_to_csv(const Mat& m) {
  std::string out;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j) out += ",";
      out += std::to_string(m(i, j).real()) + "+" +
             std::to_string(m(i, j).imag()) + "i";
    }
    out += "\n";
  }
  return out;
}

inline json norm_estimate_to_json(const NormEstimate& e) {
  return json{{"lower", e.lower},
              {"upper", e.upper},
              {"method", e.method},
              {"iterations", e.iterations}};
}

}  // namespace lptwist
