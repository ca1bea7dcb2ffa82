// lptwist: batch front end for the twisted group/groupoid workbench.
// Subcommands validate inputs, run rigidity and reconstruction experiments,
// and expose the raw numeric engines.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "lptwist/reports.hpp"

namespace {

using namespace lptwist;

struct CommonOpts {
  double p = 3.0;
  std::int64_t seed = -1;
  double tol = 1e-9;
  int starts = 32;
  std::string format = "json";
  std::string out_path;
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
  cmd->add_option("--p", opts.p, "exponent of the l^p space");
  cmd->add_option("--seed", opts.seed,
                  "RNG seed (falls back to LPTWIST_SEED, then a fixed default)");
  cmd->add_option("--tol", opts.tol, "numeric tolerance");
  cmd->add_option("--starts", opts.starts, "random multistarts for norm bounds");
  cmd->add_option("--format", opts.format, "output format: json or csv")
      ->check(CLI::IsMember({"json", "csv"}));
  cmd->add_option("--out", opts.out_path, "write the report here instead of stdout");
}

ExperimentConfig to_config(const CommonOpts& opts) {
  ExperimentConfig cfg;
  cfg.p = opts.p;
  cfg.seed = opts.seed >= 0 ? std::uint64_t(opts.seed) : default_seed();
  cfg.tol = opts.tol;
  cfg.starts = opts.starts;
  return cfg;
}

void emit(const json& report, const CommonOpts& opts) {
  std::string text = opts.format == "csv" ? report_to_csv(report)
                                          : report.dump(2) + "\n";
  if (opts.out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(opts.out_path);
  if (!out) throw Error(ErrorKind::ParseError, "cannot write " + opts.out_path);
  out << text;
}

GroupCocycle load_group_cocycle(const std::string& path, const FiniteGroup& g) {
  if (path == "trivial") return trivial_group_cocycle(g);
  return group_cocycle_from_json(load_json_file(path), g);
}

GroupoidCocycle load_groupoid_cocycle(const std::string& path,
                                      const FiniteGroupoid& g) {
  if (path == "trivial") return trivial_groupoid_cocycle(g);
  return groupoid_cocycle_from_json(load_json_file(path), g);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"twisted group/groupoid l^p-operator workbench"};
  app.require_subcommand(1);

  CommonOpts opts;

  // validate <file>
  std::string validate_path;
  auto* validate = app.add_subcommand("validate", "validate a structure file");
  validate->add_option("file", validate_path, "input JSON")->required();
  add_common(validate, opts);

  // rigidity <groupA> <cocycleA> <groupB> <cocycleB>
  std::vector<std::string> rigidity_files;
  auto* rigidity = app.add_subcommand(
      "rigidity", "compare two twisted group algebras at p != 2");
  rigidity->add_option("files", rigidity_files,
                       "groupA cocycleA groupB cocycleB (cocycles may be "
                       "'trivial')")
      ->expected(4);
  add_common(rigidity, opts);

  // weyl <groupoid> <cocycle>
  std::vector<std::string> weyl_files;
  auto* weyl = app.add_subcommand(
      "weyl", "reconstruct a principal groupoid and its twist from the algebra");
  weyl->add_option("files", weyl_files, "groupoid cocycle ('trivial' allowed)")
      ->expected(2);
  add_common(weyl, opts);

  // nctorus
  int theta_num = 0, theta_den = 0;
  double theta_real = 0.0;
  std::vector<int> boxes;
  auto* nctorus = app.add_subcommand(
      "nctorus", "rotation-cocycle experiments on Z_N^2 or lattice boxes");
  nctorus->add_option("--theta-num", theta_num, "rotation numerator k");
  nctorus->add_option("--theta-den", theta_den,
                      "rotation denominator N (enables the finite quotient)");
  nctorus->add_option("--theta", theta_real, "real rotation angle (box mode)");
  nctorus->add_option("--folner", boxes,
                      "box sizes N for compressions to [-N, N]^2");
  add_common(nctorus, opts);

  // pnorm <matrix>
  std::string pnorm_path;
  auto* pnorm_cmd = app.add_subcommand("pnorm", "p->p norm bracket of a matrix");
  pnorm_cmd->add_option("file", pnorm_path, "matrix JSON (rows of [re, im])")
      ->required();
  add_common(pnorm_cmd, opts);

  // isometries <group> <cocycle>
  std::vector<std::string> iso_files;
  auto* iso = app.add_subcommand(
      "isometries", "enumerate the invertible isometries of a twisted algebra");
  iso->add_option("files", iso_files, "group cocycle ('trivial' allowed)")
      ->expected(2);
  add_common(iso, opts);

  // core <groupoid> <cocycle>
  std::vector<std::string> core_files;
  auto* core_cmd =
      app.add_subcommand("core", "compute the self-adjoint core of the algebra");
  core_cmd->add_option("files", core_files, "groupoid cocycle ('trivial' allowed)")
      ->expected(2);
  add_common(core_cmd, opts);

  CLI11_PARSE(app, argc, argv);

  try {
    ExperimentConfig cfg = to_config(opts);
    if (*validate) {
      emit(cmd_validate(load_json_file(validate_path), cfg), opts);
    } else if (*rigidity) {
      FiniteGroup ga = group_from_json(load_json_file(rigidity_files[0]));
      auto sa = load_group_cocycle(rigidity_files[1], ga);
      FiniteGroup gb = group_from_json(load_json_file(rigidity_files[2]));
      auto sb = load_group_cocycle(rigidity_files[3], gb);
      emit(cmd_rigidity(sa, sb, cfg), opts);
    } else if (*weyl) {
      FiniteGroupoid g = groupoid_from_json(load_json_file(weyl_files[0]));
      emit(cmd_weyl_roundtrip(load_groupoid_cocycle(weyl_files[1], g), cfg),
           opts);
    } else if (*nctorus) {
      if (theta_den > 0) {
        emit(cmd_nctorus_quotient(theta_num, theta_den, cfg), opts);
      } else if (!boxes.empty()) {
        emit(cmd_nctorus_folner(theta_real, boxes, cfg), opts);
      } else {
        throw Error(ErrorKind::BadTheta,
                    "choose --theta-den N (quotient) or --folner N... (boxes)");
      }
    } else if (*pnorm_cmd) {
      emit(cmd_pnorm(matrix_from_json(load_json_file(pnorm_path)), cfg), opts);
    } else if (*iso) {
      FiniteGroup g = group_from_json(load_json_file(iso_files[0]));
      emit(cmd_isometries(load_group_cocycle(iso_files[1], g), cfg), opts);
    } else if (*core_cmd) {
      FiniteGroupoid g = groupoid_from_json(load_json_file(core_files[0]));
      emit(cmd_core(load_groupoid_cocycle(core_files[1], g), cfg), opts);
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
