#include <catch2/catch_amalgamated.hpp>
#include <random>

#include "lptwist/algebra.hpp"
#include "lptwist/commutant.hpp"

using namespace lptwist;

namespace {

bool commutes_with_all(const Mat& x, const std::vector<Mat>& mats) {
  for (const Mat& m : mats)
    if ((x * m - m * x).cwiseAbs().maxCoeff() > 1e-9) return false;
  return true;
}

}  // namespace

TEST_CASE("commutant of the identity is the full matrix space") {
  auto basis = commutant({Mat::Identity(3, 3)});
  CHECK(basis.size() == 9);
}

TEST_CASE("commutant basis is orthonormal and actually commutes") {
  auto sigma = trivial_group_cocycle(cyclic_group(3));
  std::vector<Mat> gens;
  for (int g = 0; g < 3; ++g) gens.push_back(left_translation_matrix(sigma, g));
  auto basis = commutant(gens);
  for (size_t i = 0; i < basis.size(); ++i) {
    CHECK(commutes_with_all(basis[i], gens));
    for (size_t j = 0; j < basis.size(); ++j) {
      Cplx ip = (basis[i].adjoint() * basis[j]).trace();
      CHECK(std::abs(ip - (i == j ? Cplx(1.0) : Cplx(0.0))) < 1e-9);
    }
  }
}

TEST_CASE("double commutant of the Z3 translations has dimension 3") {
  auto sigma = trivial_group_cocycle(cyclic_group(3));
  std::vector<Mat> gens;
  for (int g = 0; g < 3; ++g) gens.push_back(left_translation_matrix(sigma, g));
  // abelian: commutant is the algebra itself (circulants), dimension 3
  CHECK(commutant(gens).size() == 3);
  auto dc = double_commutant(gens);
  CHECK(dc.size() == 3);
  // the span contains every translation
  for (int g = 0; g < 3; ++g) {
    Mat target = left_translation_matrix(sigma, g);
    Mat proj = Mat::Zero(3, 3);
    for (const Mat& b : dc) proj += (b.adjoint() * target).trace() * b;
    CHECK((proj - target).cwiseAbs().maxCoeff() < 1e-9);
  }
}

TEST_CASE("sign-twisted left translations commute with the conjugate right ones") {
  auto sigma = sign_cocycle();
  std::vector<Mat> rights;
  for (int y = 0; y < 2; ++y)
    rights.push_back(right_regular_matrix(sigma, y).matrix);
  auto c = commutant(rights);
  // the commutant of the right representation contains both left translations
  for (int z = 0; z < 2; ++z) {
    Mat l = left_translation_matrix(sigma, z);
    CHECK(commutes_with_all(l, rights));
  }
  CHECK(c.size() == 2);
}

TEST_CASE("random element of the computed commutant commutes") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  auto sigma = rotation_cocycle(2, 1);
  std::vector<Mat> gens;
  for (int g = 0; g < sigma.group.n; ++g)
    gens.push_back(left_translation_matrix(sigma, g));
  auto basis = commutant(gens);
  Mat x = Mat::Zero(4, 4);
  for (const Mat& b : basis) x += Cplx(u(rng), u(rng)) * b;
  CHECK(commutes_with_all(x, gens));
}
