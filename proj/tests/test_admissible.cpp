#include <doctest.h>

#include <algorithm>
#include <numbers>
#include <random>
#include <set>

#include <Eigen/Dense>

#include "endlab/admissible.hpp"
#include "endlab/error.hpp"
#include "endlab/fixtures.hpp"
#include "endlab/surface_group.hpp"
#include "oracles.hpp"

using namespace endlab;

namespace {

constexpr double kPi = std::numbers::pi;

CellSurface uniform(const CellSurface& s, double t) { return s.with_weights(std::vector<double>(s.num_edges(), t)); }

// pi/2 plus a random perturbation that keeps every face sum fixed.
std::vector<double> face_preserving_weights(const CellSurface& s, std::mt19937_64& rng, double size) {
  Eigen::MatrixXd inc = Eigen::MatrixXd::Zero(s.num_faces(), s.num_edges());
  for (int f = 0; f < s.num_faces(); ++f)
    for (int d : s.face_darts(f)) inc(f, d >> 1) += 1;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(inc, Eigen::ComputeFullV);
  const long rank = svd.rank();
  const Eigen::MatrixXd null = svd.matrixV().rightCols(s.num_edges() - rank);
  std::normal_distribution<double> n;
  Eigen::VectorXd c(null.cols());
  for (long k = 0; k < c.size(); ++k) c[k] = n(rng);
  Eigen::VectorXd delta = null * c;
  delta *= size / delta.cwiseAbs().maxCoeff();
  std::vector<double> w(s.num_edges());
  for (int e = 0; e < s.num_edges(); ++e) w[e] = kPi / 2 + delta[e];
  return w;
}

}  // namespace

TEST_SUITE("admissible") {
  TEST_CASE("Thurston pattern passes") {
    for (const CellSurface& nerve : {fixtures::tetrahedron(), fixtures::icosahedron(), fixtures::genus2()}) {
      const auto r = validate_admissible(thurston_pattern(nerve));
      CHECK(r.pass());
      for (double t : r.face_sums) CHECK(std::abs(t - 2 * kPi) <= 1e-12);
      CHECK(r.max_cycle == 12);
    }
  }

  TEST_CASE("perturbed face sum fails with the face as witness") {
    const CellSurface p = thurston_pattern(fixtures::tetrahedron());
    std::vector<double> w = p.weights();
    const int e = p.face_darts(3)[0] >> 1;
    w[e] += 0.1;
    const auto r = validate_admissible(p.with_weights(w));
    CHECK_FALSE(r.pass());
    std::set<int> faces;
    for (const auto& v : r.violations)
      if (v.kind == "face-sum") faces.insert(v.face);
    CHECK(faces == std::set<int>{p.face(2 * e), p.face(2 * e + 1)});
  }

  TEST_CASE("weights out of range") {
    CellSurface t = fixtures::tetrahedron();
    CHECK_THROWS_WITH_AS(validate_admissible(t), "surface has no edge weights", Error);
  }

  TEST_CASE("short contractible cycle on the genus-2 fixture") {
    // Uniform 2pi/3 on the plain fixture: every short cycle is facial or essential.
    CHECK(validate_admissible(uniform(fixtures::genus2(), 2 * kPi / 3)).pass());
    // After the stellar subdivision the old boundary of face 0 is a contractible
    // 3-cycle that bounds no face, with sum exactly 2pi.
    const CellSurface s = uniform(fixtures::genus2_stellar(), 2 * kPi / 3);
    const auto r = validate_admissible(s);
    REQUIRE(r.violations.size() == 1);
    const Violation& v = r.violations[0];
    CHECK(v.kind == "cycle");
    CHECK(v.darts.size() == 3);
    CHECK(v.sum == doctest::Approx(2 * kPi));
    std::set<int> witness, old_face;
    for (int d : v.darts) witness.insert(d >> 1);
    const CellSurface g = fixtures::genus2();
    for (int d : g.face_darts(0)) old_face.insert(d >> 1);
    CHECK(witness == old_face);
  }

  TEST_CASE("admissibility agrees with brute-force enumeration") {
    std::mt19937_64 rng(31);
    int fails = 0, passes = 0;
    for (int k = 0; k < 24; ++k) {
      const CellSurface nerve = k % 3 == 0 ? fixtures::tetrahedron() : k % 3 == 1 ? fixtures::octahedron() : fixtures::genus2();
      const CellSurface p = thurston_pattern(nerve);
      const CellSurface s = p.with_weights(face_preserving_weights(p, rng, 0.3 + 0.25 * (k % 5)));
      const EdgeLabeling lab(s);
      AdmissibleOptions opt;
      opt.max_cycle = 6;
      const bool expected =
          oracle::admissible_brute_force(s, s.weights(), 6, [&](const std::vector<int>& c) { return lab.contractible(c); });
      const bool got = validate_admissible(s, opt).pass();
      CHECK(got == expected);
      (expected ? passes : fails)++;
    }
    // The sample exercises both outcomes.
    CHECK(passes > 0);
    CHECK(fails > 0);
  }

  TEST_CASE("hyperideal conditions") {
    // Triangulation with all weights near pi: every dual 3-cycle sums to about 3pi.
    CHECK(validate_hyperideal(uniform(fixtures::icosahedron(), kPi - 0.05)).pass());
    // Right angles on a surface whose dual has 4-cycles: the sum is exactly 2pi.
    const auto r = validate_hyperideal(uniform(fixtures::octahedron(), kPi / 2));
    CHECK_FALSE(r.pass());
    CHECK(std::any_of(r.violations.begin(), r.violations.end(), [](const Violation& v) {
      return v.kind == "dual-cycle" && v.darts.size() == 4 && std::abs(v.sum - 2 * kPi) < 1e-12;
    }));
  }

  TEST_CASE("hyperideal verdicts agree with brute-force enumeration") {
    std::mt19937_64 rng(77);
    int fails = 0, passes = 0;
    for (int k = 0; k < 40; ++k) {
      const CellSurface base = k % 2 ? fixtures::octahedron() : fixtures::icosahedron();
      std::uniform_real_distribution<double> u(k % 2 ? 1.4 : 1.1, 3.0);
      std::vector<double> w(base.num_edges());
      for (double& x : w) x = u(rng);
      const CellSurface s = base.with_weights(w);
      AdmissibleOptions opt;
      opt.max_cycle = 5;
      const bool expected = oracle::hyperideal_brute_force_sphere(s, w, 5);
      CHECK(validate_hyperideal(s, opt).pass() == expected);
      (expected ? passes : fails)++;
    }
    CHECK(passes > 0);
    CHECK(fails > 0);
  }

  TEST_CASE("cycle enumeration") {
    const CellSurface t = fixtures::tetrahedron();
    const std::vector<double> w(6, 1.0);
    // K4: four triangles and three 4-cycles.
    const auto c = enumerate_cycles(t, w, 4, 100.0, true);
    CHECK(std::count_if(c.begin(), c.end(), [](const auto& x) { return x.size() == 3; }) == 4);
    CHECK(std::count_if(c.begin(), c.end(), [](const auto& x) { return x.size() == 4; }) == 3);
    // The sum bound prunes.
    CHECK(enumerate_cycles(t, w, 4, 3.5, true).size() == 4);
    // Closed walks include the figure-eight style repeats once non-simple cycles are allowed.
    CHECK(enumerate_cycles(t, w, 6, 100.0, false).size() > enumerate_cycles(t, w, 6, 100.0, true).size());
  }
}
