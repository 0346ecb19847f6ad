#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <string>

#include "zonoreach/fixtures.hpp"
#include "zonoreach/scenario.hpp"
#include "zonoreach/serialize.hpp"

using namespace zonoreach;

namespace {

Matrix seeded_matrix(int rows, int cols, std::uint64_t seed, double scale = 1.0) {
  Rng rng(seed);
  Matrix m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = scale * rng.normal();
  return m;
}

Vector seeded_vector(int n, std::uint64_t seed) {
  Rng rng(seed);
  Vector v(n);
  for (int i = 0; i < n; ++i) v(i) = rng.normal();
  return v;
}

}  // namespace

TEST_CASE("zonotope JSON round-trip is bit exact") {
  const Zonotope z{seeded_vector(3, 1001), seeded_matrix(3, 5, 1002)};
  const Zonotope back = zonotope_from_json(to_json(z));
  CHECK((back.center - z.center).norm() == 0.0);
  CHECK((back.generators - z.generators).norm() == 0.0);

  // A point zonotope (no generators) survives the trip.
  const Zonotope pt{seeded_vector(2, 1003), Matrix(2, 0)};
  const Zonotope pt_back = zonotope_from_json(to_json(pt));
  CHECK(pt_back.generator_count() == 0);
  CHECK((pt_back.center - pt.center).norm() == 0.0);
}

TEST_CASE("constrained zonotope JSON round-trip keeps the constraints") {
  Matrix A(2, 4);
  A << 1.0, -0.5, 0.0, 2.0,
       0.0, 1.0, 1.0, -1.0;
  Vector b(2);
  b << 0.25, -0.125;
  const ConstrainedZonotope cz{seeded_vector(3, 1011), seeded_matrix(3, 4, 1012),
                               A, b};
  const ConstrainedZonotope back = constrained_from_json(to_json(cz));
  CHECK((back.Aeq - A).norm() == 0.0);
  CHECK((back.beq - b).norm() == 0.0);
  CHECK((back.generators - cz.generators).norm() == 0.0);
}

TEST_CASE("matrix zonotope JSON keeps both storage forms") {
  std::vector<Matrix> gens = {seeded_matrix(2, 3, 1021),
                              seeded_matrix(2, 3, 1022)};
  const MatrixZonotope dense =
      MatrixZonotope::dense(seeded_matrix(2, 3, 1023), gens);
  const MatrixZonotope dense_back = matrix_zonotope_from_json(to_json(dense));
  CHECK_FALSE(dense_back.factored());
  CHECK(dense_back.generator_count() == 2);
  CHECK((dense_back.generator(1) - gens[1]).norm() == 0.0);

  std::vector<Vector> left = {seeded_vector(2, 1024)};
  std::vector<Vector> right = {seeded_vector(3, 1025), seeded_vector(3, 1026)};
  const MatrixZonotope fac =
      MatrixZonotope::rank_one(seeded_matrix(2, 3, 1027), left, right);
  const MatrixZonotope fac_back = matrix_zonotope_from_json(to_json(fac));
  CHECK(fac_back.factored());
  CHECK(fac_back.generator_count() == 2);
  CHECK((fac_back.generator(1) - fac.generator(1)).norm() == 0.0);
}

TEST_CASE("identified model JSON round-trip") {
  IdentifiedModel model;
  model.msigma = MatrixZonotope::rank_one(
      seeded_matrix(2, 3, 1031), {seeded_vector(2, 1032)},
      {seeded_vector(3, 1033), seeded_vector(3, 1034)});
  model.H = seeded_matrix(2, 3, 1035);
  model.sigma_ratio = 0.125;
  const IdentifiedModel back = model_from_json(to_json(model));
  CHECK(back.sigma_ratio == 0.125);
  CHECK((back.H - model.H).norm() == 0.0);
  CHECK(back.msigma.factored());
  CHECK((back.msigma.center() - model.msigma.center()).norm() == 0.0);
}

TEST_CASE("reach run JSON round-trip preserves sets of both kinds") {
  ReachRun run;
  run.label = "l1_svd+intersect";
  run.P = seeded_matrix(2, 2, 1041);
  const Zonotope z{seeded_vector(2, 1042), seeded_matrix(2, 3, 1043)};
  run.sets.emplace_back(z);
  Matrix A(1, 3);
  A << 1.0, 0.0, -1.0;
  run.sets.emplace_back(
      ConstrainedZonotope{z.center, z.generators, A, Vector::Zero(1)});
  run.counts = {3, 3};
  run.raw_counts = {17};
  run.step_seconds = {0.5};
  run.total_seconds = 0.75;
  run.constraint_cap_hit = true;
  VolumeResult v;
  v.value = 2.5;
  v.method = VolumeResult::Method::montecarlo;
  v.sample_count = 1000;
  v.std_error = 0.01;
  run.volumes.push_back(v);

  const ReachRun back = reach_run_from_json(to_json(run));
  CHECK(back.label == run.label);
  CHECK(back.counts == run.counts);
  CHECK(back.raw_counts == run.raw_counts);
  CHECK(back.constraint_cap_hit);
  REQUIRE(back.sets.size() == 2);
  CHECK(std::holds_alternative<Zonotope>(back.sets[0]));
  REQUIRE(std::holds_alternative<ConstrainedZonotope>(back.sets[1]));
  CHECK((std::get<ConstrainedZonotope>(back.sets[1]).Aeq - A).norm() == 0.0);
  REQUIRE(back.volumes.size() == 1);
  CHECK(back.volumes[0].value == 2.5);
  CHECK(back.volumes[0].method == VolumeResult::Method::montecarlo);
}

TEST_CASE("malformed documents are rejected") {
  CHECK_THROWS(zonotope_from_json("not json at all"));
  CHECK_THROWS(zonotope_from_json("{\"center\": [0, 0]}"));  // no generators
  CHECK_THROWS(reach_run_from_json("{}"));
}

TEST_CASE("matrix CSV round-trips doubles exactly") {
  Matrix m(2, 3);
  m << 1.0 / 3.0, -2.5e-17, 3.0,
       9.007199254740993e15, -0.1, 5e300;
  const Matrix back = matrix_from_csv(matrix_to_csv(m));
  REQUIRE(back.rows() == 2);
  REQUIRE(back.cols() == 3);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 3; ++j) CHECK(back(i, j) == m(i, j));

  // The text itself is deterministic.
  CHECK(matrix_to_csv(m) == matrix_to_csv(m));
  CHECK_THROWS(matrix_from_csv("1,2\n3\n"));  // ragged rows
}

TEST_CASE("optimizer trace CSV has the documented columns") {
  OptTrace trace;
  trace.objective = {4.0, 2.0};
  trace.radius = {1.0, 0.5};
  trace.orthogonality = {1e-16, 2e-16};
  trace.start_offsets = {0};
  const std::string csv = trace_to_csv(trace);
  CHECK(csv.rfind("step,objective,radius,orthogonality\n", 0) == 0);
  CHECK(csv.find("\n0,") != std::string::npos);
  CHECK(csv.find("\n1,") != std::string::npos);
}

TEST_CASE("text files round-trip through the filesystem helpers") {
  const std::string path = "serialize_test_roundtrip.txt";
  const std::string content = "line1\nline2\n";
  write_text_file(path, content);
  CHECK(read_text_file(path) == content);
  std::remove(path.c_str());
  CHECK_THROWS(read_text_file("definitely/not/a/real/path.txt"));
}

TEST_CASE("scenario JSON round-trip preserves every configured field") {
  Scenario s = fixtures::benchmark5d_scenario();
  s.method = "riemannian";
  s.use_intersection = true;
  s.horizon = 7;
  s.volume.mc_samples = 12345;
  s.select.random_starts = 4;
  const Scenario back = scenario_from_json(to_json(s));
  CHECK(back.name == s.name);
  CHECK(back.seed == s.seed);
  CHECK(back.method == "riemannian");
  CHECK(back.use_intersection);
  CHECK(back.horizon == 7);
  CHECK(back.rho == s.rho);
  CHECK(back.volume.mc_samples == 12345);
  CHECK(back.select.random_starts == 4);
  CHECK((back.system.A - s.system.A).norm() == 0.0);
  CHECK((back.system.B - s.system.B).norm() == 0.0);
  CHECK((back.system.noise.generators - s.system.noise.generators).norm() == 0.0);
  CHECK((back.x0.center - s.x0.center).norm() == 0.0);
  CHECK((back.u.generators - s.u.generators).norm() == 0.0);
  CHECK(back.data.experiments == s.data.experiments);
  CHECK(back.data.samples_per_experiment == s.data.samples_per_experiment);
  CHECK(back.data.seed == s.data.seed);
  CHECK(back.data.input_range.dim() == s.data.input_range.dim());
  CHECK((back.data.input_range.generators - s.data.input_range.generators).norm() ==
        0.0);
}

TEST_CASE("scenario validation rejects dimension mismatches") {
  Scenario s = fixtures::benchmark5d_scenario();
  s.x0 = Zonotope{Vector::Zero(3), Matrix::Identity(3, 3)};
  CHECK_THROWS_AS(scenario_from_json(to_json(s)), DimensionError);
}
