#include "bjlevel/io.hpp"

#include <doctest.h>

#include <cstdlib>
#include <fstream>

using namespace bjlevel;
using io::Json;

namespace {

std::vector<std::string> keys(const Json& j) {
  std::vector<std::string> out;
  for (const auto& [k, v] : j.items()) out.push_back(k);
  return out;
}

Matrix diagonal(std::vector<Rational> d) {
  Matrix m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

}  // namespace

TEST_CASE("spaces from json") {
  const Space l1 = io::space_from_json(Json::parse(R"({"kind":"lp","p":"1","dim":3})"), 1e-9);
  CHECK(l1 == Space::lp(3, LpExponent(1)));
  const Space li = io::space_from_json(Json::parse(R"({"kind":"lp","p":"inf","dim":2})"), 1e-9);
  CHECK(li == Space::lp(2, LpExponent::infinity()));
  const Space l3 = io::space_from_json(Json::parse(R"({"kind":"lp","p":3,"dim":2})"), 1e-6);
  CHECK(l3.exponent() == LpExponent(3));
  CHECK(l3.tolerance() == 1e-6);
  const Space hex = io::space_from_json(
      Json::parse(R"({"kind":"polyhedral","dim":2,"ball_vertices":[[1,0],[-1,0],[0,1],[0,-1],["1","1"],[-1,-1]]})"), 1e-9);
  CHECK(hex.ball_vertices().size() == 6);
  CHECK(io::space_from_json(io::to_json(hex), 1e-9) == hex);
  CHECK(io::space_from_json(io::to_json(l1), 1e-9) == l1);
  CHECK(io::space_from_json(io::to_json(li), 1e-9) == li);

  CHECK_THROWS_AS(io::space_from_json(Json::parse(R"({"kind":"lq","p":"1","dim":3})"), 1e-9), Error);
  CHECK_THROWS_AS(io::space_from_json(Json::parse(R"({"kind":"lp","dim":3})"), 1e-9), Error);
  CHECK_THROWS_AS(io::space_from_json(Json::parse(R"({"kind":"lp","p":"1","dim":0})"), 1e-9), Error);
  CHECK_THROWS_AS(io::space_from_json(Json::parse(R"({"kind":"lp","p":"1/2","dim":2})"), 1e-9), Error);
  CHECK_THROWS_AS(
      io::space_from_json(Json::parse(R"({"kind":"polyhedral","dim":2,"ball_vertices":[[1,0,0],[-1,0,0]]})"), 1e-9),
      Error);
}

TEST_CASE("matrices, vectors and candidates from json") {
  const Matrix m = io::matrix_from_json(Json::parse(R"({"matrix":[["1/2",0],[0,"-3"]]})"));
  CHECK(m == diagonal({Rational(1, 2), -3}));
  CHECK(io::matrix_from_json(io::to_json(m)) == m);
  CHECK_THROWS_AS(io::matrix_from_json(Json::parse(R"({"matrix":[[1,0],[0]]})")), Error);
  CHECK_THROWS_AS(io::matrix_from_json(Json::parse(R"({"rows":[[1]]})")), Error);
  CHECK(io::vector_from_json(Json::parse(R"(["1/3", 0.5, -2])")) == Vector{Rational(1, 3), Rational(1, 2), -2});
  CHECK_THROWS_AS(io::vector_from_json(Json::parse("[]")), Error);
  CHECK_THROWS_AS(io::vector_from_json(Json::parse(R"(["x"])")), Error);
  CHECK(io::candidates_from_json(Json::parse(R"({"candidates":[[1,0],[0,1]]})")).size() == 2);
  CHECK(io::candidates_from_json(Json::parse("[[1,0],[0,1]]")).size() == 2);
}

TEST_CASE("json files") {
  const auto path = std::filesystem::temp_directory_path() / "bjlevel_io_test.json";
  {
    std::ofstream out(path);
    out << "{\"kind\": \"lp\",";
  }
  CHECK_THROWS_AS(io::read_json_file(path), Error);
  CHECK_THROWS_AS(io::read_json_file(path.string() + ".missing"), Error);
  std::filesystem::remove(path);
}

TEST_CASE("default tolerance comes from the environment") {
  ::unsetenv(io::kToleranceEnv);
  CHECK(io::default_tolerance() == kDefaultTolerance);
  ::setenv(io::kToleranceEnv, "1e-6", 1);
  CHECK(io::default_tolerance() == 1e-6);
  ::setenv(io::kToleranceEnv, "abc", 1);
  CHECK_THROWS_AS(io::default_tolerance(), Error);
  ::setenv(io::kToleranceEnv, "2", 1);
  CHECK_THROWS_AS(io::default_tolerance(), Error);
  ::unsetenv(io::kToleranceEnv);
}

TEST_CASE("report key order") {
  const Space l1 = Space::lp(3, LpExponent(1));
  const Operator t(diagonal({2, 1, 1}), l1);
  const Json cert = io::to_json(is_level_vector(t, {1, 0, 0}));
  CHECK(keys(cert) ==
        std::vector<std::string>{"level_vector", "level_number", "level_value", "degenerate", "f", "g", "arithmetic_mode"});
  CHECK(cert["level_number"] == "4");
  CHECK(keys(io::to_json(std::optional<LevelCertificate>())) == std::vector<std::string>{"level_vector"});

  const Json bj = io::to_json(bj_orthogonal(l1, {1, 0, 0}, {Rational(1, 2), Rational(1, 2), 0}));
  CHECK(keys(bj) == std::vector<std::string>{"orthogonal", "witness", "method", "arithmetic_mode", "margin"});
  CHECK(bj["witness"] == Json::array({"1", "-1", "0"}));
  const Json oracle = io::to_json(bj_orthogonal_oracle(l1, {2, 0, 0}, {1, Rational(1, 2), 0}));
  CHECK(keys(oracle) == std::vector<std::string>{"orthogonal", "witness", "method", "arithmetic_mode", "margin", "line"});
  CHECK(oracle["line"]["lambda"] == "-2");

  const Json levels = io::to_json(enumerate_level_numbers(Operator(diagonal({2, 1}), Space::lp(2, LpExponent::infinity())), 2, 42));
  CHECK(keys(levels) ==
        std::vector<std::string>{"values", "per_face", "bound", "under_approximation", "samples_per_face", "seed"});
  CHECK(levels["values"] == Json::array({"1", "4"}));

  const Json iso = io::to_json(certify_scalar_isometry_polyhedral(Operator(diagonal({1, 2, 3}), l1)));
  CHECK(keys(iso) == std::vector<std::string>{"verdict", "positive_evidence", "scale", "witness", "checked_points",
                                              "arithmetic_mode"});
  CHECK(iso["verdict"] == "refuted");
  CHECK(iso["scale"].is_null());

  const Json census = io::to_json(face_census(Space::lp(3, LpExponent::infinity())));
  CHECK(census.dump() == R"({"counts":[8,12,6],"total":26})");

  const Space li = Space::lp(3, LpExponent::infinity());
  const std::vector<Vector> cands{{1, 0, 0}, {1, Rational(1, 2), 0}, {0, 0, 1}};
  const Json id = io::to_json(scalar_identity_test(Operator(diagonal({1, 1, 2}), li), cands));
  CHECK(keys(id) ==
        std::vector<std::string>{"certified", "lambda", "failed_conditions", "conditions", "independent", "eigenvalues"});
  CHECK(id["failed_conditions"] == Json::array({4}));
}
