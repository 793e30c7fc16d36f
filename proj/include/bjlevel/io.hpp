#pragma once

#include "bjlevel/isometry.hpp"
#include "bjlevel/orthogonality.hpp"

#include <json.hpp>

#include <filesystem>
#include <string>

namespace bjlevel::io {

using Json = nlohmann::ordered_json;

/// Environment variable holding the default float-path tolerance.
inline constexpr const char* kToleranceEnv = "BJLEVEL_FLOAT_TOL";

/// Tolerance from kToleranceEnv, or kDefaultTolerance when unset.
double default_tolerance();

Json read_json_file(const std::filesystem::path& path);

/// Rationals are read from strings ("3", "-1/2", "0.25") or JSON numbers.
Rational rational_from_json(const Json& j);
Vector vector_from_json(const Json& j);

/// {"kind":"lp","p":"1"|"2"|"inf"|"<rational>","dim":n} or
/// {"kind":"polyhedral","dim":n,"ball_vertices":[[...],...]}.
Space space_from_json(const Json& j, double tolerance);
/// {"matrix":[[...],...]}.
Matrix matrix_from_json(const Json& j);
/// {"candidates":[[...],...]} or a bare array of vectors.
std::vector<Vector> candidates_from_json(const Json& j);

Json to_json(const Rational& r);
template <class Tag>
Json to_json(const Coords<Tag>& v) {
  Json a = Json::array();
  for (const auto& c : v) a.push_back(to_json(c));
  return a;
}
Json to_json(const RealCoords& v);
Json to_json(const Matrix& m);
Json to_json(const Space& s);

Json to_json(const OrthogonalityVerdict& v);
Json to_json(const LineMinimum& m);
Json to_json(const SupportSet& s);
Json to_json(const FaceCensus& c);
Json face_json(const Space& space, const Face& face);
Json to_json(const std::optional<LevelCertificate>& c);
Json to_json(const DirectionalResult& d);
Json to_json(const PreservationReport& p);
Json to_json(const LevelNumberReport& r);
Json to_json(const IsometryReport& r);
Json to_json(const ScalarIdentityReport& r);
Json to_json(const AdjointTransfer& t);
Json to_json(const PreservationSampleReport& r);

}  // namespace bjlevel::io
