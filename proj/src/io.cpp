#include "bjlevel/io.hpp"

#include <cstdlib>
#include <fstream>

namespace bjlevel::io {

namespace {

Error malformed(const std::string& what) { return Error(ErrorCode::MalformedInput, what); }

const Json& require(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw malformed(std::string("missing key \"") + key + "\"");
  return j.at(key);
}

Json optional_real(const std::optional<RealCoords>& f) { return f ? to_json(*f) : Json(nullptr); }
Json optional_rational(const std::optional<Rational>& r) { return r ? to_json(*r) : Json(nullptr); }

}  // namespace

double default_tolerance() {
  const char* env = std::getenv(kToleranceEnv);
  if (env == nullptr || *env == '\0') return kDefaultTolerance;
  char* end = nullptr;
  const double v = std::strtod(env, &end);
  if (end == env || *end != '\0' || !(v > 0) || v >= 1) {
    throw malformed(std::string(kToleranceEnv) + " must be a number in (0, 1), got \"" + env + "\"");
  }
  return v;
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw malformed("cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw malformed("malformed JSON in " + path.string() + ": " + e.what());
  }
}

Rational rational_from_json(const Json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number()) return parse_rational(j.dump());
  throw malformed("expected a rational, got " + j.dump());
}

Vector vector_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) throw malformed("expected a nonempty array of rationals, got " + j.dump());
  Vector v(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) v[i] = rational_from_json(j[i]);
  return v;
}

Space space_from_json(const Json& j, double tolerance) {
  const auto kind = require(j, "kind").get<std::string>();
  const Json& dim_j = require(j, "dim");
  if (!dim_j.is_number_integer() || dim_j.get<long long>() < 1) throw malformed("dim must be a positive integer");
  const auto dim = dim_j.get<std::size_t>();
  if (kind == "lp") {
    const Json& p = require(j, "p");
    if (p.is_string() && (p.get<std::string>() == "inf" || p.get<std::string>() == "infinity")) {
      return Space::lp(dim, LpExponent::infinity(), tolerance);
    }
    return Space::lp(dim, LpExponent(rational_from_json(p)), tolerance);
  }
  if (kind == "polyhedral") {
    const Json& vs = require(j, "ball_vertices");
    if (!vs.is_array()) throw malformed("ball_vertices must be an array");
    std::vector<Vector> vertices;
    for (const auto& v : vs) {
      vertices.push_back(vector_from_json(v));
      if (vertices.back().size() != dim) throw Error(ErrorCode::DimensionMismatch, "ball vertex of wrong dimension");
    }
    return Space::polyhedral(std::move(vertices), tolerance);
  }
  throw malformed("unknown space kind \"" + kind + "\"");
}

Matrix matrix_from_json(const Json& j) {
  const Json& rows = require(j, "matrix");
  if (!rows.is_array() || rows.empty()) throw malformed("matrix must be a nonempty array of rows");
  std::vector<std::vector<Rational>> out;
  for (const auto& row : rows) {
    const Vector v = vector_from_json(row);
    if (!out.empty() && v.size() != out.front().size()) throw malformed("matrix rows differ in length");
    out.push_back(v.coords());
  }
  return Matrix::from_rows(out);
}

std::vector<Vector> candidates_from_json(const Json& j) {
  const Json& arr = j.is_object() ? require(j, "candidates") : j;
  if (!arr.is_array()) throw malformed("candidates must be an array of vectors");
  std::vector<Vector> out;
  for (const auto& v : arr) out.push_back(vector_from_json(v));
  return out;
}

Json to_json(const Rational& r) { return to_string(r); }

Json to_json(const RealCoords& v) {
  Json a = Json::array();
  for (double c : v) a.push_back(c);
  return a;
}

Json to_json(const Matrix& m) {
  Json rows = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(to_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return Json{{"matrix", std::move(rows)}};
}

Json to_json(const Space& s) {
  Json j;
  if (s.kind() == SpaceKind::Lp) {
    j["kind"] = "lp";
    j["p"] = s.exponent().to_string();
    j["dim"] = s.dim();
    return j;
  }
  j["kind"] = "polyhedral";
  j["dim"] = s.dim();
  Json vs = Json::array();
  for (const auto& v : s.ball_vertices()) vs.push_back(to_json(v));
  j["ball_vertices"] = std::move(vs);
  return j;
}

Json to_json(const OrthogonalityVerdict& v) {
  Json j;
  j["orthogonal"] = v.orthogonal;
  j["witness"] = v.witness ? to_json(*v.witness) : optional_real(v.float_witness);
  j["method"] = v.method == OrthoMethod::Dual ? "dual" : "oracle";
  j["arithmetic_mode"] = mode_name(v.mode);
  j["margin"] = v.margin;
  if (v.line) j["line"] = to_json(*v.line);
  return j;
}

Json to_json(const LineMinimum& m) {
  Json j;
  if (m.mode == ArithmeticMode::Exact) {
    j["lambda"] = to_json(m.lambda);
    j["min_value"] = to_json(m.value);
  } else {
    j["lambda"] = m.lambda_value;
    j["min_value"] = m.min_value;
  }
  j["arithmetic_mode"] = mode_name(m.mode);
  return j;
}

Json to_json(const SupportSet& s) {
  Json j;
  Json vs = Json::array();
  if (s.mode == ArithmeticMode::Exact) {
    for (const auto& f : s.vertices) vs.push_back(to_json(f));
  } else {
    for (const auto& f : s.float_vertices) vs.push_back(to_json(f));
  }
  j["vertices"] = std::move(vs);
  j["smooth"] = s.size() == 1;
  j["arithmetic_mode"] = mode_name(s.mode);
  return j;
}

Json to_json(const FaceCensus& c) { return Json{{"counts", c.counts}, {"total", c.total}}; }

Json face_json(const Space& space, const Face& face) {
  Json j;
  j["dim"] = face.dim;
  Json vs = Json::array();
  for (const auto& v : face_vertices(space, face)) vs.push_back(to_json(v));
  j["vertices"] = std::move(vs);
  j["vertex_ids"] = face.vertex_ids;
  Json fs = Json::array();
  for (auto i : face.functional_ids) fs.push_back(to_json(space.dual_vertices()[i]));
  j["supporting_functionals"] = std::move(fs);
  return j;
}

Json to_json(const std::optional<LevelCertificate>& c) {
  Json j;
  j["level_vector"] = c.has_value();
  if (!c) return j;
  j["level_number"] = optional_rational(c->level_number);
  j["level_value"] = c->level_number ? to_double(*c->level_number) : c->level_value;
  j["degenerate"] = c->degenerate;
  j["f"] = c->f ? to_json(*c->f) : optional_real(c->float_f);
  j["g"] = c->g ? to_json(*c->g) : optional_real(c->float_g);
  j["arithmetic_mode"] = mode_name(c->mode);
  if (c->mode == ArithmeticMode::Float) j["residual"] = c->residual;
  return j;
}

Json to_json(const DirectionalResult& d) {
  Json j;
  j["holds"] = d.holds;
  j["g"] = d.g ? to_json(*d.g) : optional_real(d.float_g);
  return j;
}

Json to_json(const PreservationReport& p) {
  Json j;
  j["holds"] = p.holds;
  j["failing_functional"] = p.failing_functional ? to_json(*p.failing_functional)
                                                 : optional_real(p.float_failing_functional);
  if (p.counterexample) {
    j["counterexample"] = Json{{"y", to_json(p.counterexample->y)}, {"margin", p.counterexample->margin}};
  } else {
    j["counterexample"] = nullptr;
  }
  j["checked_functionals"] = p.checked_functionals;
  j["arithmetic_mode"] = mode_name(p.mode);
  return j;
}

Json to_json(const LevelNumberReport& r) {
  Json j;
  Json values = Json::array();
  for (const auto& v : r.values) values.push_back(to_json(v));
  j["values"] = std::move(values);
  Json faces = Json::array();
  for (const auto& rec : r.per_face) {
    Json f;
    f["face_index"] = rec.face_index;
    f["dim"] = rec.face.dim;
    f["vertex_ids"] = rec.face.vertex_ids;
    f["level_number"] = optional_rational(rec.level_number);
    Json pts = Json::array();
    for (const auto& p : rec.points) {
      pts.push_back(Json{{"point", to_json(p.point)}, {"level_number", optional_rational(p.level_number)}});
    }
    f["points"] = std::move(pts);
    faces.push_back(std::move(f));
  }
  j["per_face"] = std::move(faces);
  j["bound"] = optional_rational(r.bound);
  j["under_approximation"] = r.under_approximation;
  j["samples_per_face"] = r.samples_per_face;
  j["seed"] = r.seed;
  return j;
}

Json to_json(const IsometryReport& r) {
  Json j;
  j["verdict"] = verdict_name(r.verdict);
  j["positive_evidence"] = r.positive_evidence;
  if (r.scale) {
    j["scale"] = to_json(*r.scale);
  } else if (r.verdict == Verdict::Inconclusive && r.positive_evidence) {
    j["scale"] = r.scale_value;
  } else {
    j["scale"] = nullptr;
  }
  if (r.witness) {
    j["witness"] = Json{{"x", to_json(r.witness->x)}, {"y", to_json(r.witness->y)}, {"margin", r.witness->margin}};
  } else {
    j["witness"] = nullptr;
  }
  if (r.ratio_witness) {
    j["ratio_witness"] = Json::array({to_json(r.ratio_witness->first), to_json(r.ratio_witness->second)});
  }
  j["checked_points"] = r.checked_points.size();
  j["arithmetic_mode"] = mode_name(r.mode);
  return j;
}

Json to_json(const ScalarIdentityReport& r) {
  Json j;
  j["certified"] = r.certified;
  j["lambda"] = optional_rational(r.lambda);
  j["failed_conditions"] = r.failed;
  j["conditions"] = Json{{"eigenvectors", r.conditions[0]},
                         {"smooth_outside_kernel", r.conditions[1]},
                         {"level_vector", r.conditions[2]},
                         {"not_orthogonal", r.conditions[3]}};
  j["independent"] = r.independent;
  Json ev = Json::array();
  for (const auto& e : r.eigenvalues) ev.push_back(optional_rational(e));
  j["eigenvalues"] = std::move(ev);
  return j;
}

Json to_json(const AdjointTransfer& t) {
  Json j;
  j["psi"] = t.float_psi ? to_json(*t.float_psi) : to_json(t.psi);
  j["level_number"] = optional_rational(t.level_number);
  j["level_value"] = t.level_value;
  j["primal"] = to_json(std::optional<LevelCertificate>(t.primal));
  j["adjoint"] = to_json(std::optional<LevelCertificate>(t.dual));
  return j;
}

Json to_json(const PreservationSampleReport& r) {
  Json j;
  j["samples"] = r.samples;
  j["violation_count"] = r.violations.size();
  Json vs = Json::array();
  for (const auto& v : r.violations) {
    vs.push_back(Json{{"y", to_json(v.y)}, {"f", to_json(v.f)}, {"line", to_json(v.line)}});
  }
  j["violations"] = std::move(vs);
  return j;
}

}  // namespace bjlevel::io
