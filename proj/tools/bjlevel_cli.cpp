// Command-line front end: reads space/operator files, runs one library
// operation and prints a JSON (or plain text) report.

#include "bjlevel/io.hpp"
#include "bjlevel/selftest.hpp"

#include <CLI11.hpp>

#include <functional>
#include <iostream>
#include <optional>
#include <string>

namespace {

using bjlevel::io::Json;
namespace bj = bjlevel;

constexpr const char* kToolVersion = "1.0.0";

struct Options {
  std::string space;
  std::string op;
  std::string codomain;
  std::string x;
  std::string y;
  std::string candidates;
  std::optional<std::size_t> samples;
  std::optional<std::uint64_t> seed;
  std::string format = "json";
};

struct Context {
  const Options& opt;
  std::string command;
  Json inputs = Json::object();
  std::optional<bj::Space> space;
  std::optional<Json> op_file;
  std::optional<std::uint64_t> seed;
  bj::ArithmeticMode mode = bj::ArithmeticMode::Exact;
};

bj::Error missing(const char* flag) {
  return bj::Error(bj::ErrorCode::MalformedInput, std::string("missing required option ") + flag);
}

const bj::Space& load_space(Context& ctx) {
  if (!ctx.space) {
    if (ctx.opt.space.empty()) throw missing("--space");
    const Json j = bj::io::read_json_file(ctx.opt.space);
    ctx.space = bj::io::space_from_json(j, bj::io::default_tolerance());
    ctx.inputs["space"] = bj::io::to_json(*ctx.space);
    ctx.mode = ctx.space->mode();
  }
  return *ctx.space;
}

bj::Operator load_operator(Context& ctx) {
  const bj::Space& dom = load_space(ctx);
  if (ctx.opt.op.empty()) throw missing("--op");
  ctx.op_file = bj::io::read_json_file(ctx.opt.op);
  const bj::Matrix m = bj::io::matrix_from_json(*ctx.op_file);
  ctx.inputs["operator"] = bj::io::to_json(m)["matrix"];
  if (ctx.opt.codomain.empty()) return bj::Operator(m, dom);
  const bj::Space cod = bj::io::space_from_json(bj::io::read_json_file(ctx.opt.codomain), bj::io::default_tolerance());
  ctx.inputs["codomain"] = bj::io::to_json(cod);
  return bj::Operator(m, dom, cod);
}

// A vector given both on the command line and in an input file: the file wins.
bj::Vector load_vector(Context& ctx, const char* key, const std::string& flag_value, const char* flag) {
  std::optional<bj::Vector> from_flag;
  if (!flag_value.empty()) from_flag = bj::parse_vector(flag_value);
  std::optional<bj::Vector> from_file;
  if (ctx.op_file && ctx.op_file->contains(key)) from_file = bj::io::vector_from_json(ctx.op_file->at(key));
  if (from_file && from_flag && !(*from_file == *from_flag)) {
    std::cerr << "warning: " << flag << " " << bj::format_coords(*from_flag) << " overridden by \"" << key
              << "\" in " << ctx.opt.op << "\n";
  }
  if (!from_file && !from_flag) throw missing(flag);
  bj::Vector v = from_file ? *from_file : *from_flag;
  ctx.inputs[key] = bj::format_coords(v);
  return v;
}

bj::Vector load_x(Context& ctx) { return load_vector(ctx, "x", ctx.opt.x, "--x"); }
bj::Vector load_y(Context& ctx) { return load_vector(ctx, "y", ctx.opt.y, "--y"); }

std::size_t samples(Context& ctx, std::size_t fallback) {
  const std::size_t n = ctx.opt.samples.value_or(fallback);
  ctx.inputs["samples"] = n;
  return n;
}

std::uint64_t seed(Context& ctx) {
  ctx.seed = ctx.opt.seed.value_or(42);
  ctx.inputs["seed"] = *ctx.seed;
  return *ctx.seed;
}

void print_text(const Json& j, const std::string& prefix, std::ostream& out) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) print_text(v, prefix.empty() ? k : prefix + "." + k, out);
    return;
  }
  if (j.is_array() && !j.empty() && (j.front().is_object() || j.front().is_array())) {
    for (std::size_t i = 0; i < j.size(); ++i) print_text(j[i], prefix + "[" + std::to_string(i) + "]", out);
    return;
  }
  out << prefix << ": " << (j.is_string() ? j.get<std::string>() : j.dump()) << "\n";
}

void emit(const Json& report, const std::string& format) {
  if (format == "text") {
    print_text(report, "", std::cout);
  } else {
    std::cout << report.dump(2) << "\n";
  }
}

using Handler = std::function<Json(Context&)>;

Json run_selftest(Context& ctx, bool& ok) {
  const auto checks = bj::run_selftest();
  Json list = Json::array();
  std::size_t failed = 0;
  for (const auto& c : checks) {
    Json j{{"name", c.name}, {"passed", c.passed}};
    if (!c.detail.empty()) j["detail"] = c.detail;
    list.push_back(std::move(j));
    if (!c.passed) ++failed;
  }
  ok = failed == 0;
  ctx.mode = bj::ArithmeticMode::Exact;
  return Json{{"checks", std::move(list)}, {"passed", checks.size() - failed}, {"failed", failed}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Birkhoff-James orthogonality, level vectors and isometry certificates on finite-dimensional spaces"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);
  Options opt;

  std::string selected;
  Handler handler;
  auto leaf = [&](CLI::App* parent, const std::string& name, const std::string& help, const std::string& command,
                  Handler h) {
    CLI::App* sub = parent->add_subcommand(name, help);
    sub->add_option("--space", opt.space, "space JSON file");
    sub->add_option("--op", opt.op, "operator JSON file");
    sub->add_option("--codomain", opt.codomain, "codomain space JSON file (default: the domain)");
    sub->add_option("--x", opt.x, "vector x, e.g. \"1,1/2,0\"");
    sub->add_option("--y", opt.y, "vector y");
    sub->add_option("--candidates", opt.candidates, "candidate vectors JSON file");
    sub->add_option("--samples", opt.samples, "number of samples");
    sub->add_option("--seed", opt.seed, "sampling seed (default 42)");
    sub->add_option("--format", opt.format, "json or text")->check(CLI::IsMember({"json", "text"}));
    sub->callback([&selected, &handler, command, h] {
      selected = command;
      handler = h;
    });
    return sub;
  };
  auto group = [&](const std::string& name, const std::string& help) {
    CLI::App* g = app.add_subcommand(name, help);
    g->require_subcommand(1);
    return g;
  };

  leaf(&app, "bj", "decide x perp_B y by supporting functionals", "bj", [](Context& c) {
    const auto& s = load_space(c);
    const auto x = load_x(c);
    return bj::io::to_json(bj::bj_orthogonal(s, x, load_y(c)));
  });
  leaf(&app, "support", "vertices of J(x)", "support", [](Context& c) {
    const auto& s = load_space(c);
    return bj::io::to_json(bj::support_set(s, load_x(c)));
  });
  CLI::App* faces = group("faces", "face lattice queries");
  leaf(faces, "census", "face counts per dimension", "faces census",
       [](Context& c) { return bj::io::to_json(bj::face_census(load_space(c))); });
  leaf(faces, "minimal", "face containing x in its relative interior", "faces minimal", [](Context& c) {
    const auto& s = load_space(c);
    return bj::io::face_json(s, bj::minimal_face(s, load_x(c)));
  });
  CLI::App* level = group("level", "level vectors and level numbers");
  leaf(level, "test", "decide whether x is a level vector", "level test", [](Context& c) {
    const auto t = load_operator(c);
    return bj::io::to_json(bj::is_level_vector(t, load_x(c)));
  });
  leaf(level, "enumerate", "level numbers found on faces of the domain ball", "level enumerate", [](Context& c) {
    const auto t = load_operator(c);
    const std::size_t n = samples(c, 5);
    return bj::io::to_json(bj::enumerate_level_numbers(t, n, seed(c)));
  });
  CLI::App* preserve = group("preserve", "orthogonality preservation");
  leaf(preserve, "check", "decide whether T preserves orthogonality at x", "preserve check", [](Context& c) {
    const auto t = load_operator(c);
    return bj::io::to_json(bj::preserves_bj_at(t, load_x(c)));
  });
  CLI::App* iso = group("isometry", "scalar multiples of isometries");
  leaf(iso, "certify", "extreme-point certificate (polyhedral domains)", "isometry certify",
       [](Context& c) { return bj::io::to_json(bj::certify_scalar_isometry_polyhedral(load_operator(c))); });
  leaf(iso, "probe", "sampling probe on the unit sphere", "isometry probe", [](Context& c) {
    const auto t = load_operator(c);
    const std::size_t n = samples(c, 200);
    return bj::io::to_json(bj::probe_scalar_isometry_grid(t, n, seed(c)));
  });
  CLI::App* identity = group("identity", "scalar multiples of the identity");
  leaf(identity, "test", "check the four eigenvector conditions", "identity test", [](Context& c) {
    const auto t = load_operator(c);
    if (c.opt.candidates.empty()) throw missing("--candidates");
    const auto cands = bj::io::candidates_from_json(bj::io::read_json_file(c.opt.candidates));
    Json list = Json::array();
    for (const auto& v : cands) list.push_back(bj::format_coords(v));
    c.inputs["candidates"] = std::move(list);
    return bj::io::to_json(bj::scalar_identity_test(t, cands));
  });
  CLI::App* adj = group("adjoint", "adjoint operators");
  leaf(adj, "transfer", "carry a level vector to the adjoint", "adjoint transfer", [](Context& c) {
    const auto t = load_operator(c);
    return bj::io::to_json(bj::adjoint_level_transfer(t, load_x(c)));
  });
  CLI::App* oracle = group("oracle", "brute-force baselines");
  leaf(oracle, "bj", "decide x perp_B y by line minimization", "oracle bj", [](Context& c) {
    const auto& s = load_space(c);
    const auto x = load_x(c);
    return bj::io::to_json(bj::bj_orthogonal_oracle(s, x, load_y(c)));
  });
  leaf(oracle, "preserve", "sample y in x^perp_B and test Tx perp_B Ty", "oracle preserve", [](Context& c) {
    const auto t = load_operator(c);
    const auto x = load_x(c);
    const std::size_t n = samples(c, 100);
    return bj::io::to_json(bj::preservation_sample_check(t, x, n, seed(c)));
  });
  bool selftest_ok = true;
  leaf(&app, "selftest", "run the bundled example battery", "selftest",
       [&selftest_ok](Context& c) { return run_selftest(c, selftest_ok); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  Context ctx{opt, selected};
  try {
    Json result = handler(ctx);
    Json report;
    report["command"] = ctx.command;
    report["tool_version"] = kToolVersion;
    report["arithmetic_mode"] = bj::mode_name(ctx.mode);
    report["seed"] = ctx.seed ? Json(*ctx.seed) : Json(nullptr);
    report["inputs"] = std::move(ctx.inputs);
    report["result"] = std::move(result);
    emit(report, opt.format);
    return selftest_ok ? 0 : 1;
  } catch (const bj::Error& e) {
    Json report;
    report["command"] = ctx.command;
    report["tool_version"] = kToolVersion;
    report["error"] = Json{{"code", bj::error_code_name(e.code())}, {"message", e.what()}};
    emit(report, opt.format);
    std::cerr << "error: " << e.what() << "\n";
    return e.is_internal() ? 3 : 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
}
