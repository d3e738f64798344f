// accy: command-line frontend for the toric Calabi-Yau cone toolkit.

#include "accy/linearize.hpp"
#include "accy/pipeline.hpp"
#include "accy/sasaki.hpp"
#include "accy/wproj.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

namespace {

using namespace accy;

struct GlobalOpts {
  bool json = false;
  std::uint64_t seed = 0;
  double tol = 1e-10;
  int max_degree = 2;
};

void emit(const Json& body, bool json_mode) {
  if (json_mode) {
    std::cout << body.dump(2) << "\n";
    return;
  }
  // human-readable: flat walk
  std::function<void(const Json&, int)> walk = [&](const Json& j, int depth) {
    std::string pad(size_t(depth) * 2, ' ');
    if (j.is_object()) {
      for (const auto& [k, v] : j.items()) {
        if (v.is_object() || (v.is_array() && !v.empty() && (v[0].is_object() || v[0].is_array()))) {
          std::cout << pad << k << ":\n";
          walk(v, depth + 1);
        } else {
          std::cout << pad << k << ": " << v.dump() << "\n";
        }
      }
    } else if (j.is_array()) {
      for (const auto& v : j) {
        if (v.is_object() || v.is_array()) walk(v, depth + 1);
        else std::cout << pad << "- " << v.dump() << "\n";
      }
    }
  };
  walk(body, 0);
}

Rat parse_rat_arg(const std::string& s) {
  try {
    Rat q(s);
    q.canonicalize();
    return q;
  } catch (const std::invalid_argument&) {
    fail(Err::UsageError, "expected a rational p/q, got '" + s + "'");
  }
}

Rat tol_to_rat(double tol) {
  // tolerances arrive as decimals like 1e-10; convert through a scaled integer
  Rat q(Int(llround(tol * 1e18)), Int("1000000000000000000"));
  q.canonicalize();
  if (q <= 0) fail(Err::UsageError, "tolerance must be positive");
  return q;
}

int run_cone(const std::string& file, const GlobalOpts& g) {
  GoodCone cone = load_cone_file(file);
  Json body;
  body["label"] = cone.label();
  body["good"] = cone.goodness().good;
  body["gorenstein"] = cone.is_gorenstein();
  if (!cone.is_gorenstein()) body["explanation"] = cone.gorenstein().explanation;
  Json faces = Json::array();
  for (const auto& f : cone.goodness().faces) {
    Json inv = Json::array();
    for (const Int& d : f.invariant_factors) inv.push_back(d.get_str());
    faces.push_back(Json{{"rays", f.face_rays.size()}, {"invariant_factors", inv},
                         {"saturated", f.saturated}});
  }
  body["faces"] = faces;
  body["roundtrip"] = serialize_cone(cone);
  emit(body, g.json);
  return 0;
}

int run_reeb(CLI::App* cmd, const std::string& file, int count, const GlobalOpts& g) {
  GoodCone cone = load_cone_file(file);
  MinimizeOptions mo;
  mo.tol = tol_to_rat(g.tol);
  MinimizeResult mr = minimize_volume(cone, mo);
  Json body;
  body["xi_star"] = Json::array({"3", rat_json(mr.xi_star.a), rat_json(mr.xi_star.b)});
  body["xi_star_decimal"] =
      Json::array({"3", bigfloat_str(big(mr.xi_star.a)), bigfloat_str(big(mr.xi_star.b))});
  body["gradient_norm"] = bigfloat_str(mr.gradient_norm, 20);
  body["value"] = rat_json(mr.value);
  body["value_decimal"] = bigfloat_str(big(mr.value));
  body["normalization"] = "6*vol{y in dual cone : <y,xi> <= 1} (tool convention)";
  if (cmd->get_name() == "approx") {
    std::vector<DirichletApproximant> approx;
    try {
      approx = dirichlet_approximants(cone, mr.xi_star, count);
    } catch (const Error& e) {
      if (e.code != Err::TargetRational) throw;
      approx = dirichlet_approximants(cone, mr.xi_star, 1);
      body["note"] = "rational minimizer admits a single exact approximant";
    }
    Json aj = Json::array();
    for (const auto& d : approx)
      aj.push_back(Json{{"a", rat_json(d.a)},
                        {"b", rat_json(d.b)},
                        {"c", d.c.get_str()},
                        {"error", bigfloat_str(d.error, 25)},
                        {"error_bound", bigfloat_str(d.bound, 25)}});
    body["approximants"] = aj;
  }
  emit(body, g.json);
  return 0;
}

int run_deform(const std::string& sub, const std::string& file, int approx_count,
               const GlobalOpts& g) {
  GoodCone cone = load_cone_file(file);
  Json body;
  RigidityVerdict rv = rigidity(cone);
  if (sub == "minkowski" || sub == "rigidity") {
    body["verdict"] = rv.rigid ? "Rigid" : "Smoothable";
    body["parameters"] = rv.parameters;
    Json ds = Json::array();
    for (const auto& d : rv.decompositions) {
      Json summands = Json::array();
      for (const auto& s : d.summands) {
        Json verts = Json::array();
        for (const Vec2& v : s.vertices) verts.push_back(vec2_json(v));
        summands.push_back(verts);
      }
      ds.push_back(summands);
    }
    body["decompositions"] = ds;
  } else {  // xi-weight
    MinimizeOptions mo;
    mo.tol = tol_to_rat(g.tol);
    MinimizeResult mr = minimize_volume(cone, mo);
    std::vector<DirichletApproximant> approx;
    try {
      approx = dirichlet_approximants(cone, mr.xi_star, approx_count);
    } catch (const Error& e) {
      if (e.code != Err::TargetRational) throw;
      approx = dirichlet_approximants(cone, mr.xi_star, 1);
    }
    XiWeightCertificate cert = xi_weight(cone, mr.xi_star, approx);
    Json recs = Json::array();
    for (const auto& r : cert.records)
      recs.push_back(Json{{"c", r.c.get_str()},
                          {"mu", r.mu.get_str()},
                          {"k", r.k.get_str()},
                          {"lambda", rat_json(r.lambda)}});
    body["records"] = recs;
    body["limit_weight"] = rat_json(cert.limit_weight);
    body["provenance"] = cert.provenance;
  }
  emit(body, g.json);
  return 0;
}

int run_resolve(const std::string& file, bool with_flops, bool with_regular,
                const GlobalOpts& g) {
  GoodCone cone = load_cone_file(file);
  std::vector<Triangulation> tris = enumerate_crepant(cone.polygon());
  Json body;
  body["count"] = tris.size();
  Json tj = Json::array();
  Json fe = Json::array();
  for (size_t i = 0; i < tris.size(); ++i) {
    Json item;
    Json cells = Json::array();
    for (const auto& c : tris[i].cells) cells.push_back(Json::array({c[0], c[1], c[2]}));
    item["cells"] = cells;
    if (with_regular) item["regular"] = is_regular(tris[i]);
    if (with_flops) {
      std::vector<Triangulation> fl = flops(tris[i]);
      item["flops"] = fl.size();
      for (const Triangulation& f : fl)
        for (size_t j = 0; j < tris.size(); ++j)
          if (f == tris[j] && i < j) fe.push_back(Json::array({i, j}));
    }
    tj.push_back(item);
  }
  body["triangulations"] = tj;
  if (with_flops) body["flip_graph_edges"] = fe;
  emit(body, g.json);
  return 0;
}

int run_wproj(const std::string& sub, const std::string& file, const std::string& t_str,
              const GlobalOpts& g) {
  WeightedFamily fam = load_ideal_file(file);
  Json body;
  if (!fam.warnings.empty()) {
    Json w = Json::array();
    for (const auto& s : fam.warnings) w.push_back(s);
    body["warnings"] = w;
  }
  if (sub == "basechange") {
    WeightedFamily bc = base_change(fam);
    Json gens = Json::array();
    for (const Poly& p : bc.generators) gens.push_back(p.str(bc.names));
    body["vars"] = bc.names;
    body["mu"] = bc.mu.get_str();
    body["generators"] = gens;
    emit(body, g.json);
    return 0;
  }
  WProjClosure cl = wproj_closure(fam);
  if (sub == "close") {
    Json gens = Json::array();
    for (const Poly& p : cl.generators) gens.push_back(p.str(cl.names));
    Json ws = Json::array();
    for (const Int& w : cl.weights) ws.push_back(w.get_str());
    body["coordinates"] = cl.names;
    body["weights"] = ws;
    body["generators"] = gens;
    Json charts = Json::array();
    for (const auto& ch : cl.charts) {
      Json act = Json::array();
      for (const Int& e : ch.action) act.push_back(e.get_str());
      charts.push_back(Json{{"chart", ch.n},
                            {"group_order", ch.group_order.get_str()},
                            {"action", act}});
    }
    body["charts"] = charts;
  } else if (sub == "fiber") {
    Rat t = parse_rat_arg(t_str);
    FiberDivisorResult fd = fiber_divisor_at_infinity(cl, t);
    body["t"] = rat_json(t);
    body["equal"] = fd.equal;
    Json notes = Json::array();
    for (const auto& n : fd.chart_notes) notes.push_back(n);
    body["charts"] = notes;
  } else if (sub == "smooth") {
    Rat t = parse_rat_arg(t_str);
    auto reports = smooth_at_infinity(cl, t);
    Json pts = Json::array();
    for (const auto& r : reports) {
      Json coords = Json::array();
      for (const GRat& c : r.point) coords.push_back(c.str());
      pts.push_back(Json{{"chart", r.chart},
                         {"point", coords},
                         {"smooth", r.smooth},
                         {"jacobian_rank", r.jacobian_rank},
                         {"expected_rank", r.expected_rank},
                         {"stabilizer_order", r.stabilizer_order.get_str()}});
    }
    body["t"] = rat_json(t);
    body["points"] = pts;
  } else {
    fail(Err::UsageError, "unknown wproj subcommand");
  }
  emit(body, g.json);
  return 0;
}

int run_sasaki(int dim, const std::string& weights_csv, long samples, const GlobalOpts& g) {
  ReebDeformation d;
  {
    std::istringstream in(weights_csv);
    std::string tok;
    while (std::getline(in, tok, ',')) d.weights.push_back(std::stod(tok));
  }
  if (int(d.weights.size()) != dim) fail(Err::UsageError, "--weights count must equal --dim");
  for (double w : d.weights)
    if (w <= 0) fail(Err::UsageError, "weights must be positive");
  FlatToricCone cone{dim};

  std::mt19937_64 rng(g.seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  double worst = 0;
  for (long s = 0; s < samples; ++s) {
    CVec x(size_t(dim));
    double norm = 0;
    for (auto& z : x) {
      z = {gauss(rng), gauss(rng)};
      norm += std::norm(z);
    }
    norm = std::sqrt(norm);
    for (auto& z : x) z /= norm;
    SasakiSample sample = typeI_deform(cone, d, x);
    worst = std::max(worst, verify_sasaki_identities(sample).max());
  }
  RadiusBoundsReport rb = radius_bounds_check(cone, d, samples, g.seed);
  Json body;
  body["samples"] = samples;
  body["seed"] = g.seed;
  body["max_identity_residual"] = worst;
  body["max_radius_bound_violation"] = rb.max_violation;
  emit(body, g.json);
  return 0;
}

int run_linearize(const std::string& matrix_file, const GlobalOpts& g) {
  CyclicRep rep = load_matrix_file(matrix_file);
  BlockDiagResult bd = block_diagonalize(rep);
  Json body;
  body["dimension"] = rep.dim();
  body["order"] = rep.order;
  Json rrows = Json::array(), nrows = Json::array();
  for (const auto& row : bd.r) {
    Json jr = Json::array();
    for (const GRat& v : row) jr.push_back(v.str());
    rrows.push_back(jr);
  }
  for (const auto& row : bd.normal_form) {
    Json jr = Json::array();
    for (const GRat& v : row) jr.push_back(v.str());
    nrows.push_back(jr);
  }
  body["conjugator"] = rrows;
  body["normal_form"] = nrows;
  body["block_order"] = bd.block_order;
  body["used_gram_schmidt"] = bd.used_gram_schmidt;
  emit(body, g.json);
  return 0;
}

PolyGerm load_germ_file(const std::string& path, int jet_order) {
  std::ifstream in(path);
  if (!in) fail(Err::ParseError, "cannot open germ file '" + path + "'");
  std::string line;
  std::vector<std::string> vars;
  std::vector<std::string> maps;
  while (std::getline(in, line)) {
    size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    size_t a = line.find_first_not_of(" \t\r");
    if (a == std::string::npos) continue;
    size_t b = line.find_last_not_of(" \t\r");
    line = line.substr(a, b - a + 1);
    if (line.rfind("vars:", 0) == 0) {
      std::istringstream ls(line.substr(5));
      std::string v;
      while (ls >> v) vars.push_back(v);
    } else if (line.rfind("map:", 0) == 0) {
      maps.push_back(line.substr(4));
    } else {
      fail(Err::ParseError, "unrecognized germ file line: " + line);
    }
  }
  if (vars.empty() || maps.size() != vars.size())
    fail(Err::ParseError, "germ file needs vars: and one map: per variable");
  PolyGerm germ;
  germ.n = int(vars.size());
  germ.jet_order = jet_order;
  for (const std::string& m : maps) germ.components.push_back(parse_poly(m, vars));
  germ.validate();
  return germ;
}

int run_cocycle(const std::string& map_file, const std::string& ga_file,
                const std::string& gb_file, int jet, const GlobalOpts& g) {
  PolyGerm f = load_germ_file(map_file, jet);
  CyclicRep ga = load_matrix_file(ga_file);
  CyclicRep gb = load_matrix_file(gb_file);
  CocycleResult res = abt_cocycle_check(f, ga, gb);
  Json body;
  body["residual"] = res.residual;
  body["identity_holds"] = res.identity_holds;
  emit(body, g.json);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"accy: toric Calabi-Yau cone classification toolkit"};
  app.require_subcommand(1);
  GlobalOpts g;
  app.add_flag("--json", g.json, "machine-readable JSON output");
  app.add_option("--seed", g.seed, "seed for all randomized sampling");
  app.add_option("--tol", g.tol, "numerical tolerance (default 1e-10)");
  app.add_option("--max-degree", g.max_degree, "generator degree cap (default 2)");

  std::string cone_file, ideal_file, t_str = "1", weights_csv = "1,1";
  std::string matrix_file, map_file, ga_file, gb_file;
  int count = 3, dim = 2, jet = 4;
  long samples = 100;
  bool with_flops = false, with_regular = false;

  auto* cone_cmd = app.add_subcommand("cone", "parse and check a cone file");
  auto* cone_check = cone_cmd->add_subcommand("check", "goodness + Gorenstein report");
  cone_check->add_option("file", cone_file)->required();

  auto* reeb_cmd = app.add_subcommand("reeb", "Reeb field optimization");
  auto* reeb_min = reeb_cmd->add_subcommand("minimize", "volume minimizer");
  reeb_min->add_option("file", cone_file)->required();
  auto* reeb_approx = reeb_cmd->add_subcommand("approx", "Dirichlet approximants");
  reeb_approx->add_option("file", cone_file)->required();
  reeb_approx->add_option("--count", count, "number of approximants");

  auto* deform_cmd = app.add_subcommand("deform", "Altmann deformation combinatorics");
  for (const char* sub : {"minkowski", "rigidity", "xi-weight"}) {
    auto* s = deform_cmd->add_subcommand(sub);
    s->add_option("file", cone_file)->required();
    if (std::string(sub) == "xi-weight") s->add_option("--approx-count", count);
  }

  auto* resolve_cmd = app.add_subcommand("resolve", "crepant resolutions");
  auto* resolve_tri = resolve_cmd->add_subcommand("triangulations");
  resolve_tri->add_option("file", cone_file)->required();
  resolve_tri->add_flag("--flops", with_flops);
  resolve_tri->add_flag("--regular", with_regular);

  auto* wproj_cmd = app.add_subcommand("wproj", "weighted projective closures");
  for (const char* sub : {"close", "fiber", "smooth", "basechange"}) {
    auto* s = wproj_cmd->add_subcommand(sub);
    s->add_option("file", ideal_file)->required();
    s->add_option("--t", t_str, "fiber parameter p/q");
  }

  auto* sasaki_cmd = app.add_subcommand("sasaki", "Type-I deformation numerics");
  auto* sasaki_t1 = sasaki_cmd->add_subcommand("typeI");
  sasaki_t1->add_option("--dim", dim, "complex dimension");
  sasaki_t1->add_option("--weights", weights_csv, "comma-separated positive weights");
  sasaki_t1->add_option("--samples", samples, "number of link samples");

  auto* lin_cmd = app.add_subcommand("linearize", "cyclic group linearization");
  lin_cmd->add_option("--matrix", matrix_file, "matrix file (rows of a+b*i, comma separated)");
  auto* lin_cocycle = lin_cmd->add_subcommand("cocycle", "adapted-atlas cocycle identity");
  lin_cocycle->add_option("--map", map_file)->required();
  lin_cocycle->add_option("--gA", ga_file)->required();
  lin_cocycle->add_option("--gB", gb_file)->required();
  lin_cocycle->add_option("--jet", jet, "jet order (default 4)");

  auto* classify = app.add_subcommand("classify-toric", "run the full toric pipeline");
  classify->add_option("file", cone_file)->required();
  classify->add_option("--approx-count", count);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 64;
  }

  try {
    if (cone_check->parsed()) return run_cone(cone_file, g);
    if (reeb_min->parsed()) return run_reeb(reeb_min, cone_file, count, g);
    if (reeb_approx->parsed()) return run_reeb(reeb_approx, cone_file, count, g);
    for (auto* s : deform_cmd->get_subcommands())
      if (s->parsed()) return run_deform(s->get_name(), cone_file, count, g);
    if (resolve_tri->parsed()) return run_resolve(cone_file, with_flops, with_regular, g);
    for (auto* s : wproj_cmd->get_subcommands())
      if (s->parsed()) return run_wproj(s->get_name(), ideal_file, t_str, g);
    if (sasaki_t1->parsed()) return run_sasaki(dim, weights_csv, samples, g);
    if (lin_cocycle->parsed()) return run_cocycle(map_file, ga_file, gb_file, jet, g);
    if (lin_cmd->parsed()) {
      if (matrix_file.empty()) fail(Err::UsageError, "linearize needs --matrix or cocycle");
      return run_linearize(matrix_file, g);
    }
    if (classify->parsed()) {
      GoodCone cone = load_cone_file(cone_file);
      ClassifyOptions opt;
      opt.tol = tol_to_rat(g.tol);
      opt.max_degree = g.max_degree;
      opt.approx_count = count;
      opt.seed = g.seed;
      Report rep = classify_toric(cone, opt);
      emit(rep.body, g.json);
      return rep.exit_code;
    }
    fail(Err::UsageError, "no subcommand selected");
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    if (e.code == Err::UsageError) return 64;
    return e.code == Err::ParseError ? 2 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
