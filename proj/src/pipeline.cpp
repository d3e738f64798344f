#include "accy/pipeline.hpp"

namespace accy {

Json rat_json(const Rat& q) { return q.get_str(); }

Json vec2_json(const Vec2& v) { return Json::array({v[0].get_str(), v[1].get_str()}); }

Json vec3_json(const Vec3& v) {
  return Json::array({v[0].get_str(), v[1].get_str(), v[2].get_str()});
}

namespace {

Json polygon_json(const LatticePolygon& p) {
  Json verts = Json::array();
  for (const Vec2& v : p.vertices()) verts.push_back(vec2_json(v));
  return Json{{"vertices", verts},
              {"lattice_points", p.lattice_points().size()},
              {"normalized_area", p.normalized_area().get_str()}};
}

Json decomposition_json(const MinkowskiDecomposition& d) {
  Json summands = Json::array();
  for (const auto& s : d.summands) {
    Json verts = Json::array();
    for (const Vec2& v : s.vertices) verts.push_back(vec2_json(v));
    summands.push_back(Json{{"vertices", verts}, {"segment", s.is_segment()}});
  }
  return Json{{"summands", summands}};
}

Json triangulation_json(const Triangulation& t) {
  Json cells = Json::array();
  for (const auto& c : t.cells) cells.push_back(Json::array({c[0], c[1], c[2]}));
  return cells;
}

}  // namespace

Report classify_toric(const GoodCone& cone, const ClassifyOptions& opt) {
  Report rep;
  Json& body = rep.body;
  body["label"] = cone.label();
  Json rays = Json::array();
  for (const Vec3& r : cone.input_rays()) rays.push_back(vec3_json(r));
  body["rays"] = rays;
  body["provenance"] = Json::array();
  auto note = [&](const std::string& s) { body["provenance"].push_back(s); };

  auto halt = [&](const Error& e) {
    body["error"] = {{"code", err_name(e.code)}, {"message", e.what()}};
    rep.ok = false;
    rep.exit_code = (e.code == Err::ParseError) ? 2 : 1;
    return rep;
  };

  try {
    // goodness (already verified by construction; re-report per face)
    Json faces = Json::array();
    for (const auto& f : cone.goodness().faces) {
      Json fr = Json::array();
      for (const Vec3& r : f.face_rays) fr.push_back(vec3_json(r));
      Json inv = Json::array();
      for (const Int& d : f.invariant_factors) inv.push_back(d.get_str());
      faces.push_back(Json{{"rays", fr}, {"invariant_factors", inv}, {"saturated", f.saturated}});
    }
    body["good"] = {{"verdict", cone.goodness().good},
                    {"condition", cone.goodness().condition},
                    {"faces", faces}};
    note("goodness: face-sublattice saturation, the combinatorial form of a good cone");

    const auto& gor = cone.gorenstein();
    body["gorenstein"] = {{"verdict", gor.gorenstein}};
    if (!gor.gorenstein) {
      body["gorenstein"]["explanation"] = gor.explanation;
      rep.ok = true;  // a valid (negative) classification outcome
      return rep;
    }
    body["gorenstein"]["polygon"] = polygon_json(cone.polygon());
    note("height-1 cross-section: the Gorenstein (Calabi-Yau) condition");

    ToricIdealResult ti = toric_ideal(cone, opt.max_degree);
    Json gens = Json::array();
    for (const Poly& g : ti.generators) gens.push_back(g.str(ti.variable_names));
    body["toric_ideal"] = {{"ambient_dimension", ti.ambient_dimension},
                           {"generators_degree_le", ti.max_degree},
                           {"generator_count", ti.generators.size()},
                           {"degree_sufficient", ti.degree_sufficient},
                           {"checked_through_degree", ti.checked_degree},
                           {"generators", gens}};
    note("toric ideal of the dual-cone Hilbert-basis embedding (quadric counts)");

    ReebPolygon rp = reeb_polygon(cone);
    Json rpoly = Json::array();
    for (const auto& v : rp.vertices)
      rpoly.push_back(Json::array({rat_json(v[0]), rat_json(v[1])}));
    body["reeb_polygon"] = {{"vertices_times_3", rpoly}};

    MinimizeOptions mo;
    mo.tol = opt.tol;
    MinimizeResult mr = minimize_volume(cone, mo);
    body["minimize"] = {{"xi_star", Json::array({"3", rat_json(mr.xi_star.a), rat_json(mr.xi_star.b)})},
                        {"xi_star_decimal",
                         Json::array({"3", bigfloat_str(big(mr.xi_star.a)), bigfloat_str(big(mr.xi_star.b))})},
                        {"gradient_norm", bigfloat_str(mr.gradient_norm, 20)},
                        {"value", rat_json(mr.value)},
                        {"value_decimal", bigfloat_str(big(mr.value))},
                        {"iterations", mr.iterations},
                        {"normalization", "6*vol{y in dual cone : <y,xi> <= 1} (tool convention)"}};
    note("volume minimizer locates the Sasaki-Einstein Reeb field of the cone");

    std::vector<DirichletApproximant> approx;
    try {
      approx = dirichlet_approximants(cone, mr.xi_star, opt.approx_count);
    } catch (const Error& e) {
      if (e.code != Err::TargetRational) throw;
      approx = dirichlet_approximants(cone, mr.xi_star, 1);
      body["approximants_note"] = "rational minimizer: single exact approximant";
    }
    Json aj = Json::array();
    for (const auto& d : approx)
      aj.push_back(Json{{"a", rat_json(d.a)},
                        {"b", rat_json(d.b)},
                        {"c", d.c.get_str()},
                        {"error", bigfloat_str(d.error, 25)},
                        {"error_bound", bigfloat_str(d.bound, 25)}});
    body["approximants"] = aj;
    note("Dirichlet approximants: |xi_i - xi| <= c_i^{-3/2}, c_i minimal integral");

    RigidityVerdict rv = rigidity(cone);
    Json decomps = Json::array();
    for (const auto& d : rv.decompositions) decomps.push_back(decomposition_json(d));
    body["rigidity"] = {{"verdict", rv.rigid ? "Rigid" : "Smoothable"},
                        {"parameters", rv.parameters},
                        {"minkowski_decompositions", decomps}};
    note("Minkowski decompositions of the polygon index the equivariant deformations");

    if (!rv.rigid) {
      XiWeightCertificate cert = xi_weight(cone, mr.xi_star, approx);
      Json recs = Json::array();
      for (const auto& r : cert.records)
        recs.push_back(Json{{"a", rat_json(r.a)},
                            {"b", rat_json(r.b)},
                            {"c", r.c.get_str()},
                            {"mu", r.mu.get_str()},
                            {"k", r.k.get_str()},
                            {"lambda", rat_json(r.lambda)}});
      body["xi_weight"] = {{"records", recs},
                          {"limit_weight", rat_json(cert.limit_weight)},
                          {"provenance", cert.provenance}};
      note("xi-weight lambda_i = -k_i mu_i / c_i = -3 on every approximant");
    } else {
      body["xi_weight"] = {{"skipped", "NoDeformation: cone is rigid"}};
    }

    std::vector<Triangulation> tris = enumerate_crepant(cone.polygon());
    Json tj = Json::array();
    std::vector<std::pair<int, int>> flip_edges;
    for (size_t i = 0; i < tris.size(); ++i) {
      Json item;
      item["cells"] = triangulation_json(tris[i]);
      item["regular"] = is_regular(tris[i]);
      std::vector<Triangulation> fl = flops(tris[i]);
      item["flops"] = fl.size();
      for (const Triangulation& f : fl)
        for (size_t j = 0; j < tris.size(); ++j)
          if (f == tris[j] && i < j) flip_edges.push_back({int(i), int(j)});
      tj.push_back(item);
    }
    Json fe = Json::array();
    for (auto [i, j] : flip_edges) fe.push_back(Json::array({i, j}));
    body["crepant_resolutions"] = {{"count", tris.size()},
                                   {"triangulations", tj},
                                   {"flip_graph_edges", fe}};
    note("crepant resolutions = fine unimodular triangulations; flips = flops; "
         "regularity = Kahler criterion (no positive combination of exceptional "
         "curves homologous to zero)");

    Subdivision sub = terminal_partial(cone.polygon());
    Json cells = Json::array();
    int odp = 0;
    for (const auto& cell : sub.cells) {
      Json cj = Json::array();
      for (int v : cell.vertices) cj.push_back(v);
      cells.push_back(Json{{"vertices", cj}, {"odp", cell.odp}});
      if (cell.odp) ++odp;
    }
    body["terminal_partial"] = {{"cells", cells}, {"odp_count", odp}};
    note("terminal partial resolution: only ordinary-double-point cells remain");
  } catch (const Error& e) {
    return halt(e);
  }
  return rep;
}

}  // namespace accy
