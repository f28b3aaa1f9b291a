#include "mplumb/json_io.hpp"

namespace mplumb {

json to_json(const Integer& n) {
  if (n.fits_slong_p()) return n.get_si();
  return n.get_str();
}

json to_json(const Rational& q) {
  if (q.get_den() == 1) return to_json(Integer(q.get_num()));
  return q.get_str();
}

json to_json(const GwElement& a) { return {{"x", to_json(a.x())}, {"y", to_json(a.y())}}; }

namespace {

template <class M>
json matrix_json(const M& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(to_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

template <class T>
json list_json(const std::vector<T>& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(to_json(x));
  return a;
}

json coeffs_json(const std::vector<Rational>& c) {
  json a = json::array();
  for (const auto& x : c) a.push_back(to_json(x));
  return a;
}

std::vector<Rational> coeffs_from_json(const json& j) {
  std::vector<Rational> out;
  for (const auto& x : j) {
    Rational q(x.is_string() ? x.get<std::string>() : std::to_string(x.get<long>()));
    q.canonicalize();
    out.push_back(q);
  }
  return out;
}

}  // namespace

json to_json(const IntMatrix& m) { return matrix_json(m); }
json to_json(const GwMatrix& m) { return matrix_json(m); }

json to_json(const FieldTag& f) {
  switch (f.kind) {
    case FieldTag::Kind::Rational: return {{"kind", "rational"}};
    case FieldTag::Kind::FiniteField: return {{"kind", "finite"}, {"p", f.p}, {"e", f.e}};
    case FieldTag::Kind::RealClosed: return {{"kind", "real"}};
    case FieldTag::Kind::ComplexClosed: return {{"kind", "complex"}};
    case FieldTag::Kind::Generic: return {{"kind", "generic"}};
  }
  return nullptr;
}

json to_json(const Atom& a) {
  json j{{"kind", to_string(a.kind)}, {"q", a.q}, {"p", a.p}, {"mult", a.mult}};
  if (a.kind == Atom::Kind::HoFib) j["d"] = to_json(a.d);
  if (a.kind == Atom::Kind::Cone) j["n"] = to_json(a.n);
  if (a.kind == Atom::Kind::Artin) j["degree"] = a.degree;
  return j;
}

json to_json(const MotiveExpression& e) {
  json atoms = json::array();
  for (const auto& a : e.atoms()) atoms.push_back(to_json(a));
  return {{"atoms", atoms}, {"text", e.str()}};
}

json to_json(const PlumbingGraph& g) {
  json vs = json::array();
  for (const auto& v : g.vertices) vs.push_back({{"id", v.id}, {"self_intersection", v.self_intersection}});
  json es = json::array();
  for (const auto& e : g.edges) {
    json pts = json::array();
    for (const auto& p : e.points) {
      json pj{{"degree", p.degree}, {"unit_class", p.unit_class}, {"multiplicity", p.multiplicity}};
      if (p.extension)
        pj["extension"] = {{"minimal_polynomial", coeffs_json(p.extension->minimal_polynomial)},
                           {"unit", coeffs_json(p.extension->unit)}};
      pts.push_back(std::move(pj));
    }
    es.push_back({{"a", e.a}, {"b", e.b}, {"points", pts}});
  }
  return {{"vertices", vs}, {"edges", es}, {"base_field", to_json(g.base_field)}};
}

json to_json(const GraphChecks& c) {
  return {{"is_tree", c.is_tree},
          {"is_orientable", c.is_orientable},
          {"is_transverse", c.is_transverse},
          {"all_points_rational", c.all_points_rational}};
}

json to_json(const IntSnf& r) {
  return {{"S", to_json(r.S)}, {"D", to_json(r.D)}, {"T", to_json(r.T)}, {"diagonal", list_json(r.D.diagonal())}};
}

json to_json(const GwSnf& r) {
  return {{"S", to_json(r.S)}, {"D", to_json(r.D)}, {"T", to_json(r.T)}, {"diagonal", list_json(r.D.diagonal())}};
}

json to_json(const Obstruction& o) {
  return {{"step", o.step},
          {"pivot", to_json(o.pivot)},
          {"blocker", to_json(o.blocker)},
          {"reason", o.reason},
          {"partial", to_json(o.partial)},
          {"S", to_json(o.S)},
          {"T", to_json(o.T)},
          {"d_plus", list_json(o.d_plus)},
          {"d_minus", list_json(o.d_minus)}};
}

json to_json(const LinkResult& r) {
  json j{{"mode", r.mode == Mode::Oriented ? "oriented" : "quadratic"},
         {"exact", r.exact},
         {"artin_part", to_json(r.artin)},
         {"artin_dual_target", to_json(r.artin_dual_target)},
         {"mu_part", to_json(r.mu_part)},
         {"oriented_matrix", to_json(r.oriented)},
         {"notes", r.notes}};
  j["motive"] = r.exact ? to_json(r.motive) : json(nullptr);
  if (r.quadratic) j["quadratic_matrix"] = to_json(*r.quadratic);
  if (r.oriented_snf) j["oriented_snf"] = to_json(*r.oriented_snf);
  if (r.quadratic_snf) j["quadratic_snf"] = to_json(*r.quadratic_snf);
  if (r.obstruction) j["obstruction"] = to_json(*r.obstruction);
  if (r.oriented_fallback) j["oriented_fallback"] = to_json(*r.oriented_fallback);
  return j;
}

json to_json(const DuValComparison& c) {
  return {{"row", c.row.name},
          {"firm", c.row.firm},
          {"table_value", c.row.table_value ? to_json(*c.row.table_value) : json(nullptr)},
          {"computed", list_json(c.computed)},
          {"oriented_invariants", list_json(c.oriented_invariants)},
          {"rank_realization", list_json(c.rank_realization)},
          {"rank_matches_oriented", c.rank_matches_oriented},
          {"matches_table", c.matches_table},
          {"report", c.report}};
}

json to_json(const HomologyGroup& h) { return {{"free_rank", h.free_rank}, {"torsion", list_json(h.torsion)}}; }

json to_json(const HomologyAtInfinity& h) {
  json hm = json::array();
  for (int i = 0; i < 4; ++i) {
    json pieces = json::array();
    for (const auto& p : h.hm[i]) {
      json pj = to_json(p.group);
      pj["twist"] = p.twist;
      pieces.push_back(std::move(pj));
    }
    hm.push_back({{"degree", i}, {"pieces", pieces}, {"extension_unresolved", h.extension_unresolved[i]}});
  }
  return {{"hm", hm}};
}

json to_json(const std::vector<RzTerm>& terms) {
  json a = json::array();
  for (const auto& t : terms)
    a.push_back({{"degree", t.degree},
                 {"twist", t.twist},
                 {"shift", t.shift},
                 {"rank", t.rank},
                 {"differential", t.degree == 0 ? json(nullptr) : to_json(t.differential)}});
  return a;
}

json to_json(const ChainComplexZ& c) {
  json d = json::array();
  for (const auto& m : c.differentials) d.push_back(to_json(m));
  json h = json::array();
  for (const auto& g : c.homology()) h.push_back(to_json(g));
  return {{"ranks", c.ranks}, {"differentials", d}, {"homology", h}};
}

json to_json(const Error& e) {
  json j{{"kind", std::string(to_string(e.kind()))}, {"message", e.what()}};
  if (const auto* pe = dynamic_cast<const ParseError*>(&e)) {
    j["line"] = pe->line();
    j["column"] = pe->column();
  }
  return {{"error", j}};
}

// ---------------------------------------------------------------------------

Integer integer_from_json(const json& j) {
  if (j.is_number_integer()) return Integer(j.get<long>());
  if (j.is_string()) {
    Integer n;
    if (n.set_str(j.get<std::string>(), 10) == 0) return n;
  }
  throw Error(ErrorKind::ParseError, "expected an integer in JSON, got " + j.dump());
}

GwElement gw_from_json(const json& j) {
  if (!j.is_object() || !j.contains("x") || !j.contains("y"))
    throw Error(ErrorKind::ParseError, "expected {\"x\":..,\"y\":..}, got " + j.dump());
  return {integer_from_json(j.at("x")), integer_from_json(j.at("y"))};
}

FieldTag field_from_json(const json& j) {
  const auto k = j.at("kind").get<std::string>();
  if (k == "rational") return FieldTag::rational();
  if (k == "finite") return FieldTag::finite(j.at("p").get<long>(), j.value("e", 1));
  if (k == "real") return FieldTag::real();
  if (k == "complex") return FieldTag::complex();
  if (k == "generic") return FieldTag::generic();
  throw Error(ErrorKind::ParseError, "unknown field kind '" + k + "'");
}

PlumbingGraph graph_from_json(const json& j) {
  try {
    PlumbingGraph g;
    if (j.contains("base_field")) g.base_field = field_from_json(j.at("base_field"));
    for (const auto& v : j.at("vertices"))
      g.vertices.push_back({v.at("id").get<std::string>(), v.at("self_intersection").get<long>()});
    for (const auto& e : j.value("edges", json::array())) {
      Intersection in{e.at("a").get<std::string>(), e.at("b").get<std::string>(), {}};
      for (const auto& p : e.value("points", json::array({json::object()}))) {
        Point pt;
        pt.degree = p.value("degree", 1L);
        pt.unit_class = p.value("unit_class", 1);
        pt.multiplicity = p.value("multiplicity", 1L);
        if (p.contains("extension")) {
          const auto& x = p.at("extension");
          pt.extension = ExtensionSpec{g.base_field, coeffs_from_json(x.at("minimal_polynomial")),
                                       x.contains("unit") ? coeffs_from_json(x.at("unit")) : std::vector<Rational>{1}};
        }
        in.points.push_back(std::move(pt));
      }
      g.edges.push_back(std::move(in));
    }
    g.validate();
    return g;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::ParseError, std::string("malformed graph JSON: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw Error(ErrorKind::ParseError, std::string("malformed graph JSON: ") + e.what());
  }
}

}  // namespace mplumb
