#include "mplumb/cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <regex>
#include <sstream>

#include "mplumb/json_io.hpp"

namespace mplumb {

std::vector<std::string> catalog_list() {
  std::vector<std::string> names;
  for (int n = 1; n <= 12; ++n) names.push_back("dynkin:A" + std::to_string(n));
  for (int n = 4; n <= 10; ++n) names.push_back("dynkin:D" + std::to_string(n));
  for (int n = 6; n <= 8; ++n) names.push_back("dynkin:E" + std::to_string(n));
  for (int n = 1; n <= 8; ++n) names.push_back("danielewski:" + std::to_string(n));
  names.push_back("ramanujam");
  return names;
}

PlumbingGraph catalog_graph(const std::string& name) {
  static const std::regex dyn(R"(dynkin:([ADE])([0-9]{1,4}))");
  static const std::regex dan(R"(danielewski:([0-9]{1,4}))");
  std::smatch m;
  try {
    if (std::regex_match(name, m, dyn)) return dynkin(m[1].str()[0], std::stoi(m[2].str()));
    if (std::regex_match(name, m, dan)) return danielewski(std::stoi(m[1].str()));
  } catch (const Error& e) {
    throw Error(ErrorKind::UnknownCatalog, "unknown catalog entry '" + name + "': " + e.what());
  }
  if (name == "ramanujam") return ramanujam();
  throw Error(ErrorKind::UnknownCatalog, "unknown catalog entry '" + name + "'");
}

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::IoError, "cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

PlumbingGraph load_graph(const std::string& path) {
  const std::string text = read_file(path);
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    json j;
    try {
      j = json::parse(text);
    } catch (const json::parse_error& e) {
      throw Error(ErrorKind::ParseError, std::string("invalid JSON: ") + e.what());
    }
    return graph_from_json(j);
  }
  return parse_graph(text);
}

// Entries like 3, -2, h, -h, e, 2+3e, 2h-1.
GwElement parse_gw_entry(const std::string& tok) {
  static const std::regex term(R"(([+-]?)([0-9]*)([he]?))");
  if (tok.empty()) throw Error(ErrorKind::ParseError, "empty matrix entry");
  GwElement sum;
  std::size_t pos = 0;
  while (pos < tok.size()) {
    std::size_t next = tok.find_first_of("+-", pos + 1);
    std::string t = tok.substr(pos, next == std::string::npos ? std::string::npos : next - pos);
    std::smatch m;
    if (!std::regex_match(t, m, term) || (m[2].length() == 0 && m[3].length() == 0))
      throw Error(ErrorKind::ParseError, "bad matrix entry '" + tok + "'");
    Integer c = m[2].length() ? Integer(m[2].str()) : Integer(1);
    if (m[1].str() == "-") c = -c;
    if (m[3].str() == "h")
      sum += GwElement(c, c);
    else if (m[3].str() == "e")
      sum += GwElement(Integer(0), c);
    else
      sum += GwElement(c, Integer(0));
    pos = next == std::string::npos ? tok.size() : next;
  }
  return sum;
}

GwMatrix parse_matrix(const std::string& s) {
  std::vector<std::vector<GwElement>> rows;
  std::stringstream ss(s);
  std::string row;
  while (std::getline(ss, row, ';')) {
    std::istringstream rs(row);
    std::vector<GwElement> r;
    std::string tok;
    while (rs >> tok) r.push_back(parse_gw_entry(tok));
    if (!r.empty()) rows.push_back(std::move(r));
  }
  if (rows.empty()) throw Error(ErrorKind::ParseError, "empty matrix");
  for (const auto& r : rows)
    if (r.size() != rows.front().size()) throw Error(ErrorKind::ParseError, "rows of different lengths");
  return GwMatrix::from_rows(rows);
}

bool integral(const GwMatrix& m) {
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (m(i, j).y() != 0) return false;
  return true;
}

struct Options {
  std::string catalog, graph, arrangement, matrix;
  std::string mode = "oriented";
  std::string format = "json";
  bool rational = false;
};

Mode mode_of(const Options& o) { return o.mode == "quadratic" ? Mode::Quadratic : Mode::Oriented; }

PlumbingGraph graph_input(const Options& o) {
  const int n = !o.catalog.empty() + !o.graph.empty();
  if (n != 1) throw Error(ErrorKind::ValidationError, "give exactly one of --catalog or --graph");
  return o.catalog.empty() ? load_graph(o.graph) : catalog_graph(o.catalog);
}

// ---------------------------------------------------------------------------
// text tables (presentation only)

template <class M>
void print_matrix(std::ostream& os, const M& m) {
  std::vector<std::vector<std::string>> cells(m.rows(), std::vector<std::string>(m.cols()));
  std::size_t w = 1;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      std::ostringstream c;
      c << m(i, j);
      cells[i][j] = c.str();
      w = std::max(w, cells[i][j].size());
    }
  for (const auto& r : cells) {
    os << "  [";
    for (std::size_t j = 0; j < r.size(); ++j) os << (j ? " " : "") << std::setw(static_cast<int>(w)) << r[j];
    os << "]\n";
  }
}

void print_table(std::ostream& os, const std::string& command, const json& j) {
  if (j.contains("error")) {
    os << "error (" << j["error"]["kind"].get<std::string>() << "): " << j["error"]["message"].get<std::string>()
       << "\n";
    return;
  }
  if (command == "link") {
    os << "mode: " << j["mode"].get<std::string>() << (j["exact"].get<bool>() ? "" : " (partial)") << "\n";
    if (!j["motive"].is_null()) os << "link: " << j["motive"]["text"].get<std::string>() << "\n";
    os << "hofib part: " << j["mu_part"]["text"].get<std::string>() << "\n";
    os << "artin part: " << j["artin_part"]["text"].get<std::string>() << "\n";
    for (const auto& n : j["notes"]) os << "note: " << n.get<std::string>() << "\n";
    if (j.contains("du_val")) os << "table: " << j["du_val"]["report"].get<std::string>() << "\n";
    return;
  }
  if (command == "homology") {
    for (const auto& d : j["hm"]) {
      os << "HM" << d["degree"].get<int>() << ":";
      if (d["pieces"].empty()) os << " 0";
      for (const auto& p : d["pieces"]) {
        os << "  twist " << p["twist"].get<long>() << ": Z^" << p["free_rank"].get<long>();
        for (const auto& t : p["torsion"]) os << " + Z/" << t.dump();
      }
      if (d["extension_unresolved"].get<bool>()) os << "  (extension unresolved)";
      os << "\n";
    }
    return;
  }
  if (command == "arrangement") {
    os << "dimension " << j["dimension"].get<long>() << ", " << j["hyperplanes"].get<long>() << " hyperplanes\n";
    os << "m(n):";
    for (const auto& [k, v] : j["multiplicities"].items()) os << " m(" << k << ")=" << v.dump();
    os << "\ncomplement: " << j["complement"]["text"].get<std::string>() << "\n";
    if (!j["infinity"].is_null()) os << "infinity: " << j["infinity"]["text"].get<std::string>() << "\n";
    if (!j["dual"].is_null()) os << "dual: " << j["dual"]["text"].get<std::string>() << "\n";
    return;
  }
  if (command == "catalog" && j.contains("names")) {
    for (const auto& n : j["names"]) os << n.get<std::string>() << "\n";
    return;
  }
  os << j.dump(2) << "\n";
}

// ---------------------------------------------------------------------------

struct Outcome {
  json body;
  int code = 0;
};

Outcome cmd_link(const Options& o, const ClassifyOptions& co) {
  const auto g = graph_input(o);
  const auto r = link_decomposition(g, mode_of(o), co);
  Outcome out{to_json(r), 0};
  out.body["vertices"] = json::array();
  for (const auto& v : g.vertices) out.body["vertices"].push_back(v.id);
  static const std::regex dyn(R"(dynkin:([ADE])([0-9]+))");
  std::smatch m;
  if (mode_of(o) == Mode::Quadratic && std::regex_match(o.catalog, m, dyn))
    out.body["du_val"] = to_json(compare_du_val(m[1].str()[0], std::stoi(m[2].str())));
  if (r.obstruction) {
    json err = to_json(Error(ErrorKind::Obstruction, r.notes.front()));
    err["error"]["obstruction"] = to_json(*r.obstruction);
    err["error"]["oriented_fallback"] = to_json(*r.oriented_fallback);
    return {err, 2};
  }
  return out;
}

Outcome cmd_mumford(const Options& o, const ClassifyOptions& co) {
  const auto g = graph_input(o);
  json j{{"mode", o.mode}, {"checks", to_json(checks(g))}};
  j["vertices"] = json::array();
  for (const auto& v : g.vertices) j["vertices"].push_back(v.id);
  if (mode_of(o) == Mode::Oriented)
    j["matrix"] = to_json(oriented_matrix(g));
  else
    j["matrix"] = to_json(quadratic_matrix(g, co));
  return {j, 0};
}

Outcome cmd_snf(const Options& o, const ClassifyOptions& co) {
  GwMatrix m;
  if (!o.matrix.empty()) {
    if (!o.catalog.empty() || !o.graph.empty())
      throw Error(ErrorKind::ValidationError, "give exactly one of --matrix, --catalog or --graph");
    m = parse_matrix(o.matrix);
  } else {
    const auto g = graph_input(o);
    m = mode_of(o) == Mode::Oriented ? to_gw(oriented_matrix(g)) : quadratic_matrix(g, co);
  }
  if (mode_of(o) == Mode::Oriented) {
    if (!integral(m)) throw Error(ErrorKind::ValidationError, "oriented mode needs an integer matrix");
    const auto r = snf_int(project_plus(m));
    json j = to_json(r);
    j["mode"] = "oriented";
    return {j, 0};
  }
  auto res = diagonalize_zeps(m);
  if (auto* ob = std::get_if<Obstruction>(&res)) {
    json err = to_json(Error(ErrorKind::Obstruction, ob->reason));
    err["error"]["obstruction"] = to_json(*ob);
    return {err, 2};
  }
  json j = to_json(std::get<GwSnf>(res));
  j["mode"] = "quadratic";
  return {j, 0};
}

Outcome cmd_homology(const Options& o, const ClassifyOptions& co) {
  const auto g = graph_input(o);
  json j = to_json(homology_at_infinity(g, mode_of(o), o.rational, co));
  j["mode"] = o.mode;
  j["rational"] = o.rational;
  return {j, 0};
}

Outcome cmd_rz(const Options& o) {
  const auto g = graph_input(o);
  const auto cover = cover_of(g);
  return {json{{"terms", to_json(rz_complex(cover))}, {"cech", to_json(ordered_cech(cover))}}, 0};
}

Outcome cmd_arrangement(const Options& o) {
  if (o.arrangement.empty()) throw Error(ErrorKind::ValidationError, "arrangement needs --arrangement FILE");
  const auto arr = parse_arrangement(read_file(o.arrangement));
  const auto fd = flats(arr);
  json j{{"dimension", arr.dimension}, {"hyperplanes", arr.hyperplanes.size()}, {"normal_crossing", fd.normal_crossing}};
  json flats_j = json::array();
  for (const auto& f : fd.flats) {
    json J = json::array();
    for (auto i : f.J) J.push_back(i + 1);
    flats_j.push_back({{"J", J}, {"codim", f.codim}});
  }
  j["flats"] = flats_j;
  json mult = json::object();
  for (const auto& [n, c] : multiplicities(arr)) mult[std::to_string(n)] = c;
  j["multiplicities"] = mult;
  j["complement"] = to_json(complement_decomposition(arr));
  if (fd.normal_crossing) {
    j["infinity"] = to_json(infinity_decomposition(arr));
    j["dual"] = to_json(dual_decomposition(arr));
  } else {
    j["infinity"] = nullptr;
    j["dual"] = nullptr;
    j["notes"] = json::array({"not normal crossing: infinity and dual decompositions are not computed"});
  }
  return {j, 0};
}

Outcome cmd_catalog(const Options& o) {
  if (!o.catalog.empty()) {
    const auto g = catalog_graph(o.catalog);
    return {json{{"name", o.catalog}, {"graph", to_json(g)}, {"checks", to_json(checks(g))}, {"dsl", serialize_graph(g)}},
            0};
  }
  return {json{{"names", catalog_list()},
               {"patterns", {"dynkin:A<n> (n>=1)", "dynkin:D<n> (n>=4)", "dynkin:E6", "dynkin:E7", "dynkin:E8",
                             "danielewski:<n> (n>=1)", "ramanujam"}}},
          0};
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Quadratic Mumford matrices, stable motivic links and homology at infinity", "motivic-plumb"};
  app.require_subcommand(1);
  Options o;

  auto add_graph_opts = [&](CLI::App* sub) {
    sub->add_option("--catalog", o.catalog, "catalog graph, e.g. dynkin:E8, danielewski:3, ramanujam");
    sub->add_option("--graph", o.graph, "graph file (DSL or JSON)");
  };
  auto add_mode = [&](CLI::App* sub) {
    sub->add_option("--mode", o.mode, "oriented or quadratic")->check(CLI::IsMember({"oriented", "quadratic"}));
  };
  auto add_format = [&](CLI::App* sub) {
    sub->add_option("--format", o.format, "json or table")->check(CLI::IsMember({"json", "table"}));
  };

  auto* link = app.add_subcommand("link", "stable motivic link of a tree plumbing");
  auto* mumford = app.add_subcommand("mumford", "oriented or quadratic Mumford matrix");
  auto* snf = app.add_subcommand("snf", "Smith form / Z_eps diagonalization");
  auto* homology = app.add_subcommand("homology", "Artin-Tate homology at infinity");
  auto* rz = app.add_subcommand("rz", "Rapoport-Zink style complex of the boundary");
  auto* arrangement = app.add_subcommand("arrangement", "hyperplane arrangement decompositions");
  auto* catalog = app.add_subcommand("catalog", "list catalog graphs, or show one with --catalog");
  for (auto* s : {link, mumford, snf, homology, rz}) add_graph_opts(s);
  for (auto* s : {link, mumford, snf, homology}) add_mode(s);
  for (auto* s : {link, mumford, snf, homology, rz, arrangement, catalog}) add_format(s);
  snf->add_option("--matrix", o.matrix, "rows separated by ';', entries like 3, -h, 2+e");
  homology->add_flag("--rational", o.rational, "drop torsion");
  arrangement->add_option("--arrangement", o.arrangement, "arrangement file")->required();
  catalog->add_option("--catalog", o.catalog, "catalog entry to show");

  std::vector<const char*> argv{"motivic-plumb"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  Outcome result;
  try {
    ClassifyOptions co;
    if (const char* env = std::getenv("MOTIVIC_PLUMB_SQUAREFREE_BOUND")) {
      try {
        std::size_t used = 0;
        const long long v = std::stoll(env, &used);
        if (used != std::string(env).size() || v < 2) throw std::invalid_argument(env);
        co.squarefree_bound = static_cast<std::uint64_t>(v);
      } catch (const std::logic_error&) {
        throw Error(ErrorKind::ValidationError, std::string("bad MOTIVIC_PLUMB_SQUAREFREE_BOUND '") + env + "'");
      }
    }
    if (command == "link") result = cmd_link(o, co);
    else if (command == "mumford") result = cmd_mumford(o, co);
    else if (command == "snf") result = cmd_snf(o, co);
    else if (command == "homology") result = cmd_homology(o, co);
    else if (command == "rz") result = cmd_rz(o);
    else if (command == "arrangement") result = cmd_arrangement(o);
    else result = cmd_catalog(o);
  } catch (const Error& e) {
    result = {to_json(e), is_input_error(e.kind()) ? 1 : 2};
    err << "motivic-plumb: " << to_string(e.kind()) << ": " << e.what() << "\n";
  }

  if (o.format == "table")
    print_table(out, command, result.body);
  else
    out << result.body.dump(2) << "\n";
  return result.code;
}

}  // namespace mplumb
