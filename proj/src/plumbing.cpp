#include "mplumb/plumbing.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "mplumb/error.hpp"

namespace mplumb {

void PlumbingGraph::validate() const {
  std::set<std::string> ids;
  for (const auto& v : vertices) {
    if (v.id.empty()) throw Error(ErrorKind::ValidationError, "empty vertex id");
    if (!ids.insert(v.id).second) throw Error(ErrorKind::ValidationError, "duplicate vertex id '" + v.id + "'");
  }
  for (const auto& e : edges) {
    for (const auto* end : {&e.a, &e.b})
      if (!ids.count(*end))
        throw Error(ErrorKind::ValidationError, "edge references undeclared vertex '" + *end + "'");
    if (e.a == e.b) throw Error(ErrorKind::ValidationError, "self-loop at '" + e.a + "'");
    if (e.points.empty()) throw Error(ErrorKind::ValidationError, "edge " + e.a + "-" + e.b + " has no points");
    for (const auto& p : e.points) {
      if (p.degree < 1) throw Error(ErrorKind::ValidationError, "nonpositive point degree on edge " + e.a + "-" + e.b);
      if (p.multiplicity < 1)
        throw Error(ErrorKind::ValidationError, "nonpositive multiplicity on edge " + e.a + "-" + e.b);
      if (p.unit_class != 1 && p.unit_class != -1)
        throw Error(ErrorKind::ValidationError, "unit class must be +1 or -1");
      if (p.extension && static_cast<long>(p.extension->degree()) != p.degree)
        throw Error(ErrorKind::ValidationError, "point degree disagrees with its minimal polynomial");
    }
  }
}

std::size_t PlumbingGraph::index_of(const std::string& id) const {
  for (std::size_t i = 0; i < vertices.size(); ++i)
    if (vertices[i].id == id) return i;
  throw Error(ErrorKind::ValidationError, "unknown vertex '" + id + "'");
}

std::size_t PlumbingGraph::point_count() const {
  std::size_t n = 0;
  for (const auto& e : edges) n += e.points.size();
  return n;
}

PlumbingGraph PlumbingGraph::permuted(const std::vector<std::size_t>& perm) const {
  PlumbingGraph g = *this;
  for (std::size_t i = 0; i < vertices.size(); ++i) g.vertices[perm[i]] = vertices[i];
  return g;
}

// ---------------------------------------------------------------------------
// parser

namespace {

struct Token {
  std::string text;
  std::size_t line;
  std::size_t col;
};

// Statements are token lists; ';' closes a statement.
std::vector<std::vector<Token>> tokenize(const std::string& src, std::size_t& eof_line, std::size_t& eof_col) {
  std::vector<std::vector<Token>> stmts;
  std::vector<Token> cur;
  std::size_t line = 1, col = 1;
  std::size_t i = 0;
  auto advance = [&](char c) {
    if (c == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  };
  while (i < src.size()) {
    char c = src[i];
    if (c == '#') {
      while (i < src.size() && src[i] != '\n') advance(src[i++]);
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(c);
      ++i;
      continue;
    }
    if (c == ';') {
      if (cur.empty()) throw ParseError(line, col, "empty statement");
      stmts.push_back(std::move(cur));
      cur.clear();
      advance(c);
      ++i;
      continue;
    }
    Token t{"", line, col};
    while (i < src.size() && !std::isspace(static_cast<unsigned char>(src[i])) && src[i] != ';' && src[i] != '#') {
      t.text += src[i];
      advance(src[i++]);
    }
    cur.push_back(std::move(t));
  }
  eof_line = line;
  eof_col = col;
  if (!cur.empty()) throw ParseError(cur.front().line, cur.front().col, "statement not terminated by ';'");
  return stmts;
}

long parse_long(const Token& t, const std::string& what) {
  try {
    std::size_t used = 0;
    std::string s = t.text;
    if (!s.empty() && s[0] == '+') s.erase(0, 1);
    long v = std::stol(s, &used);
    if (used != s.size()) throw std::invalid_argument(what);
    return v;
  } catch (const std::logic_error&) {
    throw ParseError(t.line, t.col, "expected integer " + what + ", got '" + t.text + "'");
  }
}

long parse_long_value(const Token& t, const std::string& value, const std::string& what) {
  return parse_long(Token{value, t.line, t.col}, what);
}

std::vector<Rational> parse_coeffs(const Token& t, const std::string& value) {
  std::vector<Rational> out;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty() && item[0] == '+') item.erase(0, 1);
    try {
      Rational q(item);
      q.canonicalize();
      out.push_back(q);
    } catch (const std::invalid_argument&) {
      throw ParseError(t.line, t.col, "bad coefficient '" + item + "'");
    }
  }
  if (out.empty()) throw ParseError(t.line, t.col, "empty coefficient list");
  return out;
}

FieldTag parse_field(const std::vector<Token>& s) {
  const std::string& k = s.size() > 1 ? s[1].text : "";
  auto arity = [&](std::size_t lo, std::size_t hi) {
    if (s.size() < lo || s.size() > hi) throw ParseError(s[0].line, s[0].col, "wrong number of arguments to 'field'");
  };
  if (k == "rational") return arity(2, 2), FieldTag::rational();
  if (k == "real") return arity(2, 2), FieldTag::real();
  if (k == "complex") return arity(2, 2), FieldTag::complex();
  if (k == "generic") return arity(2, 2), FieldTag::generic();
  if (k == "finite") {
    arity(3, 4);
    long p = parse_long(s[2], "characteristic");
    long e = s.size() == 4 ? parse_long(s[3], "degree") : 1;
    if (p < 2 || e < 1) throw ParseError(s[2].line, s[2].col, "bad finite field parameters");
    return FieldTag::finite(p, static_cast<int>(e));
  }
  const Token& at = s.size() > 1 ? s[1] : s[0];
  throw ParseError(at.line, at.col, "unknown field '" + k + "'");
}

}  // namespace

PlumbingGraph parse_graph(const std::string& text) {
  std::size_t eof_line = 0, eof_col = 0;
  auto stmts = tokenize(text, eof_line, eof_col);
  PlumbingGraph g;
  bool field_seen = false;

  // Extensions need the base field, which may be declared later.
  struct PendingExt {
    std::size_t edge, point;
    std::vector<Rational> f, u;
  };
  std::vector<PendingExt> pending;

  for (const auto& s : stmts) {
    const std::string& kw = s[0].text;
    if (kw == "vertex") {
      if (s.size() != 3) throw ParseError(s[0].line, s[0].col, "expected 'vertex <id> <self-intersection>'");
      g.vertices.push_back({s[1].text, parse_long(s[2], "self-intersection")});
    } else if (kw == "edge") {
      if (s.size() < 3) throw ParseError(s[0].line, s[0].col, "expected 'edge <id> <id> ...'");
      Intersection e{s[1].text, s[2].text, {}};
      std::size_t i = 3;
      while (i < s.size()) {
        if (s[i].text != "point") throw ParseError(s[i].line, s[i].col, "expected 'point', got '" + s[i].text + "'");
        ++i;
        Point p;
        std::optional<std::vector<Rational>> f, u;
        while (i < s.size() && s[i].text != "point") {
          const Token& t = s[i++];
          auto eq = t.text.find('=');
          if (eq == std::string::npos || eq == 0) throw ParseError(t.line, t.col, "expected key=value, got '" + t.text + "'");
          std::string key = t.text.substr(0, eq), value = t.text.substr(eq + 1);
          if (key == "deg") {
            p.degree = parse_long_value(t, value, "degree");
          } else if (key == "mult") {
            p.multiplicity = parse_long_value(t, value, "multiplicity");
          } else if (key == "unit") {
            long v = parse_long_value(t, value, "unit class");
            if (v != 1 && v != -1) throw ParseError(t.line, t.col, "unit must be +1 or -1");
            p.unit_class = static_cast<int>(v);
          } else if (key == "f") {
            f = parse_coeffs(t, value);
          } else if (key == "u") {
            u = parse_coeffs(t, value);
          } else {
            throw ParseError(t.line, t.col, "unknown point key '" + key + "'");
          }
        }
        if (u && !f) throw ParseError(s[0].line, s[0].col, "'u=' given without 'f='");
        if (f) pending.push_back({g.edges.size(), e.points.size(), *f, u.value_or(std::vector<Rational>{1})});
        e.points.push_back(p);
      }
      if (e.points.empty()) e.points.push_back(Point{});
      g.edges.push_back(std::move(e));
    } else if (kw == "field") {
      if (field_seen) throw ParseError(s[0].line, s[0].col, "duplicate 'field' statement");
      field_seen = true;
      g.base_field = parse_field(s);
    } else {
      throw ParseError(s[0].line, s[0].col, "unknown statement '" + kw + "'");
    }
  }
  for (const auto& pe : pending) g.edges[pe.edge].points[pe.point].extension = ExtensionSpec{g.base_field, pe.f, pe.u};
  g.validate();
  return g;
}

std::string serialize_graph(const PlumbingGraph& g) {
  std::ostringstream os;
  if (g.base_field.kind != FieldTag::Kind::Generic) os << "field " << g.base_field.str() << ";\n";
  for (const auto& v : g.vertices) os << "vertex " << v.id << ' ' << v.self_intersection << ";\n";
  auto coeffs = [](const std::vector<Rational>& c) {
    std::string s;
    for (std::size_t i = 0; i < c.size(); ++i) s += (i ? "," : "") + c[i].get_str();
    return s;
  };
  for (const auto& e : g.edges) {
    os << "edge " << e.a << ' ' << e.b;
    for (const auto& p : e.points) {
      os << " point deg=" << p.degree << " unit=" << (p.unit_class > 0 ? "+1" : "-1") << " mult=" << p.multiplicity;
      if (p.extension) os << " f=" << coeffs(p.extension->minimal_polynomial) << " u=" << coeffs(p.extension->unit);
    }
    os << ";\n";
  }
  return os.str();
}

GraphChecks checks(const PlumbingGraph& g) {
  GraphChecks c;
  c.is_orientable = std::all_of(g.vertices.begin(), g.vertices.end(),
                                [](const Curve& v) { return v.self_intersection % 2 == 0; });
  c.is_transverse = true;
  c.all_points_rational = true;
  for (const auto& e : g.edges)
    for (const auto& p : e.points) {
      if (p.multiplicity != 1) c.is_transverse = false;
      if (p.degree != 1) c.all_points_rational = false;
    }

  // Tree: connected, and one point per edge of a spanning tree (a pair meeting
  // in two points already closes a loop).
  const std::size_t n = g.size();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  bool acyclic = true;
  std::size_t components = n;
  for (const auto& e : g.edges) {
    if (e.points.size() != 1) acyclic = false;
    auto a = find(g.index_of(e.a)), b = find(g.index_of(e.b));
    if (a == b) {
      acyclic = false;
    } else {
      parent[a] = b;
      --components;
    }
  }
  c.is_tree = n > 0 && acyclic && components == 1;
  return c;
}

// ---------------------------------------------------------------------------
// catalog

namespace {

std::string vid(int i) { return "v" + std::to_string(i); }

void link(PlumbingGraph& g, const std::string& a, const std::string& b) { g.edges.push_back({a, b, {Point{}}}); }

}  // namespace

PlumbingGraph dynkin(char kind, int n) {
  bool ok = (kind == 'A' && n >= 1) || (kind == 'D' && n >= 4) || (kind == 'E' && n >= 6 && n <= 8);
  if (!ok)
    throw Error(ErrorKind::InvalidParameter, std::string("no Dynkin diagram ") + kind + std::to_string(n));
  PlumbingGraph g;
  for (int i = 1; i <= n; ++i) g.vertices.push_back({vid(i), -2});
  const int path = kind == 'A' ? n : n - 1;
  for (int i = 1; i < path; ++i) link(g, vid(i), vid(i + 1));
  if (kind == 'D') link(g, vid(2), vid(n));
  if (kind == 'E') link(g, vid(3), vid(n));
  return g;
}

PlumbingGraph danielewski(int n) {
  if (n < 1) throw Error(ErrorKind::InvalidParameter, "danielewski index must be >= 1");
  PlumbingGraph g;
  g.vertices = {{"Finf", 0}, {"Cinf", 0}, {"F0", -2}};
  for (int side : {0, 1})
    for (int i = 1; i < n; ++i) g.vertices.push_back({"E" + std::to_string(i) + "_" + std::to_string(side), -2});
  link(g, "Finf", "Cinf");
  link(g, "Cinf", "F0");
  for (int side : {0, 1}) {
    std::string prev = "F0";
    for (int i = 1; i < n; ++i) {
      std::string cur = "E" + std::to_string(i) + "_" + std::to_string(side);
      link(g, prev, cur);
      prev = cur;
    }
  }
  return g;
}

PlumbingGraph ramanujam() {
  PlumbingGraph g;
  g.vertices = {{"Q", 4}, {"C", 3}, {"E", -1}};
  g.edges.push_back({"Q", "C", {Point{1, std::nullopt, 1, 5}}});
  g.edges.push_back({"Q", "E", {Point{1, std::nullopt, 1, 2}}});
  return g;
}

}  // namespace mplumb
