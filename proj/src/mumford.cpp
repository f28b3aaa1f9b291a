#include "mplumb/mumford.hpp"

#include <algorithm>
#include <sstream>
#include <tuple>

#include "mplumb/error.hpp"

namespace mplumb {

// ---------------------------------------------------------------------------
// atoms

Atom Atom::tate(long q, long p, long mult) {
  Atom a;
  a.kind = Kind::Tate;
  a.q = q;
  a.p = p;
  a.mult = mult;
  return a;
}

Atom Atom::hofib(const GwElement& d, long q, long p, long mult) {
  if (d.is_zero() || is_unit(d)) throw std::invalid_argument("hofib atom needs a nonzero non-unit");
  Atom a = tate(q, p, mult);
  a.kind = Kind::HoFib;
  a.d = normalize_unit(d);
  return a;
}

Atom Atom::cone(const Integer& n, long q, long p, long mult) {
  if (n <= 1) throw std::invalid_argument("cone atom needs n > 1");
  Atom a = tate(q, p, mult);
  a.kind = Kind::Cone;
  a.n = n;
  return a;
}

Atom Atom::artin(long degree, long q, long p, long mult) {
  if (degree < 1) throw std::invalid_argument("artin atom needs degree >= 1");
  Atom a = tate(q, p, mult);
  a.kind = Kind::Artin;
  a.degree = degree;
  return a;
}

std::string to_string(Atom::Kind k) {
  switch (k) {
    case Atom::Kind::Tate: return "tate";
    case Atom::Kind::HoFib: return "hofib";
    case Atom::Kind::Cone: return "cone";
    case Atom::Kind::Artin: return "artin";
  }
  return "?";
}

std::string Atom::str() const {
  std::ostringstream os;
  if (mult != 1) os << mult << "*";
  switch (kind) {
    case Kind::Tate: os << "1"; break;
    case Kind::HoFib: os << "hofib(" << d << ")"; break;
    case Kind::Cone: os << "cone(" << n << ")"; break;
    case Kind::Artin: os << "M(L" << degree << ")"; break;
  }
  os << "(" << q << ")[" << p << "]";
  return os.str();
}

namespace {

auto atom_key(const Atom& a) {
  return std::tuple{a.q, a.p, static_cast<int>(a.kind), a.d.x(), a.d.y(), a.n, a.degree};
}

}  // namespace

void MotiveExpression::canonicalize() {
  std::sort(atoms_.begin(), atoms_.end(), [](const Atom& a, const Atom& b) { return atom_key(a) < atom_key(b); });
  std::vector<Atom> merged;
  for (const auto& a : atoms_) {
    if (!merged.empty() && atom_key(merged.back()) == atom_key(a))
      merged.back().mult += a.mult;
    else
      merged.push_back(a);
  }
  merged.erase(std::remove_if(merged.begin(), merged.end(), [](const Atom& a) { return a.mult == 0; }), merged.end());
  atoms_ = std::move(merged);
}

MotiveExpression& MotiveExpression::add(const Atom& a) {
  atoms_.push_back(a);
  canonicalize();
  return *this;
}

MotiveExpression& MotiveExpression::add(const MotiveExpression& e) {
  atoms_.insert(atoms_.end(), e.atoms_.begin(), e.atoms_.end());
  canonicalize();
  return *this;
}

long MotiveExpression::count(Atom::Kind k) const {
  long n = 0;
  for (const auto& a : atoms_)
    if (a.kind == k) n += a.mult;
  return n;
}

MotiveExpression MotiveExpression::shifted(long dq, long dp) const {
  auto atoms = atoms_;
  for (auto& a : atoms) {
    a.q += dq;
    a.p += dp;
  }
  return MotiveExpression(std::move(atoms));
}

MotiveExpression MotiveExpression::dual() const {
  auto atoms = atoms_;
  for (auto& a : atoms) {
    a.q = -a.q;
    a.p = -a.p;
    // D(cofib n) = fib n = cofib n shifted down; D(fib d) = cofib d = fib d shifted up
    if (a.kind == Atom::Kind::Cone) a.p -= 1;
    if (a.kind == Atom::Kind::HoFib) a.p += 1;
  }
  return MotiveExpression(std::move(atoms));
}

std::string MotiveExpression::str() const {
  if (atoms_.empty()) return "0";
  std::string s;
  for (std::size_t i = 0; i < atoms_.size(); ++i) s += (i ? " + " : "") + atoms_[i].str();
  return s;
}

bool operator==(const MotiveExpression& a, const MotiveExpression& b) {
  if (a.atoms_.size() != b.atoms_.size()) return false;
  for (std::size_t i = 0; i < a.atoms_.size(); ++i)
    if (atom_key(a.atoms_[i]) != atom_key(b.atoms_[i]) || a.atoms_[i].mult != b.atoms_[i].mult) return false;
  return true;
}

// ---------------------------------------------------------------------------
// matrices

IntMatrix oriented_matrix(const PlumbingGraph& g) {
  const std::size_t n = g.size();
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = g.vertices[i].self_intersection;
  for (const auto& e : g.edges) {
    const auto i = g.index_of(e.a), j = g.index_of(e.b);
    for (const auto& p : e.points) {
      m(i, j) += Integer(p.degree) * p.multiplicity;
      m(j, i) += Integer(p.degree) * p.multiplicity;
    }
  }
  return m;
}

GwElement point_class(const Point& pt, const FieldTag& base, const ClassifyOptions& options) {
  if (!pt.extension) {
    if (pt.degree != 1)
      throw Error(ErrorKind::MissingExtension,
                  "point of degree " + std::to_string(pt.degree) + " needs its minimal polynomial (f=...)");
    return pt.unit_class > 0 ? GwElement::one() : GwElement::eps();
  }
  ExtensionSpec ext = *pt.extension;
  if (ext.base.kind == FieldTag::Kind::Generic) ext.base = base;
  if (pt.unit_class < 0)
    for (auto& c : ext.unit) c = -c;
  auto cls = classify(trace_form(ext), GwModelTag::ZEps, options);
  return *cls.element;
}

GwMatrix quadratic_matrix(const PlumbingGraph& g, const ClassifyOptions& options) {
  const auto c = checks(g);
  for (const auto& v : g.vertices)
    if (v.self_intersection % 2 != 0)
      throw Error(ErrorKind::NotOrientable,
                  "vertex '" + v.id + "' has odd self-intersection " + std::to_string(v.self_intersection));
  if (!c.is_transverse) throw Error(ErrorKind::NotTransverse, "some intersection point has multiplicity > 1");
  if (!c.is_tree) throw Error(ErrorKind::NotTree, "the dual graph is not a tree");

  const std::size_t n = g.size();
  GwMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = GwElement(g.vertices[i].self_intersection / 2) * GwElement::h();
  for (const auto& e : g.edges) {
    const auto i = g.index_of(e.a), j = g.index_of(e.b);
    for (const auto& p : e.points) {
      const GwElement cls = point_class(p, g.base_field, options);
      m(i, j) += cls;
      m(j, i) += cls;
    }
  }
  return m;
}

IntMatrix incidence_matrix(const PlumbingGraph& g) {
  IntMatrix q(g.size(), g.point_count());
  std::size_t col = 0;
  for (const auto& e : g.edges) {
    const auto i = g.index_of(e.a), j = g.index_of(e.b);
    for (std::size_t k = 0; k < e.points.size(); ++k, ++col) {
      q(i, col) = 1;
      q(j, col) = -1;
    }
  }
  return q;
}

namespace {

void require_rational(const PlumbingGraph& g) {
  for (const auto& e : g.edges)
    for (const auto& p : e.points)
      if (p.degree != 1)
        throw Error(ErrorKind::NonRationalPoint,
                    "edge " + e.a + "-" + e.b + " has a point of degree " + std::to_string(p.degree));
}

}  // namespace

MotiveExpression artin_part(const PlumbingGraph& g) {
  require_rational(g);
  const auto kc = kernel_cokernel(incidence_matrix(g));
  MotiveExpression d;
  if (kc.cokernel_free_rank) d.add(Atom::tate(0, 0, static_cast<long>(kc.cokernel_free_rank)));
  for (const auto& t : kc.torsion) d.add(Atom::cone(t, 0, 0));
  if (kc.kernel_rank) d.add(Atom::tate(0, 1, static_cast<long>(kc.kernel_rank)));
  return d;
}

MotiveExpression diagonal_atoms(const std::vector<GwElement>& diag) {
  MotiveExpression e;
  for (const auto& d : diag) {
    if (is_unit(d)) continue;
    if (d.is_zero()) {
      e.add(Atom::tate(1, 2));
      e.add(Atom::tate(1, 1));
    } else {
      e.add(Atom::hofib(d, 1, 2));
    }
  }
  return e;
}

MotiveExpression diagonal_atoms(const std::vector<Integer>& diag) {
  MotiveExpression e;
  for (const auto& d : diag) {
    const Integer a = abs(d);
    if (a == 1) continue;
    if (a == 0) {
      e.add(Atom::tate(1, 2));
      e.add(Atom::tate(1, 1));
    } else {
      e.add(Atom::cone(a, 1, 1));
    }
  }
  return e;
}

LinkResult link_decomposition(const PlumbingGraph& g, Mode mode, const ClassifyOptions& options) {
  LinkResult r;
  r.mode = mode;
  const auto c = checks(g);
  r.oriented = oriented_matrix(g);
  if (mode == Mode::Quadratic) {
    r.quadratic = quadratic_matrix(g, options);  // enforces orientable, transverse, tree
    require_rational(g);
  }
  r.artin = artin_part(g);
  r.artin_dual_target = r.artin.dual().shifted(2, 4);

  r.oriented_snf = snf_int(r.oriented);
  const auto oriented_mu = diagonal_atoms(r.oriented_snf->D.diagonal());

  if (mode == Mode::Oriented) {
    r.mu_part = oriented_mu;
  } else {
    auto res = diagonalize_zeps(*r.quadratic);
    if (auto* ob = std::get_if<Obstruction>(&res)) {
      r.exact = false;
      r.obstruction = *ob;
      r.oriented_fallback = MotiveExpression()
                                .add(r.artin)
                                .add(r.artin_dual_target.shifted(0, -1))
                                .add(oriented_mu);
      r.notes.push_back("quadratic diagonalization obstructed: " + ob->reason);
      return r;
    }
    r.quadratic_snf = std::get<GwSnf>(res);
    r.mu_part = diagonal_atoms(r.quadratic_snf->D.diagonal());
  }

  if (!c.is_tree) {
    r.exact = false;
    r.notes.push_back(
        "graph is not a tree: the link is the fiber of a block map D + sum 1(1)[2] -> D^v(2)[4] + sum 1(1)[2] "
        "whose off-diagonal blocks a, b, b' are not determined");
    return r;
  }
  // Trees: D = 1 and the off-diagonal blocks vanish, so the fiber splits.
  r.motive = MotiveExpression().add(r.artin).add(r.artin_dual_target.shifted(0, -1)).add(r.mu_part);
  return r;
}

// ---------------------------------------------------------------------------
// realizations

Integer realize(const GwElement& a, Realization target) {
  return target == Realization::Rank ? a.plus() : a.minus();
}

IntMatrix realize(const GwMatrix& m, Realization target) {
  return target == Realization::Rank ? project_plus(m) : project_minus(m);
}

MotiveExpression realize(const MotiveExpression& e, Realization target) {
  MotiveExpression out;
  for (const auto& a : e.atoms()) {
    if (a.kind != Atom::Kind::HoFib) {
      out.add(a);
      continue;
    }
    const Integer v = abs(realize(a.d, target));
    for (long k = 0; k < a.mult; ++k) {
      if (v == 1) continue;
      if (v == 0) {
        out.add(Atom::tate(a.q, a.p));
        out.add(Atom::tate(a.q, a.p - 1));
      } else {
        out.add(Atom::cone(v, a.q, a.p - 1));
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Du Val table

DuValRow du_val_table_row(char kind, int n) {
  dynkin(kind, n);  // validates (kind, n)
  DuValRow row;
  row.name = std::string(1, kind) + std::to_string(n);
  const GwElement h = GwElement::h();
  auto m = [](long v) { return GwElement(v); };
  switch (kind) {
    case 'A':
      if (n % 2 == 1)
        row.table_value = m(-(n + 1) / 2) * h;
      else if (n % 4 == 0)
        row.table_value = m(n / 2) * h + m(1);
      else
        row.table_value = m(n / 2 + 1) * h - m(1);
      break;
    case 'D':
      row.firm = false;
      row.table_value = n % 2 == 0 ? -h : m(-2) * h;
      break;
    case 'E':
      row.firm = n != 6;
      if (n == 6) row.table_value = m(2) * h - m(1);
      if (n == 7) row.table_value = -h;
      break;
  }
  if (row.table_value) row.table_value = normalize_unit(*row.table_value);
  return row;
}

DuValComparison compare_du_val(char kind, int n) {
  DuValComparison c;
  c.row = du_val_table_row(kind, n);
  const auto g = dynkin(kind, n);
  const auto oriented = snf_int(oriented_matrix(g));
  c.oriented_invariants = oriented.D.diagonal();

  auto res = diagonalize_zeps(quadratic_matrix(g));
  std::ostringstream rep;
  rep << c.row.name << ": ";
  if (auto* ob = std::get_if<Obstruction>(&res)) {
    rep << "quadratic diagonalization obstructed (" << ob->reason << ")";
    c.report = rep.str();
    return c;
  }
  const auto diag = std::get<GwSnf>(res).D.diagonal();
  IntMatrix realized(diag.size(), diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) {
    realized(i, i) = diag[i].plus();
    if (!is_unit(diag[i])) c.computed.push_back(normalize_unit(diag[i]));
  }
  c.rank_realization = snf_int(realized).D.diagonal();
  c.rank_matches_oriented = c.rank_realization == c.oriented_invariants;

  if (c.row.table_value)
    c.matches_table = c.computed.size() == 1 && associated(c.computed[0], *c.row.table_value);
  else
    c.matches_table = c.computed.empty();

  rep << "table hofib(" << (c.row.table_value ? c.row.table_value->str() : std::string("none")) << "), computed hofib(";
  for (std::size_t i = 0; i < c.computed.size(); ++i) rep << (i ? ", " : "") << c.computed[i];
  rep << "); " << (c.matches_table ? "agrees with the table" : "DIFFERS from the table");
  rep << "; rank realization " << (c.rank_matches_oriented ? "matches" : "does not match") << " the integer Smith form";
  c.report = rep.str();
  return c;
}

}  // namespace mplumb
