#include "mplumb/arrangements.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "mplumb/error.hpp"

namespace mplumb {

void Arrangement::validate() const {
  std::set<std::vector<Integer>> seen;
  for (std::size_t i = 0; i < hyperplanes.size(); ++i) {
    const auto& h = hyperplanes[i];
    if (h.normal.size() != dimension)
      throw Error(ErrorKind::ValidationError, "hyperplane " + std::to_string(i + 1) + " has the wrong dimension");
    if (std::all_of(h.normal.begin(), h.normal.end(), [](const Integer& a) { return a == 0; }))
      throw Error(ErrorKind::ValidationError, "hyperplane " + std::to_string(i + 1) + " has a zero normal");
    // primitive representative with positive leading coefficient
    std::vector<Integer> key = h.normal;
    key.push_back(h.offset);
    Integer g = 0;
    for (const auto& v : key) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
    const auto lead = std::find_if(key.begin(), key.end(), [](const Integer& a) { return a != 0; });
    if (*lead < 0) g = -g;
    for (auto& v : key) v /= g;
    if (!seen.insert(key).second)
      throw Error(ErrorKind::ValidationError, "hyperplane " + std::to_string(i + 1) + " repeats an earlier one");
  }
}

Arrangement parse_arrangement(const std::string& text) {
  Arrangement arr;
  bool have_dim = false;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string tok;
    std::vector<std::string> toks;
    while (ls >> tok) toks.push_back(tok);
    if (toks.empty()) continue;
    if (toks[0] == "dim") {
      if (toks.size() != 2 || have_dim) throw ParseError(lineno, 1, "expected a single 'dim <d>' line");
      try {
        long d = std::stol(toks[1]);
        if (d < 1) throw std::invalid_argument("dim");
        arr.dimension = static_cast<std::size_t>(d);
      } catch (const std::logic_error&) {
        throw ParseError(lineno, 1, "bad dimension '" + toks[1] + "'");
      }
      have_dim = true;
      continue;
    }
    Hyperplane h;
    bool bar = false, have_offset = false;
    for (const auto& t : toks) {
      if (t == "|") {
        if (bar) throw ParseError(lineno, line.find('|') + 1, "second '|'");
        bar = true;
        continue;
      }
      Integer v;
      if (v.set_str(t[0] == '+' ? t.substr(1) : t, 10) != 0)
        throw ParseError(lineno, line.find(t) + 1, "expected an integer, got '" + t + "'");
      if (!bar) {
        h.normal.push_back(v);
      } else {
        if (have_offset) throw ParseError(lineno, line.find(t) + 1, "more than one offset after '|'");
        h.offset = v;
        have_offset = true;
      }
    }
    if (!bar || !have_offset) throw ParseError(lineno, 1, "expected 'a1 ... ad | b'");
    if (!have_dim) {
      arr.dimension = h.normal.size();
      have_dim = true;
    }
    if (h.normal.size() != arr.dimension)
      throw ParseError(lineno, 1,
                       "expected " + std::to_string(arr.dimension) + " coefficients, got " +
                           std::to_string(h.normal.size()));
    arr.hyperplanes.push_back(std::move(h));
  }
  if (!have_dim) throw ParseError(lineno, 1, "empty arrangement needs a 'dim <d>' line");
  arr.validate();
  return arr;
}

// ---------------------------------------------------------------------------

namespace {

using Row = std::vector<Rational>;

// Reduced echelon rows of the augmented system, each with its pivot column.
struct Echelon {
  std::vector<Row> rows;
  std::vector<std::size_t> pivots;
};

enum class Step { Independent, Dependent, Inconsistent };

Step extend(Echelon& e, Row r, std::size_t d) {
  for (std::size_t k = 0; k < e.rows.size(); ++k) {
    const Rational f = r[e.pivots[k]];
    if (f == 0) continue;
    for (std::size_t c = 0; c <= d; ++c) r[c] -= f * e.rows[k][c];
  }
  std::size_t piv = 0;
  while (piv < d && r[piv] == 0) ++piv;
  if (piv == d) return r[d] == 0 ? Step::Dependent : Step::Inconsistent;
  const Rational lead = r[piv];
  for (auto& v : r) v /= lead;
  for (auto& row : e.rows) {
    const Rational f = row[piv];
    if (f == 0) continue;
    for (std::size_t c = 0; c <= d; ++c) row[c] -= f * r[c];
  }
  e.rows.push_back(std::move(r));
  e.pivots.push_back(piv);
  return Step::Independent;
}

}  // namespace

const Flat* FlatData::find(const std::vector<std::size_t>& J) const {
  for (const auto& f : flats)
    if (f.J == J) return &f;
  return nullptr;
}

FlatData flats(const Arrangement& arr, std::size_t bound) {
  arr.validate();
  const std::size_t m = arr.hyperplanes.size();
  if (m > bound)
    throw Error(ErrorKind::TooManyHyperplanes,
                std::to_string(m) + " hyperplanes exceed the enumeration bound " + std::to_string(bound));
  const std::size_t d = arr.dimension;
  std::vector<Row> rows;
  for (const auto& h : arr.hyperplanes) {
    Row r(h.normal.begin(), h.normal.end());
    r.push_back(Rational(h.offset));
    rows.push_back(std::move(r));
  }

  FlatData out;
  std::vector<std::size_t> J;
  // One-step supersets are enough: if J < K with equal codim the flats agree,
  // so every intermediate J + {i} has the same codim too.
  auto dfs = [&](auto&& self, const Echelon& e, std::size_t start) -> void {
    out.flats.push_back({J, true, static_cast<long>(e.rows.size())});
    if (static_cast<long>(e.rows.size()) != static_cast<long>(J.size())) out.normal_crossing = false;
    for (std::size_t i = 0; i < m; ++i) {
      if (std::find(J.begin(), J.end(), i) != J.end()) continue;
      Echelon next = e;
      const Step s = extend(next, rows[i], d);
      if (s == Step::Inconsistent) continue;
      if (s == Step::Dependent) {
        auto K = J;
        K.insert(std::upper_bound(K.begin(), K.end(), i), i);
        out.dense_violations.push_back({J, K});
      }
      if (i < start) continue;
      J.push_back(i);
      self(self, next, i + 1);
      J.pop_back();
    }
  };
  dfs(dfs, Echelon{}, 0);
  return out;
}

std::map<long, long> multiplicities(const Arrangement& arr, std::size_t bound) {
  std::map<long, long> m;
  for (const auto& f : flats(arr, bound).flats) ++m[f.codim];
  return m;
}

namespace {

std::string show(const std::vector<std::size_t>& J) {
  std::string s = "{";
  for (std::size_t i = 0; i < J.size(); ++i) s += (i ? "," : "") + std::to_string(J[i] + 1);
  return s + "}";
}

FlatData checked_flats(const Arrangement& arr, std::size_t bound, bool need_normal_crossing) {
  auto fd = flats(arr, bound);
  // checked first: failing normal crossing always comes with a density
  // violation too, and the infinity/dual formulas need the former
  if (need_normal_crossing && !fd.normal_crossing)
    throw Error(ErrorKind::NotNormalCrossing, "some consistent J has codimension different from |J|");
  if (!fd.dense_violations.empty()) {
    const auto& [J, K] = fd.dense_violations.front();
    throw Error(ErrorKind::NotNowhereDense,
                "Z_K is not nowhere dense in Z_J for J = " + show(J) + ", K = " + show(K));
  }
  return fd;
}

}  // namespace

MotiveExpression complement_decomposition(const Arrangement& arr, std::size_t bound) {
  const auto fd = checked_flats(arr, bound, false);
  MotiveExpression e;
  for (const auto& f : fd.flats) {
    const long n = static_cast<long>(f.J.size());
    e.add(Atom::tate(f.codim, 2 * f.codim - n));
  }
  return e;
}

MotiveExpression infinity_decomposition(const Arrangement& arr, std::size_t bound) {
  const auto fd = checked_flats(arr, bound, true);
  const long d = static_cast<long>(arr.dimension);
  std::map<long, long> m;
  for (const auto& f : fd.flats) ++m[f.codim];
  MotiveExpression e;
  for (const auto& [n, count] : m) {
    e.add(Atom::tate(n, n, count));
    e.add(Atom::tate(d - n, 2 * d - n - 1, count));
  }
  return e;
}

MotiveExpression dual_decomposition(const Arrangement& arr, std::size_t bound) {
  const auto fd = checked_flats(arr, bound, true);
  MotiveExpression e;
  for (const auto& f : fd.flats) e.add(Atom::tate(-f.codim, -2 * f.codim + static_cast<long>(f.J.size())));
  return e;
}

Arrangement coordinate_arrangement(std::size_t e, std::size_t d) {
  if (e > d) throw Error(ErrorKind::InvalidParameter, "more coordinate hyperplanes than coordinates");
  Arrangement arr;
  arr.dimension = d;
  for (std::size_t i = 0; i < e; ++i) {
    Hyperplane h;
    h.normal.assign(d, 0);
    h.normal[i] = 1;
    h.offset = 0;
    arr.hyperplanes.push_back(std::move(h));
  }
  return arr;
}

}  // namespace mplumb
