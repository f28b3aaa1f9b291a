#include "mplumb/atinfinity.hpp"

#include <algorithm>

#include "mplumb/error.hpp"
#include "mplumb/smithlift.hpp"

namespace mplumb {

void ChainComplexZ::validate() const {
  if (!ranks.empty() && differentials.size() + 1 != ranks.size())
    throw std::invalid_argument("chain complex needs one differential per adjacent pair of degrees");
  for (std::size_t n = 0; n < differentials.size(); ++n)
    if (differentials[n].rows() != ranks[n] || differentials[n].cols() != ranks[n + 1])
      throw std::invalid_argument("differential " + std::to_string(n) + " has the wrong shape");
}

bool ChainComplexZ::squares_to_zero() const {
  for (std::size_t n = 0; n + 1 < differentials.size(); ++n)
    if (!(differentials[n] * differentials[n + 1]).is_zero()) return false;
  return true;
}

std::vector<HomologyGroup> ChainComplexZ::homology() const {
  validate();
  std::vector<HomologyGroup> out(ranks.size());
  for (std::size_t n = 0; n < ranks.size(); ++n) {
    std::size_t kernel = ranks[n];
    if (n > 0) kernel -= rank(differentials[n - 1]);
    std::size_t image = 0;
    if (n < differentials.size()) {
      const auto kc = kernel_cokernel(differentials[n]);
      image = ranks[n + 1] - kc.kernel_rank;
      out[n].torsion = kc.torsion;
    }
    out[n].free_rank = kernel - image;
  }
  return out;
}

long ChainComplexZ::euler_characteristic() const {
  long chi = 0;
  for (std::size_t n = 0; n < ranks.size(); ++n) chi += (n % 2 == 0 ? 1 : -1) * static_cast<long>(ranks[n]);
  return chi;
}

// ---------------------------------------------------------------------------

namespace {

std::vector<std::size_t> omit(const std::vector<std::size_t>& J, std::size_t k) {
  std::vector<std::size_t> f;
  for (std::size_t i = 0; i < J.size(); ++i)
    if (i != k) f.push_back(J[i]);
  return f;
}

std::string show(const std::vector<std::size_t>& J) {
  std::string s = "{";
  for (std::size_t i = 0; i < J.size(); ++i) s += (i ? "," : "") + std::to_string(J[i]);
  return s + "}";
}

}  // namespace

long Cover::count(const std::vector<std::size_t>& J) const {
  auto it = components.find(J);
  return it == components.end() ? 0 : it->second;
}

void Cover::validate() const {
  for (const auto& [J, c] : components) {
    if (J.empty()) throw Error(ErrorKind::InconsistentIncidence, "the empty index set is implicit");
    if (!std::is_sorted(J.begin(), J.end()) || std::adjacent_find(J.begin(), J.end()) != J.end())
      throw Error(ErrorKind::InconsistentIncidence, "index set " + show(J) + " is not strictly increasing");
    if (J.back() >= size) throw Error(ErrorKind::InconsistentIncidence, "index out of range in " + show(J));
    if (c < 0) throw Error(ErrorKind::InconsistentIncidence, "negative component count for " + show(J));
    if (c == 0 || J.size() == 1) continue;
    auto it = faces.find(J);
    if (it != faces.end() && it->second.size() != J.size())
      throw Error(ErrorKind::InconsistentIncidence, "face map of " + show(J) + " has the wrong number of faces");
    for (std::size_t k = 0; k < J.size(); ++k) {
      const auto F = omit(J, k);
      const long fc = count(F);
      if (fc == 0)
        throw Error(ErrorKind::InconsistentIncidence, show(J) + " is nonempty but its face " + show(F) + " is empty");
      if (it == faces.end()) {
        if (fc == 1) continue;
        throw Error(ErrorKind::InconsistentIncidence, "missing face map " + show(J) + " -> " + show(F));
      }
      if (it->second[k].size() != static_cast<std::size_t>(c))
        throw Error(ErrorKind::InconsistentIncidence, "face map " + show(J) + " -> " + show(F) + " has the wrong length");
      for (auto v : it->second[k])
        if (static_cast<long>(v) >= fc) throw Error(ErrorKind::InconsistentIncidence, "face map out of range");
    }
  }
  for (const auto& [J, m] : faces)
    if (count(J) == 0) throw Error(ErrorKind::InconsistentIncidence, "face map given for empty " + show(J));
}

std::size_t Cover::face_component(const std::vector<std::size_t>& J, std::size_t k, std::size_t c) const {
  if (count(omit(J, k)) == 1) return 0;
  return faces.at(J)[k][c];
}

Cover cover_of(const PlumbingGraph& g) {
  Cover cv;
  cv.size = g.size();
  for (std::size_t i = 0; i < g.size(); ++i) cv.components[{i}] = 1;
  for (const auto& e : g.edges) {
    auto i = g.index_of(e.a), j = g.index_of(e.b);
    if (i > j) std::swap(i, j);
    cv.components[{i, j}] += static_cast<long>(e.points.size());
  }
  return cv;
}

ChainComplexZ ordered_cech(const Cover& cover) {
  cover.validate();
  // basis of each degree: (J, component), J in lexicographic order
  std::vector<std::vector<std::pair<std::vector<std::size_t>, std::size_t>>> basis;
  for (const auto& [J, c] : cover.components) {
    if (c == 0) continue;
    if (basis.size() < J.size()) basis.resize(J.size());
    for (long k = 0; k < c; ++k) basis[J.size() - 1].push_back({J, static_cast<std::size_t>(k)});
  }
  ChainComplexZ cx;
  for (const auto& b : basis) cx.ranks.push_back(b.size());
  for (std::size_t n = 0; n + 1 < basis.size(); ++n) {
    IntMatrix d(basis[n].size(), basis[n + 1].size());
    for (std::size_t col = 0; col < basis[n + 1].size(); ++col) {
      const auto& [J, c] = basis[n + 1][col];
      for (std::size_t k = 0; k < J.size(); ++k) {
        const std::pair<std::vector<std::size_t>, std::size_t> target{omit(J, k), cover.face_component(J, k, c)};
        const auto row = std::find(basis[n].begin(), basis[n].end(), target) - basis[n].begin();
        d(row, col) += (k % 2 == 0) ? 1 : -1;
      }
    }
    cx.differentials.push_back(std::move(d));
  }
  return cx;
}

std::vector<RzTerm> rz_complex(const Cover& cover) {
  const auto cx = ordered_cech(cover);
  std::vector<RzTerm> terms;
  for (std::size_t n = cx.ranks.size(); n-- > 0;) {
    RzTerm t;
    t.degree = static_cast<long>(n) + 1;
    t.twist = t.degree;
    t.shift = 2 * t.degree;
    t.rank = cx.ranks[n];
    if (n > 0) {
      t.differential = cx.differentials[n - 1];
    } else {
      t.differential = IntMatrix(1, t.rank);
      for (std::size_t j = 0; j < t.rank; ++j) t.differential(0, j) = 1;
    }
    terms.push_back(std::move(t));
  }
  RzTerm base;
  base.rank = 1;
  terms.push_back(std::move(base));
  return terms;
}

// ---------------------------------------------------------------------------

HomologyAtInfinity homology_at_infinity(const PlumbingGraph& g, Mode mode, bool rational,
                                        const ClassifyOptions& options) {
  for (const auto& e : g.edges)
    for (const auto& p : e.points)
      if (p.degree != 1)
        throw Error(ErrorKind::NonRationalPoint, "homology at infinity needs rational intersection points");
  const IntMatrix mu =
      mode == Mode::Oriented ? oriented_matrix(g) : realize(quadratic_matrix(g, options), Realization::Rank);
  const IntMatrix q = incidence_matrix(g);
  const auto q_kc = kernel_cokernel(q);
  const auto qt_kc = kernel_cokernel(q.transpose());
  const auto mu_kc = kernel_cokernel(mu);

  HomologyAtInfinity out;
  auto put = [&](int i, long twist, std::size_t free_rank, std::vector<Integer> torsion) {
    if (rational) torsion.clear();
    HomologyGroup grp{free_rank, std::move(torsion)};
    if (!grp.is_zero()) out.hm[i].push_back({twist, std::move(grp)});
  };
  put(0, 0, q_kc.cokernel_free_rank, q_kc.torsion);
  put(1, 0, q_kc.kernel_rank, {});
  put(1, 1, mu_kc.cokernel_free_rank, mu_kc.torsion);
  put(2, 1, mu_kc.kernel_rank, {});
  put(2, 2, qt_kc.cokernel_free_rank, qt_kc.torsion);
  put(3, 2, qt_kc.kernel_rank, {});
  for (int i = 0; i < 4; ++i) out.extension_unresolved[i] = out.hm[i].size() > 1;
  return out;
}

}  // namespace mplumb
