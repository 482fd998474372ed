#include "bba/topology/persistence.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <queue>
#include <stdexcept>

namespace bba {

namespace {

void add_columns(std::vector<int>& target, const std::vector<int>& source, std::vector<int>& scratch) {
  scratch.clear();
  std::set_symmetric_difference(target.begin(), target.end(), source.begin(), source.end(),
                                std::back_inserter(scratch));
  target.swap(scratch);
}

// Dense GF(2) rank by row echelon elimination over packed 64-bit words.
int gf2_rank(std::vector<std::vector<std::uint64_t>> rows, std::size_t cols) {
  int rank = 0;
  const std::size_t words = (cols + 63) / 64;
  std::size_t r0 = 0;
  for (std::size_t c = 0; c < cols && r0 < rows.size(); ++c) {
    const std::size_t w = c / 64;
    const std::uint64_t bit = std::uint64_t{1} << (c % 64);
    std::size_t piv = r0;
    while (piv < rows.size() && !(rows[piv][w] & bit)) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[piv], rows[r0]);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r != r0 && (rows[r][w] & bit))
        for (std::size_t k = 0; k < words; ++k) rows[r][k] ^= rows[r0][k];
    }
    ++r0;
    ++rank;
  }
  return rank;
}

}  // namespace

std::vector<PersistenceDiagram> persistence(const FilteredComplex& complex, const PersistenceOptions& opts) {
  const auto& simplices = complex.simplices();
  const std::size_t m = simplices.size();
  const int top = complex.max_dim();
  const int emitted = std::max(1, top);
  std::vector<PersistenceDiagram> out(static_cast<std::size_t>(emitted));
  for (int k = 0; k < emitted; ++k) out[static_cast<std::size_t>(k)].dim = k;
  if (m == 0) return out;

  std::vector<std::vector<int>> columns(m);
  std::vector<int> pivot_owner(m, -1);  // row -> column whose reduced pivot it is
  std::vector<char> cleared(m, 0);
  std::vector<int> scratch;

  for (int q = top; q >= 1; --q) {
    for (std::size_t j = 0; j < m; ++j) {
      if (simplices[j].dim != q || cleared[j]) continue;
      std::vector<int> col = complex.boundary(j);
      while (!col.empty()) {
        const int owner = pivot_owner[static_cast<std::size_t>(col.back())];
        if (owner < 0) break;
        add_columns(col, columns[static_cast<std::size_t>(owner)], scratch);
      }
      if (!col.empty()) {
        const int piv = col.back();
        pivot_owner[static_cast<std::size_t>(piv)] = static_cast<int>(j);
        if (opts.clearing) cleared[static_cast<std::size_t>(piv)] = 1;
        columns[j] = std::move(col);
      }
    }
  }

  for (std::size_t i = 0; i < m; ++i) {
    const int k = simplices[i].dim;
    if (k >= emitted) continue;
    if (!columns[i].empty()) continue;  // negative simplex
    const int killer = pivot_owner[i];
    PersistencePair p;
    p.birth = simplices[i].value;
    p.birth_simplex = static_cast<int>(i);
    if (killer >= 0) {
      p.death = simplices[static_cast<std::size_t>(killer)].value;
      p.death_simplex = killer;
      if (p.death == p.birth && !opts.include_zero_length) continue;
    }
    out[static_cast<std::size_t>(k)].pairs.push_back(p);
  }
  return out;
}

int betti_oracle(const FilteredComplex& complex, double r, int k, bool strict) {
  if (k < 0) throw std::invalid_argument("betti_oracle: negative dimension");
  const auto& s = complex.simplices();
  auto included = [&](std::size_t i) { return strict ? s[i].value < r : s[i].value <= r; };

  std::vector<long> row_index(s.size(), -1);
  auto boundary_rank = [&](int q) -> int {
    // rank of the boundary map C_q -> C_{q-1} restricted to the subcomplex
    if (q <= 0) return 0;
    std::size_t nrows = 0;
    for (std::size_t i = 0; i < s.size(); ++i)
      row_index[i] = (s[i].dim == q - 1 && included(i)) ? static_cast<long>(nrows++) : -1;
    std::vector<std::vector<std::uint64_t>> rows;
    const std::size_t words = (nrows + 63) / 64;
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (s[i].dim != q || !included(i)) continue;
      std::vector<std::uint64_t> col(words, 0);
      for (int f : complex.boundary(i)) {
        const long ri = row_index[static_cast<std::size_t>(f)];
        if (ri < 0) throw std::logic_error("betti_oracle: face outside subcomplex");
        col[static_cast<std::size_t>(ri) / 64] |= std::uint64_t{1} << (static_cast<std::size_t>(ri) % 64);
      }
      rows.push_back(std::move(col));  // transpose: rank is the same
    }
    return gf2_rank(std::move(rows), nrows);
  };

  long nk = 0;
  for (std::size_t i = 0; i < s.size(); ++i)
    if (s[i].dim == k && included(i)) ++nk;
  return static_cast<int>(nk - boundary_rank(k) - boundary_rank(k + 1));
}

int persistent_betti(const PersistenceDiagram& dgm, double r) {
  int count = 0;
  for (const auto& p : dgm.pairs)
    if (p.birth <= r && r < p.death) ++count;
  return count;
}

Measured rotate_diagram(const PersistenceDiagram& dgm, std::optional<double> truncation) {
  DiagramMeasureOptions opts;
  opts.truncation = truncation;
  opts.rotate = true;
  return diagram_to_measure(dgm, opts);
}

Measured diagram_to_measure(const PersistenceDiagram& dgm, const std::function<double(double, double)>& weight,
                            std::optional<double> truncation, bool rotate) {
  Points pts(2, static_cast<Eigen::Index>(dgm.size()));
  Eigen::VectorXd w(static_cast<Eigen::Index>(dgm.size()));
  for (std::size_t i = 0; i < dgm.size(); ++i) {
    const auto& p = dgm.pairs[i];
    double death = p.death;
    if (std::isinf(death)) {
      if (!truncation) throw std::invalid_argument("diagram_to_measure: essential pair needs a truncation value");
      death = *truncation;
    }
    const auto c = static_cast<Eigen::Index>(i);
    pts(0, c) = p.birth;
    pts(1, c) = rotate ? death - p.birth : death;
    w(c) = weight(p.birth, death);
  }
  return Measured(std::move(pts), std::move(w));
}

Measured diagram_to_measure(const PersistenceDiagram& dgm, const DiagramMeasureOptions& opts) {
  std::function<double(double, double)> weight;
  switch (opts.weight) {
    case DiagramWeight::constant:
      weight = [](double, double) { return 1.0; };
      break;
    case DiagramWeight::persistence:
      weight = [](double b, double d) { return d - b; };
      break;
    case DiagramWeight::persistence_power:
      weight = [p = opts.power](double b, double d) { return std::pow(d - b, p); };
      break;
  }
  return diagram_to_measure(dgm, weight, opts.truncation, opts.rotate);
}

// ---------------------------------------------------------------------------

namespace {

double linf(const PersistencePair& a, const PersistencePair& b) {
  return std::max(std::abs(a.birth - b.birth), std::abs(a.death - b.death));
}

double to_diagonal(const PersistencePair& a) { return (a.death - a.birth) / 2.0; }

// Hopcroft-Karp over an implicit bipartite graph (left/right of equal size).
template <typename Edge>
bool has_perfect_matching(std::size_t n, Edge&& edge) {
  constexpr int kFree = -1;
  std::vector<int> match_l(n, kFree), match_r(n, kFree), dist(n);
  auto bfs = [&]() {
    std::queue<int> q;
    bool found = false;
    for (std::size_t u = 0; u < n; ++u) {
      if (match_l[u] == kFree) {
        dist[u] = 0;
        q.push(static_cast<int>(u));
      } else {
        dist[u] = -1;
      }
    }
    while (!q.empty()) {
      const int u = q.front();
      q.pop();
      for (std::size_t v = 0; v < n; ++v) {
        if (!edge(static_cast<std::size_t>(u), v)) continue;
        const int w = match_r[v];
        if (w == kFree) {
          found = true;
        } else if (dist[static_cast<std::size_t>(w)] < 0) {
          dist[static_cast<std::size_t>(w)] = dist[static_cast<std::size_t>(u)] + 1;
          q.push(w);
        }
      }
    }
    return found;
  };
  std::function<bool(int)> dfs = [&](int u) -> bool {
    for (std::size_t v = 0; v < n; ++v) {
      if (!edge(static_cast<std::size_t>(u), v)) continue;
      const int w = match_r[v];
      if (w == kFree || (dist[static_cast<std::size_t>(w)] == dist[static_cast<std::size_t>(u)] + 1 && dfs(w))) {
        match_l[static_cast<std::size_t>(u)] = static_cast<int>(v);
        match_r[v] = u;
        return true;
      }
    }
    dist[static_cast<std::size_t>(u)] = -1;
    return false;
  };
  std::size_t matched = 0;
  while (bfs()) {
    for (std::size_t u = 0; u < n; ++u)
      if (match_l[u] == kFree && dfs(static_cast<int>(u))) ++matched;
  }
  return matched == n;
}

}  // namespace

double bottleneck(const PersistenceDiagram& a, const PersistenceDiagram& b) {
  std::vector<PersistencePair> fa, fb;
  std::vector<double> ea, eb;
  for (const auto& p : a.pairs) (p.essential() ? ea.push_back(p.birth) : fa.push_back(p));
  for (const auto& p : b.pairs) (p.essential() ? eb.push_back(p.birth) : fb.push_back(p));
  if (ea.size() != eb.size()) return kInfinity;
  std::sort(ea.begin(), ea.end());
  std::sort(eb.begin(), eb.end());
  double essential = 0.0;
  for (std::size_t i = 0; i < ea.size(); ++i) essential = std::max(essential, std::abs(ea[i] - eb[i]));

  const std::size_t na = fa.size(), nb = fb.size();
  if (na + nb == 0) return essential;

  std::vector<double> candidates{0.0};
  for (const auto& p : fa) candidates.push_back(to_diagonal(p));
  for (const auto& q : fb) candidates.push_back(to_diagonal(q));
  for (const auto& p : fa)
    for (const auto& q : fb) candidates.push_back(linf(p, q));
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

  // Left: fa then diagonal copies of fb. Right: fb then diagonal copies of fa.
  const std::size_t n = na + nb;
  auto feasible = [&](double eps) {
    return has_perfect_matching(n, [&](std::size_t u, std::size_t v) {
      const bool u_real = u < na;
      const bool v_real = v < nb;
      if (u_real && v_real) return linf(fa[u], fb[v]) <= eps;
      if (u_real) return v - nb == u && to_diagonal(fa[u]) <= eps;
      if (v_real) return u - na == v && to_diagonal(fb[v]) <= eps;
      return true;
    });
  };
  std::size_t lo = 0, hi = candidates.size() - 1;  // candidates[hi] is always feasible
  while (lo < hi) {
    const std::size_t mid = (lo + hi) / 2;
    if (feasible(candidates[mid])) hi = mid;
    else lo = mid + 1;
  }
  return std::max(essential, candidates[lo]);
}

}  // namespace bba
