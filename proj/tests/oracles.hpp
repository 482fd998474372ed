#pragma once

#include <cmath>
#include <functional>
#include <vector>

#include "bba/core/random.hpp"
#include "bba/topology/persistence.hpp"

namespace bba::test {

// Every partial injection from a into b; unmatched points go to the diagonal.
inline double bottleneck_brute_force(const PersistenceDiagram& a, const PersistenceDiagram& b) {
  const std::size_t na = a.size(), nb = b.size();
  auto diag = [](const PersistencePair& p) { return 0.5 * (p.death - p.birth); };
  double best = INFINITY;
  std::vector<char> used(nb, 0);
  std::function<void(std::size_t, double)> rec = [&](std::size_t i, double cost) {
    if (cost >= best) return;
    if (i == na) {
      double c = cost;
      for (std::size_t j = 0; j < nb; ++j)
        if (!used[j]) c = std::max(c, diag(b.pairs[j]));
      best = std::min(best, c);
      return;
    }
    rec(i + 1, std::max(cost, diag(a.pairs[i])));
    for (std::size_t j = 0; j < nb; ++j) {
      if (used[j]) continue;
      used[j] = 1;
      const double c = std::max(std::abs(a.pairs[i].birth - b.pairs[j].birth),
                                std::abs(a.pairs[i].death - b.pairs[j].death));
      rec(i + 1, std::max(cost, c));
      used[j] = 0;
    }
  };
  rec(0, 0.0);
  return best;
}

inline PersistenceDiagram random_diagram(Rng& rng, std::size_t max_points) {
  PersistenceDiagram d;
  d.dim = 1;
  const std::size_t n = uniform_index(rng, max_points + 1);
  for (std::size_t i = 0; i < n; ++i) {
    const double b = uniform01(rng);
    d.pairs.push_back(PersistencePair{b, b + uniform01(rng)});
  }
  return d;
}

}  // namespace bba::test
