#include "bba/datagen/datagen.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <set>
#include <stdexcept>

#include "bba/core/random.hpp"

namespace bba {

Points sample_torus(long n, double r_outer, double r_inner, std::uint64_t seed) {
  if (n < 0) throw std::invalid_argument("sample_torus: negative count");
  if (!(r_inner > 0.0 && r_inner < r_outer)) throw std::invalid_argument("sample_torus: require 0 < r < R");
  Rng rng(seed);
  Points out(3, n);
  const double ratio = r_inner / r_outer;
  for (long i = 0; i < n; ++i) {
    double theta = 0.0;
    for (;;) {
      theta = 2.0 * std::numbers::pi * uniform01(rng);
      const double accept = (1.0 + ratio * std::cos(theta)) / (1.0 + ratio);
      if (uniform01(rng) < accept) break;
    }
    const double phi = 2.0 * std::numbers::pi * uniform01(rng);
    const double ring = r_outer + r_inner * std::cos(theta);
    out(0, i) = ring * std::cos(phi);
    out(1, i) = ring * std::sin(phi);
    out(2, i) = r_inner * std::sin(theta);
  }
  return out;
}

Points sample_sphere(long n, double radius, std::uint64_t seed) {
  if (n < 0) throw std::invalid_argument("sample_sphere: negative count");
  if (!(radius > 0.0)) throw std::invalid_argument("sample_sphere: radius must be positive");
  Rng rng(seed);
  std::normal_distribution<double> normal;
  Points out(3, n);
  for (long i = 0; i < n; ++i) {
    Eigen::Vector3d g;
    do {
      g << normal(rng), normal(rng), normal(rng);
    } while (g.norm() == 0.0);
    out.col(i) = radius * g.normalized();
  }
  return out;
}

Points add_gaussian_noise(const Points& points, double sigma, std::uint64_t seed) {
  if (!(sigma >= 0.0)) throw std::invalid_argument("add_gaussian_noise: sigma must be >= 0");
  if (sigma == 0.0) return points;
  Rng rng(seed);
  std::normal_distribution<double> normal(0.0, sigma);
  Points out = points;
  for (Eigen::Index j = 0; j < out.cols(); ++j)
    for (Eigen::Index i = 0; i < out.rows(); ++i) out(i, j) += normal(rng);
  return out;
}

Points orbit_from(double x0, double y0, double rho, long n) {
  if (n < 1) throw std::invalid_argument("orbit: n must be >= 1");
  auto wrap = [](double v) {
    const double m = std::fmod(v, 1.0);
    return m < 0.0 ? m + 1.0 : m;
  };
  Points out(2, n);
  double x = x0, y = y0;
  for (long i = 0; i < n; ++i) {
    out(0, i) = x;
    out(1, i) = y;
    x = wrap(x + rho * y * (1.0 - y));
    y = wrap(y + rho * x * (1.0 - x));
  }
  return out;
}

Points orbit(const OrbitParams& params) {
  Rng rng(params.seed);
  const double x0 = uniform01(rng);
  const double y0 = uniform01(rng);
  return orbit_from(x0, y0, params.rho, params.n);
}

Points sample_ppp_disk(double mean_count, double radius, std::uint64_t seed) {
  if (!(mean_count >= 0.0)) throw std::invalid_argument("sample_ppp_disk: mean count must be >= 0");
  if (!(radius > 0.0)) throw std::invalid_argument("sample_ppp_disk: radius must be positive");
  Rng rng(seed);
  long count = 0;
  if (mean_count > 0.0) count = std::poisson_distribution<long>(mean_count)(rng);
  Points out(2, count);
  for (long i = 0; i < count; ++i) {
    const double rad = radius * std::sqrt(uniform01(rng));
    const double phi = 2.0 * std::numbers::pi * uniform01(rng);
    out(0, i) = rad * std::cos(phi);
    out(1, i) = rad * std::sin(phi);
  }
  return out;
}

// ---------------------------------------------------------------------------

namespace {

using cd = std::complex<double>;

void hessenberg_reduce(Eigen::MatrixXcd& h) {
  const Eigen::Index n = h.rows();
  for (Eigen::Index k = 0; k + 2 < n; ++k) {
    Eigen::VectorXcd x = h.block(k + 1, k, n - k - 1, 1);
    const double xnorm = x.norm();
    if (xnorm == 0.0) continue;
    const cd x0 = x(0);
    const cd phase = std::abs(x0) == 0.0 ? cd(1.0) : x0 / std::abs(x0);
    Eigen::VectorXcd v = x;
    v(0) += phase * xnorm;
    const double vnorm = v.norm();
    if (vnorm == 0.0) continue;
    v /= vnorm;
    // H <- P H P with P = I - 2 v v^*
    auto rows = h.block(k + 1, 0, n - k - 1, n);
    rows -= 2.0 * v * (v.adjoint() * rows);
    auto cols = h.block(0, k + 1, n, n - k - 1);
    cols -= 2.0 * (cols * v) * v.adjoint();
    for (Eigen::Index i = k + 2; i < n; ++i) h(i, k) = 0.0;
  }
}

struct Givens {
  double c;
  cd s;
};

Givens make_givens(cd a, cd b) {
  const double aa = std::abs(a), bb = std::abs(b);
  if (bb == 0.0) return {1.0, 0.0};
  if (aa == 0.0) return {0.0, 1.0};
  const double r = std::hypot(aa, bb);
  return {aa / r, (a / aa) * std::conj(b) / r};
}

}  // namespace

std::vector<std::complex<double>> eigenvalues_qr(Eigen::MatrixXcd a, int max_iter_per_eigenvalue) {
  if (a.rows() != a.cols()) throw std::invalid_argument("eigenvalues_qr: matrix must be square");
  const Eigen::Index n = a.rows();
  std::vector<cd> eig(static_cast<std::size_t>(n));
  if (n == 0) return eig;
  hessenberg_reduce(a);
  Eigen::MatrixXcd& h = a;
  const double eps = std::numeric_limits<double>::epsilon();
  const double norm = std::max(h.cwiseAbs().maxCoeff(), std::numeric_limits<double>::min());

  Eigen::Index hi = n - 1;
  int iter = 0;
  std::vector<Givens> rot(static_cast<std::size_t>(n));
  while (hi >= 0) {
    if (hi == 0) {
      eig[0] = h(0, 0);
      break;
    }
    Eigen::Index lo = hi;
    while (lo > 0) {
      const double scale = std::abs(h(lo, lo)) + std::abs(h(lo - 1, lo - 1));
      if (std::abs(h(lo, lo - 1)) <= eps * (scale > 0.0 ? scale : norm)) {
        h(lo, lo - 1) = 0.0;
        break;
      }
      --lo;
    }
    if (lo == hi) {
      eig[static_cast<std::size_t>(hi)] = h(hi, hi);
      --hi;
      iter = 0;
      continue;
    }
    if (++iter > max_iter_per_eigenvalue) throw std::runtime_error("eigenvalues_qr: no convergence");

    cd mu;
    if (iter % 11 == 0) {
      mu = h(hi, hi) + std::abs(h(hi, hi - 1));  // exceptional shift
    } else {
      const cd p = h(hi - 1, hi - 1), q = h(hi - 1, hi), r = h(hi, hi - 1), s = h(hi, hi);
      const cd half = 0.5 * (p - s);
      const cd disc = std::sqrt(half * half + q * r);
      const cd m1 = s - q * r / (half + disc), m2 = s - q * r / (half - disc);
      const bool bad1 = !std::isfinite(std::abs(m1)), bad2 = !std::isfinite(std::abs(m2));
      if (bad1 && bad2) mu = s;
      else if (bad1) mu = m2;
      else if (bad2) mu = m1;
      else mu = std::abs(m1 - s) <= std::abs(m2 - s) ? m1 : m2;
    }

    for (Eigen::Index i = lo; i <= hi; ++i) h(i, i) -= mu;
    for (Eigen::Index k = lo; k < hi; ++k) {
      const Givens g = make_givens(h(k, k), h(k + 1, k));
      rot[static_cast<std::size_t>(k)] = g;
      for (Eigen::Index j = k; j <= hi; ++j) {
        const cd x = h(k, j), y = h(k + 1, j);
        h(k, j) = g.c * x + g.s * y;
        h(k + 1, j) = -std::conj(g.s) * x + g.c * y;
      }
    }
    for (Eigen::Index k = lo; k < hi; ++k) {
      const Givens g = rot[static_cast<std::size_t>(k)];
      for (Eigen::Index i = lo; i <= std::min(k + 2, hi); ++i) {
        const cd x = h(i, k), y = h(i, k + 1);
        h(i, k) = g.c * x + std::conj(g.s) * y;
        h(i, k + 1) = -g.s * x + g.c * y;
      }
    }
    for (Eigen::Index i = lo; i <= hi; ++i) h(i, i) += mu;
  }
  return eig;
}

Points sample_ginibre(int n_modes, double radius, std::uint64_t seed) {
  if (n_modes < 0) throw std::invalid_argument("sample_ginibre: negative size");
  if (!(radius > 0.0)) throw std::invalid_argument("sample_ginibre: radius must be positive");
  Rng rng(seed);
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  Eigen::MatrixXcd m(n_modes, n_modes);
  for (int j = 0; j < n_modes; ++j)
    for (int i = 0; i < n_modes; ++i) m(i, j) = cd(normal(rng), normal(rng));

  std::vector<cd> eig;
  try {
    eig = eigenvalues_qr(m);
  } catch (const std::runtime_error&) {
    // One retry on a slightly perturbed matrix.
    Eigen::MatrixXcd p = m;
    const double scale = 1e-12 * std::max(1.0, m.cwiseAbs().maxCoeff());
    for (int j = 0; j < n_modes; ++j)
      for (int i = 0; i < n_modes; ++i) p(i, j) += scale * cd(normal(rng), normal(rng));
    eig = eigenvalues_qr(p, 200);
  }
  std::sort(eig.begin(), eig.end(), [](cd a, cd b) {
    return a.real() < b.real() || (a.real() == b.real() && a.imag() < b.imag());
  });
  Points out(2, n_modes);
  const double scale = n_modes > 0 ? radius / std::sqrt(static_cast<double>(n_modes)) : 0.0;
  for (int i = 0; i < n_modes; ++i) {
    out(0, i) = scale * eig[static_cast<std::size_t>(i)].real();
    out(1, i) = scale * eig[static_cast<std::size_t>(i)].imag();
  }
  return out;
}

// ---------------------------------------------------------------------------

Graph::Graph(int n_, std::vector<std::pair<int, int>> edges_) : n(n_), edges(std::move(edges_)) { validate(); }

void Graph::validate() const {
  if (n < 0) throw std::invalid_argument("graph: negative vertex count");
  std::set<std::pair<int, int>> seen;
  for (auto [u, v] : edges) {
    if (u < 0 || v < 0 || u >= n || v >= n) throw std::invalid_argument("graph: edge endpoint out of range");
    if (u == v) throw std::invalid_argument("graph: self-loop");
    if (!seen.insert({std::min(u, v), std::max(u, v)}).second) throw std::invalid_argument("graph: duplicate edge");
  }
}

Eigen::MatrixXd normalized_laplacian(const Graph& g) {
  g.validate();
  Eigen::VectorXd deg = Eigen::VectorXd::Zero(g.n);
  for (auto [u, v] : g.edges) {
    deg(u) += 1.0;
    deg(v) += 1.0;
  }
  Eigen::MatrixXd l = Eigen::MatrixXd::Zero(g.n, g.n);
  for (int v = 0; v < g.n; ++v) l(v, v) = deg(v) > 0.0 ? 1.0 : 0.0;
  for (auto [u, v] : g.edges) {
    const double w = -1.0 / std::sqrt(deg(u) * deg(v));
    l(u, v) = w;
    l(v, u) = w;
  }
  return l;
}

SymmetricEigen jacobi_eigen(Eigen::MatrixXd a, double tol, int max_sweeps) {
  if (a.rows() != a.cols()) throw std::invalid_argument("jacobi_eigen: matrix must be square");
  const Eigen::Index n = a.rows();
  Eigen::MatrixXd v = Eigen::MatrixXd::Identity(n, n);
  const double total = a.norm();
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    double off = 0.0;
    for (Eigen::Index p = 0; p < n; ++p)
      for (Eigen::Index q = p + 1; q < n; ++q) off += a(p, q) * a(p, q);
    if (std::sqrt(off) <= tol * total) break;
    for (Eigen::Index p = 0; p < n; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        if (a(p, q) == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * a(p, q));
        const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (Eigen::Index k = 0; k < n; ++k) {
          const double akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const double apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const double vkp = v(k, p), vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }
  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index i, Eigen::Index j) { return a(i, i) < a(j, j); });
  SymmetricEigen out{Eigen::VectorXd(n), Eigen::MatrixXd(n, n)};
  for (Eigen::Index i = 0; i < n; ++i) {
    out.values(i) = a(order[static_cast<std::size_t>(i)], order[static_cast<std::size_t>(i)]);
    out.vectors.col(i) = v.col(order[static_cast<std::size_t>(i)]);
  }
  return out;
}

Eigen::VectorXd graph_hks(const Graph& g, double t) {
  if (g.n == 0) throw std::invalid_argument("graph_hks: empty graph");
  const SymmetricEigen e = jacobi_eigen(normalized_laplacian(g));
  Eigen::VectorXd hks = Eigen::VectorXd::Zero(g.n);
  for (Eigen::Index k = 0; k < e.values.size(); ++k)
    hks += std::exp(-t * e.values(k)) * e.vectors.col(k).cwiseAbs2();
  return hks;
}

std::pair<PersistenceDiagram, PersistenceDiagram> graph_sublevel_diagrams(const Graph& g,
                                                                          const Eigen::VectorXd& values) {
  g.validate();
  if (values.size() != g.n) throw std::invalid_argument("graph_sublevel_diagrams: one value per vertex required");
  for (Eigen::Index i = 0; i < values.size(); ++i)
    if (!std::isfinite(values(i))) throw std::invalid_argument("graph_sublevel_diagrams: non-finite vertex value");

  // Vertex order (value, id) decides seniority.
  std::vector<int> rank(static_cast<std::size_t>(g.n));
  {
    std::vector<int> order(static_cast<std::size_t>(g.n));
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
      return values(a) < values(b) || (values(a) == values(b) && a < b);
    });
    for (int i = 0; i < g.n; ++i) rank[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])] = i;
  }
  std::vector<std::size_t> edge_order(g.edges.size());
  std::iota(edge_order.begin(), edge_order.end(), 0);
  auto edge_value = [&](std::size_t e) { return std::max(values(g.edges[e].first), values(g.edges[e].second)); };
  std::stable_sort(edge_order.begin(), edge_order.end(),
                   [&](std::size_t a, std::size_t b) { return edge_value(a) < edge_value(b); });

  std::vector<int> parent(static_cast<std::size_t>(g.n));
  std::iota(parent.begin(), parent.end(), 0);
  std::vector<int> oldest(parent);  // per root: most senior vertex of the component
  auto find = [&](int x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      x = parent[static_cast<std::size_t>(x)];
    }
    return x;
  };

  PersistenceDiagram d0, d1;
  d0.dim = 0;
  d1.dim = 1;
  for (std::size_t e : edge_order) {
    const double val = edge_value(e);
    int a = find(g.edges[e].first), b = find(g.edges[e].second);
    if (a == b) {
      d1.pairs.push_back({val, kInfinity, -1, -1});
      continue;
    }
    int oa = oldest[static_cast<std::size_t>(a)], ob = oldest[static_cast<std::size_t>(b)];
    if (rank[static_cast<std::size_t>(oa)] > rank[static_cast<std::size_t>(ob)]) {
      std::swap(a, b);
      std::swap(oa, ob);
    }
    d0.pairs.push_back({values(ob), val, -1, -1});
    parent[static_cast<std::size_t>(b)] = a;
  }
  std::vector<std::pair<int, int>> essential;
  for (int v = 0; v < g.n; ++v)
    if (find(v) == v) essential.push_back({rank[static_cast<std::size_t>(oldest[static_cast<std::size_t>(v)])],
                                           oldest[static_cast<std::size_t>(v)]});
  std::sort(essential.begin(), essential.end());
  for (auto [r, v] : essential) d0.pairs.push_back({values(v), kInfinity, -1, -1});
  return {d0, d1};
}

Graph erdos_renyi(int n, double p, std::uint64_t seed) {
  if (n < 0 || !(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("erdos_renyi: invalid parameters");
  Rng rng(seed);
  std::vector<std::pair<int, int>> edges;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (uniform01(rng) < p) edges.push_back({u, v});
  return Graph(n, std::move(edges));
}

Graph watts_strogatz(int n, int k, double beta, std::uint64_t seed) {
  if (n < 3 || k < 1 || 2 * k >= n || !(beta >= 0.0 && beta <= 1.0))
    throw std::invalid_argument("watts_strogatz: invalid parameters");
  Rng rng(seed);
  std::set<std::pair<int, int>> present;
  auto key = [](int u, int v) { return std::make_pair(std::min(u, v), std::max(u, v)); };
  std::vector<std::pair<int, int>> ring;
  for (int u = 0; u < n; ++u)
    for (int j = 1; j <= k; ++j) {
      ring.push_back(key(u, (u + j) % n));
      present.insert(ring.back());
    }
  std::vector<std::pair<int, int>> edges;
  for (auto e : ring) {
    if (uniform01(rng) < beta) {
      const int u = e.first;
      for (int attempt = 0; attempt < 4 * n; ++attempt) {
        const int w = static_cast<int>(uniform_index(rng, static_cast<std::size_t>(n)));
        if (w == u || present.count(key(u, w))) continue;
        present.erase(e);
        e = key(u, w);
        present.insert(e);
        break;
      }
    }
    edges.push_back(e);
  }
  return Graph(n, std::move(edges));
}

}  // namespace bba
