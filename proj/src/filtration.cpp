#include "bba/topology/filtration.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "bba/core/random.hpp"

namespace bba {

namespace {

std::uint64_t pack(const std::array<int, 4>& v) {
  std::uint64_t key = 0;
  for (int i = 0; i < 4; ++i) key = (key << 16) | static_cast<std::uint64_t>(v[static_cast<std::size_t>(i)] + 1);
  return key;
}

struct Ball {
  Point center;
  double radius_sq = -1.0;  // negative: empty ball
};

bool inside(const Ball& b, const Eigen::Ref<const Point>& p) {
  if (b.radius_sq < 0.0) return false;
  const double d2 = (p - b.center).squaredNorm();
  return d2 <= b.radius_sq * (1.0 + 1e-12) + 1e-300;
}

// Smallest ball with all of `support` on its boundary (circumball in the affine hull).
Ball circumball(const Points& pts, const std::vector<int>& support) {
  Ball b;
  if (support.empty()) return b;
  const Point p0 = pts.col(support[0]);
  if (support.size() == 1) {
    b.center = p0;
    b.radius_sq = 0.0;
    return b;
  }
  const auto m = static_cast<Eigen::Index>(support.size() - 1);
  Eigen::MatrixXd a(pts.rows(), m);
  for (Eigen::Index j = 0; j < m; ++j) a.col(j) = pts.col(support[static_cast<std::size_t>(j + 1)]) - p0;
  const Eigen::MatrixXd gram = a.transpose() * a;
  const Eigen::VectorXd rhs = 0.5 * gram.diagonal();
  Eigen::FullPivLU<Eigen::MatrixXd> lu(gram);
  if (!lu.isInvertible()) return b;  // affinely dependent support
  const Eigen::VectorXd lambda = lu.solve(rhs);
  const Point offset = a * lambda;
  b.center = p0 + offset;
  b.radius_sq = offset.squaredNorm();
  return b;
}

Ball welzl(const Points& pts, std::vector<int>& remaining, std::vector<int>& support) {
  if (remaining.empty() || support.size() == 4 ||
      support.size() == static_cast<std::size_t>(pts.rows()) + 1)
    return circumball(pts, support);
  const int p = remaining.back();
  remaining.pop_back();
  Ball b = welzl(pts, remaining, support);
  if (!inside(b, pts.col(p))) {
    support.push_back(p);
    b = welzl(pts, remaining, support);
    support.pop_back();
  }
  remaining.push_back(p);
  return b;
}

Points distance_matrix(const Points& pts) {
  const Eigen::Index n = pts.cols();
  Points d(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    d(i, i) = 0.0;
    for (Eigen::Index j = i + 1; j < n; ++j) d(i, j) = d(j, i) = (pts.col(i) - pts.col(j)).norm();
  }
  return d;
}

enum class Kind { cech, rips };

FilteredComplex build(const Points& raw, const FiltrationOptions& opts, Kind kind) {
  if (opts.max_dim < 0 || opts.max_dim > 3) throw std::invalid_argument("filtration: max_dim must be in [0, 3]");
  if (raw.cols() >= 65535) throw std::invalid_argument("filtration: too many points");
  const Points pts = jitter_duplicates(raw, opts.jitter_seed);
  const int n = static_cast<int>(pts.cols());
  const Points dist = distance_matrix(pts);
  const double cap = opts.max_value;

  std::vector<Simplex> out;
  auto emit = [&](Simplex s) {
    if (out.size() >= opts.max_simplices)
      throw std::length_error("filtration: simplex budget exceeded (raise max_simplices or lower max_value)");
    out.push_back(s);
  };
  for (int i = 0; i < n; ++i) emit(Simplex{{i, -1, -1, -1}, 0, 0.0});
  if (opts.max_dim == 0) return FilteredComplex::from_simplices(std::move(out), opts.max_dim, n);

  // Higher-index neighbours within 2 * max_value: every simplex is a clique here.
  std::vector<std::vector<int>> nbrs(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const double v = 0.5 * dist(i, j);
      if (v <= cap) {
        nbrs[static_cast<std::size_t>(i)].push_back(j);
        emit(Simplex{{i, j, -1, -1}, 1, v});
      }
    }
  if (opts.max_dim == 1) return FilteredComplex::from_simplices(std::move(out), opts.max_dim, n);

  auto adjacent = [&](int a, int b) { return 0.5 * dist(a, b) <= cap; };
  Points tet(pts.rows(), 4);
  for (int i = 0; i < n; ++i) {
    const auto& ni = nbrs[static_cast<std::size_t>(i)];
    for (std::size_t a = 0; a < ni.size(); ++a) {
      const int j = ni[a];
      for (std::size_t b = a + 1; b < ni.size(); ++b) {
        const int k = ni[b];
        if (!adjacent(j, k)) continue;
        const double dij = dist(i, j), djk = dist(j, k), dki = dist(k, i);
        const double v = kind == Kind::rips ? 0.5 * std::max({dij, djk, dki})
                                            : triangle_enclosing_radius(dij * dij, djk * djk, dki * dki);
        if (v > cap) continue;
        emit(Simplex{{i, j, k, -1}, 2, v});
        if (opts.max_dim < 3) continue;
        for (std::size_t c = b + 1; c < ni.size(); ++c) {
          const int l = ni[c];
          if (!adjacent(j, l) || !adjacent(k, l)) continue;
          double w;
          if (kind == Kind::rips) {
            w = 0.5 * std::max({dij, djk, dki, dist(i, l), dist(j, l), dist(k, l)});
          } else {
            tet.col(0) = pts.col(i);
            tet.col(1) = pts.col(j);
            tet.col(2) = pts.col(k);
            tet.col(3) = pts.col(l);
            w = min_enclosing_radius(tet);
          }
          if (w <= cap) emit(Simplex{{i, j, k, l}, 3, w});
        }
      }
    }
  }
  return FilteredComplex::from_simplices(std::move(out), opts.max_dim, n);
}

}  // namespace

bool filtration_less(const Simplex& a, const Simplex& b) {
  if (a.value != b.value) return a.value < b.value;
  if (a.dim != b.dim) return a.dim < b.dim;
  return a.vertices < b.vertices;
}

FilteredComplex FilteredComplex::from_simplices(std::vector<Simplex> simplices, int max_dim, int point_count) {
  FilteredComplex c;
  c.max_dim_ = max_dim;
  c.point_count_ = point_count;
  for (auto& s : simplices) {
    if (s.dim < 0 || s.dim > 3) throw std::invalid_argument("complex: simplex dimension out of range");
    if (s.dim > max_dim) throw std::invalid_argument("complex: simplex above max_dim");
    if (!(s.value >= 0.0) && !std::isinf(s.value)) throw std::invalid_argument("complex: invalid filtration value");
    std::sort(s.vertices.begin(), s.vertices.begin() + s.dim + 1);
    for (int i = 0; i <= s.dim; ++i) {
      if (s.vertex(i) < 0 || s.vertex(i) >= 65535) throw std::invalid_argument("complex: bad vertex id");
      if (i > 0 && s.vertex(i) == s.vertex(i - 1)) throw std::invalid_argument("complex: repeated vertex");
    }
    for (int i = s.dim + 1; i < 4; ++i) s.vertices[static_cast<std::size_t>(i)] = -1;
  }
  std::sort(simplices.begin(), simplices.end(), filtration_less);
  c.index_.reserve(simplices.size());
  for (std::size_t i = 0; i < simplices.size(); ++i) c.index_.emplace_back(pack(simplices[i].vertices), static_cast<int>(i));
  std::sort(c.index_.begin(), c.index_.end());
  for (std::size_t i = 1; i < c.index_.size(); ++i)
    if (c.index_[i].first == c.index_[i - 1].first) throw std::invalid_argument("complex: duplicate simplex");
  c.simplices_ = std::move(simplices);

  // Rounding between the closed-form triangle radius and the Welzl path can put a
  // coface a few ulps below its face; lift it to keep the filtration monotone.
  bool lifted = false;
  for (std::size_t i = 0; i < c.simplices_.size(); ++i) {
    auto& s = c.simplices_[i];
    if (s.dim == 0) continue;
    for (int drop = 0; drop <= s.dim; ++drop) {
      std::array<int, 4> face{-1, -1, -1, -1};
      int w = 0;
      for (int v = 0; v <= s.dim; ++v)
        if (v != drop) face[static_cast<std::size_t>(w++)] = s.vertex(v);
      const long f = c.index_of(face);
      if (f < 0) throw std::invalid_argument("complex: missing face");
      const double fv = c.simplices_[static_cast<std::size_t>(f)].value;
      if (fv > s.value) {
        if (fv - s.value > 1e-9 * std::max(1.0, fv)) throw std::invalid_argument("complex: filtration is not monotone");
        s.value = fv;
        lifted = true;
      }
    }
  }
  if (lifted) return from_simplices(std::move(c.simplices_), max_dim, point_count);
  return c;
}

long FilteredComplex::index_of(const std::array<int, 4>& vertices) const {
  const std::uint64_t key = pack(vertices);
  auto it = std::lower_bound(index_.begin(), index_.end(), std::make_pair(key, -1));
  if (it == index_.end() || it->first != key) return -1;
  return it->second;
}

std::vector<int> FilteredComplex::boundary(std::size_t i) const {
  const auto& s = simplices_.at(i);
  std::vector<int> out;
  if (s.dim == 0) return out;
  out.reserve(static_cast<std::size_t>(s.dim + 1));
  for (int drop = 0; drop <= s.dim; ++drop) {
    std::array<int, 4> face{-1, -1, -1, -1};
    int w = 0;
    for (int v = 0; v <= s.dim; ++v)
      if (v != drop) face[static_cast<std::size_t>(w++)] = s.vertex(v);
    out.push_back(static_cast<int>(index_of(face)));
  }
  std::sort(out.begin(), out.end());
  return out;
}

double min_enclosing_radius(const Points& pts) {
  if (pts.cols() == 0) return 0.0;
  if (pts.cols() > 4) throw std::invalid_argument("min_enclosing_radius: at most four points");
  std::vector<int> remaining(static_cast<std::size_t>(pts.cols()));
  std::iota(remaining.begin(), remaining.end(), 0);
  std::vector<int> support;
  const Ball b = welzl(pts, remaining, support);
  return std::sqrt(std::max(0.0, b.radius_sq));
}

double triangle_enclosing_radius(double ab2, double bc2, double ca2) {
  const double longest = std::max({ab2, bc2, ca2});
  // Right or obtuse: the longest side is a diameter.
  if (2.0 * longest >= ab2 + bc2 + ca2) return 0.5 * std::sqrt(longest);
  const double area16 = 2.0 * (ab2 * bc2 + bc2 * ca2 + ca2 * ab2) - (ab2 * ab2 + bc2 * bc2 + ca2 * ca2);
  if (area16 <= 0.0) return 0.5 * std::sqrt(longest);
  return std::sqrt(ab2 * bc2 * ca2 / area16);
}

Points merge_close_points(const Points& points, double radius) {
  if (!(radius >= 0.0)) throw std::invalid_argument("merge_close_points: radius must be >= 0");
  if (radius == 0.0) return points;
  const double r2 = radius * radius;
  std::vector<Eigen::Index> kept;
  for (Eigen::Index i = 0; i < points.cols(); ++i) {
    bool close = false;
    for (Eigen::Index k : kept)
      if ((points.col(i) - points.col(k)).squaredNorm() <= r2) {
        close = true;
        break;
      }
    if (!close) kept.push_back(i);
  }
  Points out(points.rows(), static_cast<Eigen::Index>(kept.size()));
  for (std::size_t j = 0; j < kept.size(); ++j) out.col(static_cast<Eigen::Index>(j)) = points.col(kept[j]);
  return out;
}

Points jitter_duplicates(const Points& points, std::uint64_t seed) {
  const Eigen::Index n = points.cols();
  if (n < 2) return points;
  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  auto lex_less = [&](Eigen::Index a, Eigen::Index b) {
    for (Eigen::Index r = 0; r < points.rows(); ++r)
      if (points(r, a) != points(r, b)) return points(r, a) < points(r, b);
    return a < b;
  };
  std::sort(order.begin(), order.end(), lex_less);
  std::vector<Eigen::Index> dups;
  for (std::size_t i = 1; i < order.size(); ++i)
    if (points.col(order[i]) == points.col(order[i - 1])) dups.push_back(order[i]);
  if (dups.empty()) return points;

  const double diag = (points.rowwise().maxCoeff() - points.rowwise().minCoeff()).norm();
  const double eps = 1e-12 * (diag > 0.0 ? diag : 1.0);
  Points out = points;
  Rng rng(seed);
  std::normal_distribution<double> normal;
  std::sort(dups.begin(), dups.end());
  for (auto c : dups) {
    Point dir(points.rows());
    for (Eigen::Index r = 0; r < dir.size(); ++r) dir(r) = normal(rng);
    out.col(c) += eps * dir.normalized();
  }
  return out;
}

FilteredComplex cech_filtration(const Points& points, const FiltrationOptions& opts) {
  return build(points, opts, Kind::cech);
}

FilteredComplex rips_filtration(const Points& points, const FiltrationOptions& opts) {
  return build(points, opts, Kind::rips);
}

}  // namespace bba
