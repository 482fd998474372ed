#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>

#include "bba/datagen/datagen.hpp"
#include "bba/topology/persistence.hpp"
#include "support.hpp"

using namespace bba;

namespace {

Graph cycle(int n) {
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i < n; ++i) e.push_back({std::min(i, (i + 1) % n), std::max(i, (i + 1) % n)});
  return Graph(n, e);
}

int components_below(const Graph& g, const Eigen::VectorXd& f, double r) {
  std::vector<int> parent(static_cast<std::size_t>(g.n));
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
  for (auto [u, v] : g.edges)
    if (f(u) <= r && f(v) <= r) parent[find(u)] = find(v);
  int count = 0;
  for (int v = 0; v < g.n; ++v) count += f(v) <= r && find(v) == v;
  return count;
}

void sort_complex(std::vector<std::complex<double>>& z) {
  std::sort(z.begin(), z.end(), [](auto a, auto b) { return a.real() < b.real() || (a.real() == b.real() && a.imag() < b.imag()); });
}

}  // namespace

TEST_CASE("torus samples lie on the torus and are centered") {
  const Points p = sample_torus(10000, 4.0, 2.0, 1);
  REQUIRE(p.rows() == 3);
  REQUIRE(p.cols() == 10000);
  for (long i = 0; i < p.cols(); ++i) {
    const double rho = std::hypot(p(0, i), p(1, i)) - 4.0;
    CHECK(std::abs(rho * rho + p(2, i) * p(2, i) - 4.0) < 1e-9);
  }
  const double sd_z = std::sqrt((p.row(2).array().square()).mean() / 10000.0);
  CHECK(std::abs(p.row(2).mean()) <= 4 * sd_z);
  CHECK(sample_torus(0, 4.0, 2.0, 1).cols() == 0);
  CHECK(sample_torus(50, 4.0, 2.0, 7) == sample_torus(50, 4.0, 2.0, 7));
}

TEST_CASE("sphere samples lie on the sphere and are centered") {
  const Points p = sample_sphere(10000, 6.0, 2);
  for (long i = 0; i < p.cols(); ++i) CHECK(std::abs(p.col(i).norm() - 6.0) < 1e-9);
  const double sd = 6.0 / std::sqrt(3.0) / std::sqrt(10000.0);
  for (long j = 0; j < 3; ++j) CHECK(std::abs(p.row(j).mean()) <= 4 * sd);
  const Points one = sample_sphere(1, 2.0, 3);
  REQUIRE(one.cols() == 1);
  CHECK(one.col(0).norm() == doctest::Approx(2.0));
}

TEST_CASE("gaussian noise") {
  const Points p = sample_sphere(100, 1.0, 4);
  CHECK(add_gaussian_noise(p, 0.0, 5) == p);
  const Points q = add_gaussian_noise(p, 0.5, 5);
  const double sd = (q - p).array().square().mean();
  CHECK(std::sqrt(sd) == doctest::Approx(0.5).epsilon(0.1));
  CHECK(add_gaussian_noise(p, 0.5, 5) == q);
}

TEST_CASE("orbit recursion") {
  const Points o = orbit_from(0.5, 0.5, 2.5, 2);
  CHECK(o(0, 0) == 0.5);
  CHECK(o(0, 1) == 0.125);
  CHECK(o(1, 1) == 0.7734375);
  OrbitParams params{4.1, 50, 42};
  CHECK(orbit(params) == orbit(params));
  CHECK_THROWS_AS(orbit_from(0.1, 0.1, 2.5, 0), std::invalid_argument);
}

TEST_CASE("orbit matches the golden trace") {
  std::ifstream in(std::string(BBA_TEST_DATA) + "/orbit_seed42_rho4.1.csv");
  REQUIRE(in.good());
  std::string line;
  std::vector<std::pair<double, double>> rows;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    const auto comma = line.find(',');
    rows.emplace_back(std::stod(line.substr(0, comma)), std::stod(line.substr(comma + 1)));
  }
  REQUIRE(rows.size() == 50);
  const Points o = orbit(OrbitParams{4.1, 50, 42});
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(o(0, static_cast<long>(i)) == rows[i].first);
    CHECK(o(1, static_cast<long>(i)) == rows[i].second);
  }
}

TEST_CASE("poisson disk process") {
  CHECK(sample_ppp_disk(0.0, 1.0, 1).cols() == 0);
  double total = 0.0;
  for (std::uint64_t s = 0; s < 400; ++s) {
    const Points p = sample_ppp_disk(30.0, 2.0, s);
    total += static_cast<double>(p.cols());
    for (long i = 0; i < p.cols(); ++i) CHECK(p.col(i).norm() <= 2.0);
  }
  CHECK(std::abs(total / 400 - 30.0) <= 4 * std::sqrt(30.0 / 400));
}

TEST_CASE("QR eigenvalues agree with a reference solver") {
  Rng rng(6);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 1 + static_cast<int>(uniform_index(rng, 40));
    Eigen::MatrixXcd a(n, n);
    std::normal_distribution<double> g;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) a(i, j) = {g(rng), g(rng)};
    auto ours = eigenvalues_qr(a);
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> ref(a, false);
    std::vector<std::complex<double>> theirs(ref.eigenvalues().data(), ref.eigenvalues().data() + n);
    REQUIRE(ours.size() == theirs.size());
    // Match greedily by distance; eigenvalues are simple with probability one.
    std::vector<char> used(theirs.size(), 0);
    for (auto z : ours) {
      std::size_t best = 0;
      double dist = INFINITY;
      for (std::size_t k = 0; k < theirs.size(); ++k)
        if (!used[k] && std::abs(z - theirs[k]) < dist) dist = std::abs(z - theirs[k]), best = k;
      used[best] = 1;
      CHECK(dist <= 1e-8 * std::max(1.0, std::abs(z)));
    }
  }
}

TEST_CASE("ginibre samples") {
  const Points p = sample_ginibre(60, 1.0, 7);
  REQUIRE(p.cols() == 60);
  CHECK(p == sample_ginibre(60, 1.0, 7));
  double mean_r2 = 0.0;
  for (std::uint64_t s = 0; s < 20; ++s) mean_r2 += sample_ginibre(60, 1.0, s).colwise().squaredNorm().mean();
  CHECK(mean_r2 / 20 == doctest::Approx(0.5).epsilon(0.1));
  for (long i = 0; i + 1 < p.cols(); ++i) CHECK(p(0, i) <= p(0, i + 1));
}

TEST_CASE("graph validation") {
  CHECK_THROWS_AS(Graph(3, {{0, 0}}), std::invalid_argument);
  CHECK_THROWS_AS(Graph(3, {{0, 1}, {1, 0}}), std::invalid_argument);
  CHECK_THROWS_AS(Graph(3, {{0, 3}}), std::invalid_argument);
  const Graph er = erdos_renyi(30, 0.2, 8);
  std::set<std::pair<int, int>> seen;
  for (auto [u, v] : er.edges) {
    CHECK(u != v);
    CHECK(seen.insert({std::min(u, v), std::max(u, v)}).second);
  }
  const Graph ws = watts_strogatz(20, 2, 0.3, 9);
  CHECK(ws.edges.size() == 40);
  CHECK_NOTHROW(ws.validate());
  CHECK(erdos_renyi(30, 0.2, 8).edges == er.edges);
}

TEST_CASE("jacobi eigensolver agrees with a reference solver") {
  Rng rng(10);
  for (int trial = 0; trial < 20; ++trial) {
    const Graph g = erdos_renyi(5 + static_cast<int>(uniform_index(rng, 20)), 0.3, trial);
    const Eigen::MatrixXd l = normalized_laplacian(g);
    CHECK((l - l.transpose()).cwiseAbs().maxCoeff() == 0.0);
    const SymmetricEigen ours = jacobi_eigen(l);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ref(l);
    CHECK((ours.values - ref.eigenvalues()).cwiseAbs().maxCoeff() < 1e-10);
    CHECK((l * ours.vectors - ours.vectors * ours.values.asDiagonal()).cwiseAbs().maxCoeff() < 1e-10);
    CHECK(ours.values.minCoeff() > -1e-12);
    CHECK(ours.values.maxCoeff() < 2 + 1e-12);
  }
}

TEST_CASE("heat kernel signature") {
  const Graph single(1, {});
  for (double t : {0.1, 1.0, 10.0}) CHECK(graph_hks(single, t)(0) == doctest::Approx(1.0).epsilon(1e-14));
  const Graph g = erdos_renyi(15, 0.3, 11);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ref(normalized_laplacian(g));
  const Eigen::VectorXd expect =
      ref.eigenvectors().cwiseAbs2() * (-10.0 * ref.eigenvalues().array()).exp().matrix();
  CHECK((graph_hks(g, 10.0) - expect).cwiseAbs().maxCoeff() < 1e-10);
  CHECK(graph_hks(g, 0.0).sum() == doctest::Approx(15.0));
}

TEST_CASE("sublevel diagrams of trees and cycles") {
  const Graph path(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}});
  Eigen::VectorXd f(5);
  f << 0.3, 0.1, 0.5, 0.2, 0.4;
  const auto [d0, d1] = graph_sublevel_diagrams(path, f);
  CHECK(d1.empty());
  int essential = 0;
  for (const auto& p : d0.pairs) essential += p.essential();
  CHECK(d0.size() == 5);
  CHECK(essential == 1);

  const Graph c = cycle(6);
  const auto [c0, c1] = graph_sublevel_diagrams(c, Eigen::VectorXd::Constant(6, 0.7));
  REQUIRE(c1.size() == 1);
  CHECK(c1.pairs[0].birth == 0.7);
  CHECK(c1.pairs[0].essential());
}

TEST_CASE("sublevel diagrams match component counts and cycle rank") {
  Rng rng(12);
  for (int trial = 0; trial < 50; ++trial) {
    const Graph g = erdos_renyi(12, 0.35, 100 + trial);
    Eigen::VectorXd f(g.n);
    for (int v = 0; v < g.n; ++v) f(v) = std::floor(uniform01(rng) * 6) / 6;
    const auto [d0, d1] = graph_sublevel_diagrams(g, f);
    for (int v = 0; v < g.n; ++v) CHECK(persistent_betti(d0, f(v)) == components_below(g, f, f(v)));
    const int comps = components_below(g, f, 1.0);
    CHECK(static_cast<int>(d1.size()) == static_cast<int>(g.edges.size()) - g.n + comps);
  }
}
