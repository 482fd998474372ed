#pragma once

#include <complex>
#include <cstdint>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "bba/core/measure.hpp"
#include "bba/topology/persistence.hpp"

namespace bba {

/// Uniform (area measure) samples on the torus with tube radius `r_inner`
/// around a circle of radius `r_outer` in the xy-plane. Returns 3 x n.
Points sample_torus(long n, double r_outer, double r_inner, std::uint64_t seed);

/// Uniform samples on the sphere of the given radius centered at the origin.
Points sample_sphere(long n, double radius, std::uint64_t seed);

/// Adds i.i.d. N(0, sigma^2) noise to every coordinate.
Points add_gaussian_noise(const Points& points, double sigma, std::uint64_t seed);

struct OrbitParams {
  double rho = 2.5;
  long n = 1000;
  std::uint64_t seed = 0;
};

/// n points of the linked twist map starting from (x0, y0); the first point is
/// (x0, y0) itself and the y update uses the new x.
Points orbit_from(double x0, double y0, double rho, long n);

/// orbit_from with (x0, y0) drawn uniformly from [0, 1)^2.
Points orbit(const OrbitParams& params);

/// Homogeneous Poisson process on the centered disk with the given mean count.
Points sample_ppp_disk(double mean_count, double radius, std::uint64_t seed);

/// Eigenvalues of an upper Hessenberg reduction of `a` by shifted complex QR.
/// Throws std::runtime_error when an eigenvalue fails to deflate.
std::vector<std::complex<double>> eigenvalues_qr(Eigen::MatrixXcd a, int max_iter_per_eigenvalue = 60);

/// Ginibre ensemble: eigenvalues of an n x n matrix with standard complex
/// Gaussian entries, scaled by radius / sqrt(n).
Points sample_ginibre(int n_modes, double radius, std::uint64_t seed);

// ---------------------------------------------------------------------------

struct Graph {
  int n = 0;
  std::vector<std::pair<int, int>> edges;

  Graph() = default;
  Graph(int n_, std::vector<std::pair<int, int>> edges_);
  void validate() const;
};

Eigen::MatrixXd normalized_laplacian(const Graph& g);

struct SymmetricEigen {
  Eigen::VectorXd values;   // ascending
  Eigen::MatrixXd vectors;  // columns match values
};

/// Cyclic Jacobi rotations on a symmetric matrix.
SymmetricEigen jacobi_eigen(Eigen::MatrixXd a, double tol = 1e-14, int max_sweeps = 100);

/// hks_t(v) = sum_k exp(-t lambda_k) psi_k(v)^2 on the normalized Laplacian.
Eigen::VectorXd graph_hks(const Graph& g, double t = 10.0);

/// Lower-star sublevel diagrams (D0, D1) of a vertex function on a graph.
std::pair<PersistenceDiagram, PersistenceDiagram> graph_sublevel_diagrams(const Graph& g,
                                                                          const Eigen::VectorXd& values);

Graph erdos_renyi(int n, double p, std::uint64_t seed);
Graph watts_strogatz(int n, int k, double beta, std::uint64_t seed);

}  // namespace bba
