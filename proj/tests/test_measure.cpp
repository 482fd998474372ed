#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "bba/core/measure.hpp"
#include "bba/core/regions.hpp"
#include "support.hpp"

using namespace bba;
using bba::test::vec;

namespace {

Measured line_measure(std::vector<double> xs, std::vector<double> ws) {
  Points p(1, static_cast<Eigen::Index>(xs.size()));
  Eigen::VectorXd w(static_cast<Eigen::Index>(ws.size()));
  for (std::size_t i = 0; i < xs.size(); ++i) p(0, static_cast<Eigen::Index>(i)) = xs[i];
  for (std::size_t i = 0; i < ws.size(); ++i) w(static_cast<Eigen::Index>(i)) = ws[i];
  return Measured(p, w);
}

Dataset with_masses(const std::vector<double>& masses) {
  Dataset data;
  for (double m : masses) data.push_back(line_measure({0.0}, {m}), 0);
  return data;
}

}  // namespace

TEST_CASE("total mass") {
  CHECK(total_mass(line_measure({0, 1, 2, 3}, {1, 1, 1, 1})) == 4.0);
  CHECK(total_mass(Measured(2)) == 0.0);
  CHECK(total_mass(line_measure({0, 1}, {0.5, 0.25})) == 0.75);
}

TEST_CASE("measure construction rejects bad input") {
  CHECK_THROWS_AS(Measured(Points::Zero(2, 3), Eigen::VectorXd::Ones(2)), std::invalid_argument);
  CHECK_THROWS_AS(line_measure({0.0}, {-1.0}), std::invalid_argument);
  CHECK_THROWS_AS(line_measure({NAN}, {1.0}), std::invalid_argument);
  CHECK_THROWS_AS(Measured(0), std::invalid_argument);
  Dataset data;
  data.push_back(Measured::uniform(Points::Zero(2, 1)), 0);
  CHECK_THROWS_AS(data.push_back(Measured::uniform(Points::Zero(3, 1)), 1), std::invalid_argument);
}

TEST_CASE("integrate") {
  Rng rng(3);
  Measured mu = test::random_measure(2, 7, rng);
  CHECK(integrate(mu, [](const auto&) { return 1.0; }) == doctest::Approx(total_mass(mu)).epsilon(1e-15));
  CHECK(integrate(mu, [](const auto&) { return 0.0; }) == 0.0);
  CHECK(integrate(line_measure({0, 2}, {1, 1}), [](const auto& x) { return x(0); }) == 2.0);
  CHECK_THROWS_AS(integrate(mu, [](const auto&) { return INFINITY; }), std::domain_error);
}

TEST_CASE("integrate is linear") {
  Rng rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    Measured mu = test::random_measure(3, 1 + static_cast<long>(uniform_index(rng, 10)), rng);
    const double a = uniform01(rng) * 4 - 2, b = uniform01(rng) * 4 - 2;
    auto f = [](const auto& x) { return std::sin(x(0)) + x(1) * x(2); };
    auto g = [](const auto& x) { return std::exp(x(1)) - x(0); };
    const double lhs = integrate(mu, [&](const auto& x) { return a * f(x) + b * g(x); });
    const double rhs = a * integrate(mu, f) + b * integrate(mu, g);
    CHECK(std::abs(lhs - rhs) <= 1e-12 * std::max(1.0, std::abs(rhs)));
  }
}

TEST_CASE("mass in region") {
  Points p(2, 4);
  p << 0, 1, 0, 5,
       0, 0, 1, 5;
  Measured mu = Measured::uniform(p);
  CHECK(mass_in_region(mu, Region(Balld(vec({0, 0}), 100.0))) == 4.0);
  CHECK(mass_in_region(mu, Region(Balld(vec({-50, -50}), 1.0))) == 0.0);
  CHECK(mass_in_region(mu, Region(Balld(vec({0, 0}), 1.0))) == 3.0);
  CHECK(mass_in_region(mu, Region(AxisRectd(vec({-1, -1}), vec({1, INFINITY})))) == 3.0);
  CHECK_THROWS_AS(mass_in_region(mu, Region(Balld(vec({0}), 1.0))), std::invalid_argument);
}

TEST_CASE("mass is monotone in radius and equals the indicator integral") {
  Rng rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    Measured mu = test::random_measure(2, 12, rng);
    Point c = test::random_points(2, 1, rng).col(0);
    const double r1 = uniform01(rng) * 0.5, r2 = r1 + uniform01(rng) * 0.5;
    Balld small(c, r1), large(c, r2);
    const double m1 = mass_in_region(mu, Region(small));
    CHECK(m1 <= mass_in_region(mu, Region(large)));
    CHECK(m1 == integrate(mu, [&](const auto& x) { return contains(small, x) ? 1.0 : 0.0; }));
    AxisRectd box(c, c + Point::Constant(2, r2));
    CHECK(mass_in_region(mu, Region(box)) ==
          integrate(mu, [&](const auto& x) { return contains(box, x) ? 1.0 : 0.0; }));
  }
}

TEST_CASE("power mean of masses") {
  CHECK(mbar_p(with_masses({2, 2, 2}), 1.0) == doctest::Approx(2.0));
  CHECK(mbar_p(with_masses({2, 2, 2}), 3.5) == doctest::Approx(2.0));
  CHECK(mbar_p(with_masses({3, 4}), 2.0) == doctest::Approx(3.5355339059327378).epsilon(1e-14));
  CHECK(mbar_p(with_masses({1}), 1.0) == 1.0);
  CHECK_THROWS_AS(mbar_p(Dataset{}, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(mbar_p(with_masses({1}), 0.5), std::invalid_argument);
}

TEST_CASE("power mean is nondecreasing in p") {
  Rng rng(17);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> m;
    for (int i = 0; i < 6; ++i) m.push_back(uniform01(rng) * 10);
    Dataset data = with_masses(m);
    double prev = 0.0;
    for (double p : {1.0, 1.5, 2.0, 3.0, 5.0, 10.0}) {
      const double v = mbar_p(data, p);
      CHECK(v >= prev * (1 - 1e-14));
      prev = v;
    }
  }
}

TEST_CASE("region membership is closed") {
  CHECK(contains(Balld(vec({0, 0}), 1.0), vec({1, 0})));
  CHECK_FALSE(contains(AxisRectd(vec({0, 0}), vec({1, 1})), vec({2, 0})));
  CHECK(contains(Balld(vec({0, 0}), 0.0), vec({0, 0})));
  CHECK_THROWS_AS(Balld(vec({0}), -1.0), std::invalid_argument);
  CHECK_THROWS_AS(AxisRectd(vec({1}), vec({0})), std::invalid_argument);
}

TEST_CASE("distance to ball") {
  CHECK(dist_to_ball(Balld(vec({0, 0}), 1.0), vec({0.2, 0.3})) == 0.0);
  CHECK(dist_to_ball(Balld(vec({0, 0}), 1.0), vec({3, 0})) == 2.0);
  CHECK(dist_to_ball(Balld(vec({1, 1}), 0.0), vec({4, 5})) == 5.0);
}

TEST_CASE("distance to ball is 1-Lipschitz and vanishes exactly inside") {
  Rng rng(23);
  for (int trial = 0; trial < 500; ++trial) {
    Points p = test::random_points(3, 3, rng, -2, 2);
    Balld b(p.col(0), uniform01(rng));
    const double dx = dist_to_ball(b, p.col(1)), dy = dist_to_ball(b, p.col(2));
    CHECK(std::abs(dx - dy) <= (p.col(1) - p.col(2)).norm() + 1e-15);
    CHECK(contains(b, p.col(1)) == (dx == 0.0));
  }
}

TEST_CASE("smooth feature") {
  Points p(2, 3);
  p << 0, 0.1, -0.2,
       0, 0.2, 0.1;
  Measured mu = Measured::uniform(p);
  CHECK(smooth_feature(mu, SmoothParamsd{vec({0, 0}), 1.0, 0.0, 0.3}) == doctest::Approx(3.0));
  CHECK(smooth_feature(Measured(2), SmoothParamsd{vec({0, 0}), 1.0, 0.5, 0.3}) == -0.5);
  const double sigma = 0.7;
  Measured one = Measured::uniform(vec({1.0 + sigma * std::log(2.0), 0.0}));
  CHECK(smooth_feature(one, SmoothParamsd{vec({0, 0}), 1.0, 0.0, sigma}) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK_THROWS_AS(smooth_feature(mu, SmoothParamsd{vec({0, 0}), 1.0, 0.0, 0.0}), std::invalid_argument);
}

TEST_CASE("smooth feature converges to hard mass as the scale shrinks") {
  Rng rng(29);
  for (int trial = 0; trial < 20; ++trial) {
    Measured mu = test::random_measure(2, 10, rng);
    Balld b(vec({0.5, 0.5}), 0.3);
    const double s = uniform01(rng);
    const double hard = mass_in_region(mu, Region(b)) - s;
    double prev = INFINITY;
    for (double sigma : {1e-1, 1e-3, 1e-6}) {
      const double gap = std::abs(smooth_feature(mu, SmoothParamsd{b.center, b.radius, s, sigma}) - hard);
      CHECK(gap <= prev);
      prev = gap;
    }
    double dmin = INFINITY;
    for (Eigen::Index i = 0; i < mu.size(); ++i)
      if (!contains(b, mu.point(i))) dmin = std::min(dmin, dist_to_ball(b, mu.point(i)));
    CHECK(prev <= total_mass(mu) * std::exp(-dmin / 1e-6) + 1e-12);
  }
}

TEST_CASE("sigmoid") {
  CHECK(sigmoid(0.0) == 0.5);
  for (double x : {0.3, 2.0, 17.0, 700.0})
    CHECK(sigmoid(x) + sigmoid(-x) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(sigmoid(40.0) > 1 - 1e-12);
  CHECK(sigmoid(40.0) <= 1.0);
  CHECK(sigmoid(-800.0) >= 0.0);
}
