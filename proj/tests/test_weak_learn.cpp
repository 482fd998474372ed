#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "bba/learn/weak_learn.hpp"
#include "support.hpp"

using namespace bba;
using bba::test::vec;

namespace {

// Two-class toy: class 1 has extra mass near (1, 1).
Dataset toy(std::uint64_t seed, std::size_t n = 16) {
  Rng rng(seed);
  Dataset data;
  data.dim = 2;
  for (std::size_t i = 0; i < n; ++i) {
    const int y = static_cast<int>(i % 2);
    Points p = test::random_points(2, 6, rng);
    if (y == 1) p.col(0) = vec({0.9 + 0.1 * uniform01(rng), 0.9 + 0.1 * uniform01(rng)});
    data.push_back(Measured::uniform(p), y);
  }
  return data;
}

std::vector<double> random_weights(std::size_t n, Rng& rng) {
  std::vector<double> w(n);
  double s = 0.0;
  for (auto& x : w) s += (x = 0.05 + uniform01(rng));
  for (auto& x : w) x /= s;
  return w;
}

GridSpec ball_grid() {
  GridSpec g;
  g.kind = RegionKind::ball;
  g.centers = {vec({0.2, 0.2}), vec({0.5, 0.5}), vec({0.95, 0.95}), vec({0.1, 0.9})};
  g.radii = {0.05, 0.15, 0.3};
  g.thresholds = {-0.5, 0.5, 1.5, 2.5, 3.5};
  return g;
}

}  // namespace

TEST_CASE("weak classifier prediction is strict") {
  Measured mu = Measured::uniform(vec({0.0, 0.0}));
  WeakClassifier h{Region(Balld(vec({0, 0}), 1.0)), 1.0, 1};
  CHECK(predict(h, mu) == 0);
  h.threshold = 0.999;
  CHECK(predict(h, mu) == 1);
  h.sign = -1;
  CHECK(predict(h, mu) == 0);
  h.threshold = 1.0;
  CHECK(predict(h, mu) == 0);
}

TEST_CASE("weighted error") {
  Dataset data = toy(1, 4);
  const auto w = uniform_weights(4);
  WeakClassifier always1{Region(Balld(vec({0, 0}), 100.0)), -1.0, 1};
  CHECK(weighted_error(always1, data, w) == doctest::Approx(0.5));
  Dataset ones = data;
  for (auto& y : ones.labels) y = 1;
  CHECK(weighted_error(always1, ones, w) == 0.0);
  CHECK_THROWS_AS(weighted_error(always1, data, std::vector<double>{0.5, 0.5, 0.5, 0.5}), std::invalid_argument);
  CHECK_THROWS_AS(weighted_error(always1, data, std::vector<double>{1.0}), std::invalid_argument);
}

TEST_CASE("the two orientations have complementary errors away from ties") {
  Rng rng(2);
  Dataset data = toy(2);
  const auto w = random_weights(data.size(), rng);
  for (int trial = 0; trial < 50; ++trial) {
    Region a = Balld(test::random_points(2, 1, rng).col(0), 0.5 * uniform01(rng));
    const double s = std::floor(7 * uniform01(rng)) + 0.5;
    const double ep = weighted_error(WeakClassifier{a, s, 1}, data, w);
    const double em = weighted_error(WeakClassifier{a, s, -1}, data, w);
    CHECK(ep + em == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("exhaustive search matches brute-force enumeration") {
  Rng rng(3);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Dataset data = toy(100 + seed);
    const auto w = random_weights(data.size(), rng);
    GridSpec grid = ball_grid();
    const SearchResult res = exhaustive_search(data, w, grid);

    double best = INFINITY;
    for (const auto& c : grid.centers)
      for (double r : grid.radii)
        for (double s : grid.thresholds)
          for (int sign : {1, -1}) {
            double err = 0.0;
            for (std::size_t i = 0; i < data.size(); ++i) {
              double m = 0.0;
              for (Eigen::Index k = 0; k < data.measures[i].size(); ++k)
                if ((data.measures[i].point(k) - c).norm() <= r) m += data.measures[i].weight(k);
              const int yhat = sign * (m - s) > 0 ? 1 : 0;
              if (yhat != data.labels[i]) err += w[i];
            }
            best = std::min(best, err);
          }
    CHECK(res.error == doctest::Approx(best).epsilon(1e-12));
    CHECK(weighted_error(res.classifier, data, w) == doctest::Approx(res.error).epsilon(1e-12));
  }
}

TEST_CASE("exhaustive search is independent of the worker count") {
  Dataset data = toy(7, 30);
  const auto w = uniform_weights(data.size());
  GridSpec grid = ball_grid();
  grid.thresholds.clear();
  const auto a = exhaustive_search(data, w, grid, 1);
  const auto b = exhaustive_search(data, w, grid, 3);
  CHECK(a.error == b.error);
  CHECK(a.classifier.threshold == b.classifier.threshold);
  CHECK(a.classifier.sign == b.classifier.sign);
  CHECK(std::get<Balld>(a.classifier.region).center == std::get<Balld>(b.classifier.region).center);
}

TEST_CASE("flipping labels flips the orientation with the same error") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    Dataset data = toy(200 + seed);
    Dataset flipped = data;
    for (auto& y : flipped.labels) y = 1 - y;
    const auto w = uniform_weights(data.size());
    GridSpec grid = ball_grid();
    const auto a = exhaustive_search(data, w, grid);
    const auto b = exhaustive_search(flipped, w, grid);
    CHECK(a.error == doctest::Approx(b.error).epsilon(1e-12));
    const WeakClassifier mirrored{a.classifier.region, a.classifier.threshold, -a.classifier.sign};
    CHECK(weighted_error(mirrored, flipped, w) == doctest::Approx(a.error).epsilon(1e-12));
  }
}

TEST_CASE("scaling all weights and thresholds leaves the choice unchanged") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    Dataset data = toy(300 + seed);
    Dataset scaled = data;
    const double c = 3.25;
    for (auto& mu : scaled.measures) mu = Measured(mu.points(), mu.weights() * c);
    GridSpec grid = ball_grid();
    GridSpec grid_scaled = grid;
    for (auto& s : grid_scaled.thresholds) s *= c;
    const auto w = uniform_weights(data.size());
    const auto a = exhaustive_search(data, w, grid);
    const auto b = exhaustive_search(scaled, w, grid_scaled);
    CHECK(a.error == b.error);
    CHECK(std::get<Balld>(a.classifier.region).center == std::get<Balld>(b.classifier.region).center);
    CHECK(std::get<Balld>(a.classifier.region).radius == std::get<Balld>(b.classifier.region).radius);
    CHECK(b.classifier.threshold == a.classifier.threshold * c);
  }
}

TEST_CASE("rect grid enumerates valid boxes") {
  GridSpec g;
  g.kind = RegionKind::rect;
  g.rect_mins = {{0.0, 0.5}, {-INFINITY}};
  g.rect_maxs = {{0.25, 1.0}, {0.5, INFINITY}};
  const auto regions = g.candidate_regions();
  CHECK(regions.size() == 3 * 2);
  for (const auto& r : regions) {
    const auto& box = std::get<AxisRectd>(r);
    CHECK(box.mins(0) <= box.maxs(0));
  }
}

TEST_CASE("default thresholds") {
  std::vector<double> masses{1, 2, 2, 5};
  const auto t = default_thresholds(masses, 10);
  CHECK(std::is_sorted(t.begin(), t.end()));
  CHECK(std::adjacent_find(t.begin(), t.end()) == t.end());
  CHECK(t.front() < 1.0);
  for (double m : masses) CHECK(std::find(t.begin(), t.end(), m) != t.end());
  CHECK(default_thresholds(std::vector<double>{3, 3}, 4).size() == 2);
}

TEST_CASE("k-means") {
  Points p(2, 3);
  p << 0, 5, 9,
       0, 1, 2;
  auto c = kmeans_centers(p, 3, 1);
  REQUIRE(c.size() == 3);
  std::vector<double> xs;
  for (const auto& x : c) xs.push_back(x(0));
  std::sort(xs.begin(), xs.end());
  CHECK(xs == std::vector<double>{0, 5, 9});

  auto one = kmeans_centers(p, 1, 4);
  REQUIRE(one.size() == 1);
  CHECK((one[0] - vec({14.0 / 3.0, 1.0})).norm() < 1e-12);

  Rng rng(5);
  Points two(2, 40);
  for (long i = 0; i < 40; ++i) {
    const double off = i < 20 ? 0.0 : 10.0;
    two(0, i) = off + uniform01(rng);
    two(1, i) = off + uniform01(rng);
  }
  auto c2 = kmeans_centers(two, 2, 9);
  REQUIRE(c2.size() == 2);
  std::sort(c2.begin(), c2.end(), [](const Point& a, const Point& b) { return a(0) < b(0); });
  CHECK(c2[0].maxCoeff() <= 1.0);
  CHECK(c2[1].minCoeff() >= 10.0);
}

TEST_CASE("cross entropy") {
  Dataset data = toy(9, 8);
  // Threshold chosen so that every feature is zero: all points inside the ball.
  SmoothParamsd half{vec({0.5, 0.5}), 10.0, 6.0, 0.1};
  CHECK(cross_entropy_loss(half, data) == doctest::Approx(8 * std::log(2.0)).epsilon(1e-13));

  Dataset sure = data;
  for (auto& y : sure.labels) y = 1;
  SmoothParamsd confident{vec({0.5, 0.5}), 10.0, -100.0, 0.1};
  CHECK(cross_entropy_loss(confident, sure) <= 8 * 1e-11);
}

TEST_CASE("cross entropy gradient matches finite differences") {
  Rng rng(13);
  Dataset data = toy(10, 12);
  std::vector<double> mult(data.size());
  for (auto& m : mult) m = 0.5 + uniform01(rng);
  for (int trial = 0; trial < 10; ++trial) {
    SmoothParamsd p{test::random_points(2, 1, rng).col(0), 0.1 + 0.3 * uniform01(rng), 1 + 3 * uniform01(rng),
                    0.05 + 0.2 * uniform01(rng)};
    const SmoothGradient g = cross_entropy_gradient(p, data, mult);
    const double h = 1e-6;
    auto fd = [&](auto mutate) {
      SmoothParamsd a = p, b = p;
      mutate(a, h);
      mutate(b, -h);
      return (cross_entropy_loss(a, data, mult) - cross_entropy_loss(b, data, mult)) / (2 * h);
    };
    auto close = [](double x, double y) { return std::abs(x - y) <= 1e-5 * std::max(1.0, std::abs(y)); };
    CHECK(close(g.radius, fd([](SmoothParamsd& q, double e) { q.radius += e; })));
    CHECK(close(g.threshold, fd([](SmoothParamsd& q, double e) { q.threshold += e; })));
    CHECK(close(g.scale, fd([](SmoothParamsd& q, double e) { q.scale += e; })));
    for (int j = 0; j < 2; ++j)
      CHECK(close(g.center(j), fd([j](SmoothParamsd& q, double e) { q.center(j) += e; })));
  }
}

TEST_CASE("smooth training") {
  Dataset one;
  one.push_back(Measured::uniform(vec({0.2, 0.3})), 1);
  SmoothTrainConfig cfg;
  cfg.epochs = 5;
  cfg.restarts = 2;
  CHECK(smooth_train(one, cfg).error == 0.0);

  Dataset data = toy(11, 24);
  cfg.epochs = 30;
  cfg.seed = 4;
  const auto w = uniform_weights(data.size());
  cfg.restarts = 1;
  const SearchResult single = smooth_train(data, cfg, w);
  cfg.restarts = 6;
  const SearchResult many = smooth_train(data, cfg, w);
  CHECK(many.error <= single.error);
  CHECK(weighted_error(many.classifier, data, w) == doctest::Approx(many.error).epsilon(1e-12));
  CHECK(many.error < 0.25);
  CHECK(std::holds_alternative<Balld>(many.classifier.region));
}
