#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "uavrelay/errors.hpp"
#include "uavrelay/moea.hpp"

using namespace uavrelay;

namespace {

EvaluatedSolution member(double a, double b, double c = 0.0) { return {Solution{}, {a, b, c}, true, 0.0, false}; }

std::vector<EvaluatedSolution> line_members(std::initializer_list<double> xs) {
  std::vector<EvaluatedSolution> out;
  for (double x : xs) out.push_back(member(x, 4.0 - x));
  return out;
}

std::vector<double> first_coords(const std::vector<EvaluatedSolution>& ms) {
  std::vector<double> out;
  for (const auto& m : ms) out.push_back(m.objectives[0]);
  std::sort(out.begin(), out.end());
  return out;
}

// Exact 2D hypervolume against (1, 1) by sweeping the sorted staircase.
double exact_hv_2d(std::vector<std::vector<double>> pts) {
  std::erase_if(pts, [](const auto& p) { return p[0] >= 1.0 || p[1] >= 1.0; });
  std::sort(pts.begin(), pts.end());
  double hv = 0.0, y_prev = 1.0;
  for (const auto& p : pts) {
    if (p[1] < y_prev) {
      hv += (1.0 - p[0]) * (y_prev - p[1]);
      y_prev = p[1];
    }
  }
  return hv;
}

// Independent dynamic crowding elimination for 2D fronts without ties.
std::vector<std::array<double, 2>> oracle_dcde(std::vector<std::array<double, 2>> pts, std::size_t cap) {
  while (pts.size() > cap) {
    std::vector<double> d(pts.size(), 0.0);
    for (int o = 0; o < 2; ++o) {
      std::vector<std::size_t> idx(pts.size());
      for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
      std::sort(idx.begin(), idx.end(), [&](auto a, auto b) { return pts[a][o] < pts[b][o]; });
      const double range = pts[idx.back()][o] - pts[idx.front()][o];
      d[idx.front()] = d[idx.back()] = std::numeric_limits<double>::infinity();
      for (std::size_t r = 1; r + 1 < idx.size(); ++r) d[idx[r]] += (pts[idx[r + 1]][o] - pts[idx[r - 1]][o]) / range;
    }
    pts.erase(pts.begin() + (std::min_element(d.begin(), d.end()) - d.begin()));
  }
  return pts;
}

}  // namespace

TEST_CASE("first candidate enters an empty archive") {
  Rng rng(1);
  const auto a = update_archive({}, std::vector<EvaluatedSolution>{member(1, 2)}, 5, rng);
  REQUIRE(a.size() == 1);
  CHECK(a[0].objectives == ObjectiveVector{1, 2, 0});
}

TEST_CASE("a dominating candidate evicts the incumbents it dominates") {
  Rng rng(1);
  auto a = update_archive({}, std::vector<EvaluatedSolution>{member(1, 3), member(3, 1), member(2, 2)}, 5, rng);
  CHECK(a.size() == 3);
  a = update_archive(a, std::vector<EvaluatedSolution>{member(1.5, 1.5)}, 5, rng);
  CHECK(first_coords(a) == std::vector<double>{1.0, 1.5, 3.0});
}

TEST_CASE("duplicate objective vectors collapse to one member") {
  Rng rng(1);
  const auto a = update_archive({member(1, 2)}, std::vector<EvaluatedSolution>{member(1, 2), member(1, 2)}, 5, rng);
  CHECK(a.size() == 1);
}

TEST_CASE("infeasible candidates only survive when nothing is feasible") {
  Rng rng(1);
  EvaluatedSolution bad = member(0, 0);
  bad.feasible = false;
  bad.violation = 2.0;
  auto a = update_archive({}, std::vector<EvaluatedSolution>{bad}, 5, rng);
  CHECK(a.size() == 1);
  a = update_archive(a, std::vector<EvaluatedSolution>{member(9, 9)}, 5, rng);
  REQUIRE(a.size() == 1);
  CHECK(a[0].feasible);
}

TEST_CASE("cap 3 on five collinear points removes the two most crowded in turn") {
  // Distances: x=1 -> 0.75, x=1.5 -> 1.0, x=3 -> 1.25; drop x=1, then x=1.5 -> 1.5,
  // x=3 -> 1.25; drop x=3.
  Rng rng(1);
  const auto a = update_archive({}, line_members({0, 1, 1.5, 3, 4}), 3, rng);
  CHECK(first_coords(a) == std::vector<double>{0.0, 1.5, 4.0});
  // A one-shot ranking would have dropped x=1 and x=1.5 instead.
  const auto s = update_archive({}, line_members({0, 1, 1.5, 3, 4}), 3, rng, PruneMode::Static);
  CHECK(first_coords(s) == std::vector<double>{0.0, 3.0, 4.0});
}

TEST_CASE("dynamic pruning matches an independent elimination loop") {
  std::mt19937_64 gen(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<double> xs(12);
    for (auto& x : xs) x = u(gen);
    std::sort(xs.begin(), xs.end());
    std::vector<std::array<double, 2>> pts;
    std::vector<EvaluatedSolution> ms;
    for (double x : xs) {
      const double y = (1 - x) * (1 - x);
      pts.push_back({x, y});
      ms.push_back(member(x, y));
    }
    Rng rng(1);
    const auto kept = dcde_prune(ms, 5, rng);
    auto expect = oracle_dcde(pts, 5);
    std::vector<double> ex;
    for (auto& p : expect) ex.push_back(p[0]);
    std::sort(ex.begin(), ex.end());
    CHECK(first_coords(kept) == ex);
  }
}

TEST_CASE("pruning to the current size is the identity") {
  Rng rng(1);
  const auto ms = line_members({0, 1, 2});
  CHECK(first_coords(dcde_prune(ms, 3, rng)) == std::vector<double>{0, 1, 2});
}

TEST_CASE("four evenly spaced points lose one interior point") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    Rng rng(seed);
    const auto k = first_coords(dcde_prune(line_members({0, 1, 2, 3}), 3, rng));
    REQUIRE(k.size() == 3);
    CHECK(k.front() == 0.0);
    CHECK(k.back() == 3.0);
  }
}

TEST_CASE("pruning to two keeps both ends of the front") {
  std::mt19937_64 gen(8);
  std::uniform_real_distribution<double> u(0.0, 4.0);
  for (int i = 0; i < 20; ++i) {
    std::vector<EvaluatedSolution> ms;
    for (int j = 0; j < 9; ++j) {
      const double x = u(gen);
      ms.push_back(member(x, 4.0 - x));
    }
    ms.push_back(member(-1, 5));
    ms.push_back(member(5, -1));
    for (auto mode : {PruneMode::Dynamic, PruneMode::Static}) {
      Rng rng(i);
      const auto k = first_coords(dcde_prune(ms, 2, rng, mode));
      CHECK(k == std::vector<double>{-1.0, 5.0});
    }
  }
}

TEST_CASE("pruned archives are subsets that keep per-objective extremes") {
  std::mt19937_64 gen(10);
  std::normal_distribution<double> n(0.0, 1.0);
  for (int i = 0; i < 20; ++i) {
    std::vector<ObjectiveVector> pts;
    while (pts.size() < 25) {
      ObjectiveVector v{std::abs(n(gen)), std::abs(n(gen)), std::abs(n(gen))};
      const double r = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
      for (auto& x : v) x /= r;  // on the unit sphere: mutually non-dominated
      pts.push_back(v);
    }
    Rng rng(i);
    const auto keep = crowding_prune(pts, 6, PruneMode::Dynamic, rng);
    CHECK(keep.size() == 6);
    CHECK(std::is_sorted(keep.begin(), keep.end()));
    for (std::size_t o = 0; o < 3; ++o) {
      const auto lo = std::min_element(pts.begin(), pts.end(), [&](auto& a, auto& b) { return a[o] < b[o]; }) - pts.begin();
      const auto hi = std::max_element(pts.begin(), pts.end(), [&](auto& a, auto& b) { return a[o] < b[o]; }) - pts.begin();
      CHECK(std::count(keep.begin(), keep.end(), static_cast<std::size_t>(lo)) == 1);
      CHECK(std::count(keep.begin(), keep.end(), static_cast<std::size_t>(hi)) == 1);
    }
  }
}

TEST_CASE("crowding distances") {
  const std::vector<ObjectiveVector> two{{0, 1, 0}, {1, 0, 0}};
  for (double d : crowding_distances(two)) CHECK(std::isinf(d));
  const std::vector<ObjectiveVector> three{{0, 2, 0}, {1, 1, 0}, {2, 0, 0}};
  const auto d = crowding_distances(three);
  CHECK(std::isinf(d[0]));
  CHECK(std::isinf(d[2]));
  CHECK(d[1] == doctest::Approx(2.0));
}

TEST_CASE("roulette over a singleton always picks it") {
  Rng rng(3);
  const std::vector<EvaluatedSolution> one{member(1, 1)};
  for (int i = 0; i < 100; ++i) CHECK(roulette_select_target(one, 0.1, rng) == 0);
  CHECK_THROWS_AS(roulette_select_target(std::vector<EvaluatedSolution>{}, 0.1, rng), ValidationError);
}

TEST_CASE("isolated member is chosen with probability 0.8 against n = 3") {
  const auto p = roulette_probabilities(std::vector<int>{0, 3});
  CHECK(p[0] == doctest::Approx(0.8).epsilon(1e-15));
  Rng rng(42);
  int hits = 0;
  const int n = 100000;
  for (int i = 0; i < n; ++i) hits += roulette_select(p, rng) == 0;
  CHECK(std::abs(hits / double(n) - 0.8) < 0.01);
}

TEST_CASE("equally crowded members are selected uniformly") {
  const auto p = roulette_probabilities(std::vector<int>{2, 2, 2, 2, 2});
  Rng rng(7);
  std::vector<int> counts(5, 0);
  const int n = 50000;
  for (int i = 0; i < n; ++i) ++counts[roulette_select(p, rng)];
  double chi2 = 0.0;
  for (int c : counts) chi2 += (c - n / 5.0) * (c - n / 5.0) / (n / 5.0);
  CHECK(chi2 < 13.28);  // chi-square, 4 dof, p = 0.01
}

TEST_CASE("neighbour counts use the normalized radius") {
  const std::vector<ObjectiveVector> pts{{0, 0, 0}, {0.05, 0, 0}, {0.5, 0, 0}, {0.52, 0.02, 0}, {1, 1, 1}};
  CHECK(neighbor_counts(pts, 0.1) == std::vector<int>{1, 1, 1, 1, 0});
}

TEST_CASE("roulette target follows the 1/(1+n) weights") {
  // One member alone, three in a tight cluster.
  const std::vector<EvaluatedSolution> a{member(0, 10), member(10, 0.2), member(10.2, 0.1), member(10.1, 0.15)};
  Rng rng(11);
  int alone = 0;
  const int n = 40000;
  for (int i = 0; i < n; ++i) alone += roulette_select_target(a, 0.1, rng) == 0;
  CHECK(std::abs(alone / double(n) - 0.5) < 0.01);  // weights 1, 1/3, 1/3, 1/3
}

TEST_CASE("hypervolume of a single point") {
  Rng rng(1);
  const std::vector<std::vector<double>> f{{0.25, 0.25}};
  CHECK(std::abs(hypervolume_mc(f, 100000, rng) - 0.5625) < 0.02);
  const std::vector<std::vector<double>> ideal{{0.0, 0.0}};
  CHECK(hypervolume_mc(ideal, 1000, rng) == 1.0);
  CHECK(hypervolume_mc(std::vector<std::vector<double>>{}, 1000, rng) == 0.0);
  const std::vector<ObjectiveVector> ideal3{{0, 0, 0}};
  CHECK(hypervolume_mc(ideal3, 1000, rng) == 1.0);
}

TEST_CASE("dominated points add no hypervolume") {
  const std::vector<std::vector<double>> f{{0.2, 0.6}, {0.5, 0.3}};
  auto g = f;
  g.push_back({0.6, 0.7});
  g.push_back({0.5, 0.3});
  g.push_back({1.2, 0.0});
  Rng a(9), b(9);
  CHECK(hypervolume_mc(f, 20000, a) == hypervolume_mc(g, 20000, b));
}

TEST_CASE("Monte Carlo hypervolume tracks the exact 2D value and grows with the front") {
  std::mt19937_64 gen(4);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 10; ++i) {
    std::vector<std::vector<double>> front;
    double prev_exact = 0.0, prev_mc = 0.0;
    for (int j = 0; j < 6; ++j) {
      const double x = u(gen);
      front.push_back({x, 0.9 * (1 - x) * u(gen) + 0.05});
      const double exact = exact_hv_2d(front);
      Rng rng(100 + i);
      const double mc = hypervolume_mc(front, 100000, rng);
      CHECK(std::abs(mc - exact) < 0.02);
      CHECK(exact >= prev_exact);
      CHECK(mc >= prev_mc);  // same samples: the dominated set only grows
      prev_exact = exact;
      prev_mc = mc;
    }
  }
}

TEST_CASE("normalization maps the set onto the unit cube") {
  const std::vector<ObjectiveVector> pts{{-5, 2, 7}, {-1, 4, 7}, {-3, 3, 7}};
  const auto n = Normalization::of(pts);
  CHECK(n.apply(pts[0]) == ObjectiveVector{0, 0, 0});
  CHECK(n.apply(pts[1]) == ObjectiveVector{1, 1, 0});
  CHECK(n.apply(pts[2])[0] == doctest::Approx(0.5));
  const std::vector<std::vector<ObjectiveVector>> fronts{{{0, 0, 0}}, {{2, 4, 6}}};
  const auto m = Normalization::of_fronts(fronts);
  CHECK(m.hi == ObjectiveVector{2, 4, 6});
}
