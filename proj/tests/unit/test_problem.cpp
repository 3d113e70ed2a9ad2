#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "uavrelay/errors.hpp"
#include "uavrelay/problem.hpp"

using namespace uavrelay;

namespace {

const Problem& default_problem() {
  static const Problem p(default_scenario(), GainQuadrature::with_resolution_deg(5.0));
  return p;
}

// Seeded solution with every block away from its bounds.
Solution golden_solution(const Problem& p) {
  const auto& s = p.scenario();
  Solution sol = p.hover_solution();
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> w(0.05, 1.0);
  for (auto& x : sol.i_paa) x = w(rng);
  for (auto& x : sol.i_uvaa) x = w(rng);
  const int k = s.uav_count();
  for (int d = 0; d < s.device_count(); ++d)
    for (int u = 0; u < k; ++u) sol.p_uav[static_cast<std::size_t>(d * k + u)] += Vec3{2.0 * d, -1.0 * d, 0.5 * (d % 3)};
  sol.s_recv = {3, 1, 16, 8, 8, 2, 11, 5};
  sol.order = {4, 2, 7, 1, 8, 3, 6, 5};
  return p.clamp_repair(sol);
}

EvaluatedSolution feasible(ObjectiveVector o) { return {Solution{}, o, true, 0.0, false}; }
EvaluatedSolution infeasible(ObjectiveVector o, double v) { return {Solution{}, o, false, v, false}; }

}  // namespace

TEST_CASE("hover solution is feasible and costs no flight energy") {
  const auto ev = default_problem().evaluate(default_problem().hover_solution());
  CHECK(ev.feasible);
  CHECK(ev.violation == 0.0);
  CHECK(ev.f3() == 0.0);
  CHECK(ev.f1() > 0.0);
  CHECK(ev.f2() > 0.0);
}

TEST_CASE("a farther column costs more energy") {
  const auto& p = default_problem();
  auto near = p.hover_solution();
  auto far = near;
  for (int u = 0; u < 16; ++u) {
    near.p_uav[static_cast<std::size_t>(2 * 16 + u)].z += 5.0;
    far.p_uav[static_cast<std::size_t>(2 * 16 + u)].z += 15.0;
  }
  const auto a = p.evaluate(near);
  const auto b = p.evaluate(far);
  CHECK(a.feasible);
  CHECK(b.feasible);
  CHECK(b.f3() > a.f3());
  CHECK(a.f1() != b.f1());
}

TEST_CASE("coincident UAVs violate the collision distance") {
  const auto& p = default_problem();
  auto sol = p.hover_solution();
  sol.p_uav[1] = sol.p_uav[0];
  const auto ev = p.evaluate(sol);
  CHECK_FALSE(ev.feasible);
  CHECK(ev.violation == doctest::Approx(5.0));
  CHECK(p.violation(sol) == ev.violation);
}

TEST_CASE("evaluation equals the rate and energy modules chained by hand") {
  const auto& p = default_problem();
  const auto sol = golden_solution(p);
  const auto& s = p.scenario();
  const LinkBudget lb(s, GainQuadrature::with_resolution_deg(5.0));
  double f1 = 0.0, f2 = 0.0;
  for (int d = 0; d < 8; ++d) {
    const auto du = static_cast<std::size_t>(d);
    ServiceContext ctx;
    ctx.receiver = sol.s_recv[du] - 1;
    ctx.uav_positions = std::span<const Position3D>(sol.p_uav).subspan(du * 16, 16);
    ctx.paa_weights = std::span<const double>(sol.i_paa).subspan(du * 36, 36);
    ctx.uvaa_weights = std::span<const double>(sol.i_uvaa).subspan(du * 16, 16);
    ctx.device = s.devices[du];
    const auto r = lb.service(ctx);
    f1 += r.r_legit;
    f2 += r.r_eaves;
  }
  std::vector<int> order0;
  for (int o : sol.order) order0.push_back(o - 1);
  const double f3 = swarm_energy(sol.p_uav, s.uav_init, order0, s.aero, SpeedPolicy::max_range(s.aero));

  const auto ev = p.evaluate(sol);
  CHECK(ev.objectives[0] == -f1);
  CHECK(ev.objectives[1] == f2);
  CHECK(ev.objectives[2] == f3);
  CHECK(ev.feasible);

  // Frozen regression triple for the seeded default scenario.
  CHECK(f1 == doctest::Approx(188924496.68293476).epsilon(1e-9));
  CHECK(f2 == doctest::Approx(85761653.140885174).epsilon(1e-9));
  CHECK(f3 == doctest::Approx(4913.9113739761724).epsilon(1e-9));
}

TEST_CASE("evaluation is pure") {
  const auto& p = default_problem();
  const auto sol = golden_solution(p);
  const auto a = p.evaluate(sol);
  const auto b = p.evaluate(sol);
  CHECK(a.objectives == b.objectives);
  CHECK(a.violation == b.violation);
}

TEST_CASE("reordering services changes only the energy") {
  const auto& p = default_problem();
  auto sol = golden_solution(p);
  const auto a = p.evaluate(sol);
  std::mt19937_64 rng(1);
  for (int i = 0; i < 5; ++i) {
    std::shuffle(sol.order.begin(), sol.order.end(), rng);
    const auto b = p.evaluate(sol);
    CHECK(b.objectives[0] == a.objectives[0]);
    CHECK(b.objectives[1] == a.objectives[1]);
  }
}

TEST_CASE("all-zero weight column still evaluates, flagged degenerate") {
  const auto& p = default_problem();
  auto sol = p.hover_solution();
  for (int m = 0; m < 36; ++m) sol.i_paa[static_cast<std::size_t>(3 * 36 + m)] = 0.0;
  const auto ev = p.evaluate(sol);
  CHECK(ev.degenerate);
  const auto rates = p.service_rates(sol);
  CHECK(rates[3].r_legit == 0.0);
  CHECK(rates[2].r_legit > 0.0);
}

TEST_CASE("clamp repair") {
  const auto& p = default_problem();
  auto sol = p.hover_solution();
  sol.i_paa[0] = 1.7;
  sol.i_uvaa[5] = -0.3;
  sol.p_uav[2].z = 10.0;
  sol.p_uav[3].x = 1e6;
  sol.s_recv[0] = 0;
  sol.s_recv[1] = 99;
  const auto r = p.clamp_repair(sol);
  CHECK(r.i_paa[0] == 1.0);
  CHECK(r.i_uvaa[5] == 0.0);
  CHECK(r.p_uav[2].z == p.scenario().bounds.lo.z);
  CHECK(r.p_uav[3].x == p.scenario().bounds.hi.x);
  CHECK(r.s_recv[0] == 1);
  CHECK(r.s_recv[1] == 16);
  CHECK(r.order == sol.order);
  CHECK(repair_receiver(0.4, 16) == 1);
  CHECK(repair_receiver(2.5, 16) == 3);
  CHECK(repair_receiver(16.4, 16) == 16);
  CHECK(repair_receiver(NAN, 16) == 1);
}

TEST_CASE("constrained dominance") {
  CHECK(dominates(feasible({1, 1, 1}), feasible({2, 2, 2})));
  CHECK_FALSE(dominates(feasible({1, 2, 1}), feasible({2, 1, 1})));
  CHECK_FALSE(dominates(feasible({2, 1, 1}), feasible({1, 2, 1})));
  CHECK(dominates(feasible({9, 9, 9}), infeasible({0, 0, 0}, 1.0)));
  CHECK_FALSE(dominates(infeasible({0, 0, 0}, 1.0), feasible({9, 9, 9})));
  CHECK(dominates(infeasible({5, 5, 5}, 0.5), infeasible({0, 0, 0}, 2.0)));
  CHECK_FALSE(dominates(feasible({1, 1, 1}), feasible({1, 1, 1})));
}

TEST_CASE("dominance is irreflexive and transitive") {
  std::mt19937_64 rng(77);
  std::uniform_int_distribution<int> v(0, 3);
  std::bernoulli_distribution feas(0.7);
  const auto draw = [&] {
    EvaluatedSolution e;
    e.objectives = {double(v(rng)), double(v(rng)), double(v(rng))};
    e.feasible = feas(rng);
    e.violation = e.feasible ? 0.0 : 1.0 + v(rng);
    return e;
  };
  for (int i = 0; i < 3000; ++i) {
    const auto a = draw(), b = draw(), c = draw();
    CHECK_FALSE(dominates(a, a));
    if (dominates(a, b) && dominates(b, c)) CHECK(dominates(a, c));
    CHECK_FALSE((dominates(a, b) && dominates(b, a)));
  }
}

TEST_CASE("flat records round-trip") {
  const auto& p = default_problem();
  const auto sol = golden_solution(p);
  const auto& lay = p.layout();
  const auto rec = lay.to_record(sol);
  CHECK(rec.size() == lay.record_header().size());
  CHECK(rec.size() == 8 * (36 + 16 + 48) + 16);
  CHECK(lay.from_record(rec) == sol);
  CHECK(lay.record_header().front() == "ipaa_d1_m1");
  CHECK(lay.record_header().back() == "order_8");
  CHECK_THROWS_AS(lay.from_record(std::span<const double>(rec).first(rec.size() - 1)), ValidationError);
}

TEST_CASE("continuous view round-trips and respects bounds") {
  const auto& p = default_problem();
  const auto sol = golden_solution(p);
  const auto& lay = p.layout();
  const auto x = lay.continuous(sol);
  CHECK(x.size() == lay.continuous_size());
  Solution back = sol;
  lay.set_continuous(back, x);
  CHECK(back == sol);
  const auto lo = lay.lower(p.scenario().bounds);
  const auto hi = lay.upper(p.scenario().bounds);
  for (std::size_t i = 0; i < x.size(); ++i) {
    CHECK(x[i] >= lo[i]);
    CHECK(x[i] <= hi[i]);
  }
}

TEST_CASE("layout checks catch malformed solutions") {
  const auto& p = default_problem();
  auto sol = p.hover_solution();
  sol.order[0] = 2;
  CHECK_THROWS_AS(p.evaluate(sol), ValidationError);
  sol = p.hover_solution();
  sol.s_recv[0] = 17;
  CHECK_THROWS_AS(p.evaluate(sol), ValidationError);
  sol = p.hover_solution();
  sol.i_paa.pop_back();
  CHECK_THROWS_AS(p.evaluate(sol), ValidationError);
  CHECK(is_permutation_of_1_to_n(std::vector<int>{3, 1, 2}));
  CHECK_FALSE(is_permutation_of_1_to_n(std::vector<int>{0, 1, 2}));
  CHECK_FALSE(is_permutation_of_1_to_n(std::vector<int>{1, 1, 2}));
}
