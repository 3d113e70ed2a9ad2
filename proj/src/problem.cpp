#include "uavrelay/problem.hpp"

#include <algorithm>
#include <cmath>

#include "uavrelay/errors.hpp"

namespace uavrelay {

namespace {

std::size_t idx(int d, int stride, int j) { return static_cast<std::size_t>(d) * stride + j; }

}  // namespace

// ---- layout --------------------------------------------------------------------------

std::vector<double> SolutionLayout::lower(const Bounds& b) const {
  std::vector<double> lo(continuous_size(), 0.0);
  std::size_t at = static_cast<std::size_t>(t) * (mn + k);
  for (int i = 0; i < t * k; ++i) {
    lo[at++] = b.lo.x;
    lo[at++] = b.lo.y;
    lo[at++] = b.lo.z;
  }
  return lo;
}

std::vector<double> SolutionLayout::upper(const Bounds& b) const {
  std::vector<double> hi(continuous_size(), 1.0);
  std::size_t at = static_cast<std::size_t>(t) * (mn + k);
  for (int i = 0; i < t * k; ++i) {
    hi[at++] = b.hi.x;
    hi[at++] = b.hi.y;
    hi[at++] = b.hi.z;
  }
  return hi;
}

std::vector<double> SolutionLayout::continuous(const Solution& s) const {
  std::vector<double> x;
  x.reserve(continuous_size());
  x.insert(x.end(), s.i_paa.begin(), s.i_paa.end());
  x.insert(x.end(), s.i_uvaa.begin(), s.i_uvaa.end());
  for (const auto& p : s.p_uav) {
    x.push_back(p.x);
    x.push_back(p.y);
    x.push_back(p.z);
  }
  return x;
}

void SolutionLayout::set_continuous(Solution& s, std::span<const double> x) const {
  if (x.size() != continuous_size()) throw ValidationError("continuous block has the wrong length");
  const std::size_t n_paa = static_cast<std::size_t>(t) * mn;
  const std::size_t n_uvaa = static_cast<std::size_t>(t) * k;
  s.i_paa.assign(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(n_paa));
  s.i_uvaa.assign(x.begin() + static_cast<std::ptrdiff_t>(n_paa),
                  x.begin() + static_cast<std::ptrdiff_t>(n_paa + n_uvaa));
  s.p_uav.resize(n_uvaa);
  std::size_t at = n_paa + n_uvaa;
  for (auto& p : s.p_uav) {
    p = {x[at], x[at + 1], x[at + 2]};
    at += 3;
  }
}

std::vector<std::string> SolutionLayout::record_header() const {
  std::vector<std::string> h;
  h.reserve(continuous_size() + 2 * static_cast<std::size_t>(t));
  for (int d = 0; d < t; ++d)
    for (int m = 0; m < mn; ++m) h.push_back("ipaa_d" + std::to_string(d + 1) + "_m" + std::to_string(m + 1));
  for (int d = 0; d < t; ++d)
    for (int u = 0; u < k; ++u) h.push_back("iuvaa_d" + std::to_string(d + 1) + "_k" + std::to_string(u + 1));
  for (int d = 0; d < t; ++d)
    for (int u = 0; u < k; ++u)
      for (const char* axis : {"x", "y", "z"})
        h.push_back("p_d" + std::to_string(d + 1) + "_k" + std::to_string(u + 1) + "_" + axis);
  for (int d = 0; d < t; ++d) h.push_back("srecv_d" + std::to_string(d + 1));
  for (int i = 0; i < t; ++i) h.push_back("order_" + std::to_string(i + 1));
  return h;
}

std::vector<double> SolutionLayout::to_record(const Solution& s) const {
  auto rec = continuous(s);
  for (int r : s.s_recv) rec.push_back(r);
  for (int o : s.order) rec.push_back(o);
  return rec;
}

Solution SolutionLayout::from_record(std::span<const double> rec) const {
  const std::size_t n = continuous_size();
  if (rec.size() != n + 2 * static_cast<std::size_t>(t)) throw ValidationError("record has the wrong length");
  Solution s;
  set_continuous(s, rec.first(n));
  for (int d = 0; d < t; ++d) s.s_recv.push_back(static_cast<int>(std::lround(rec[n + d])));
  for (int i = 0; i < t; ++i) s.order.push_back(static_cast<int>(std::lround(rec[n + t + i])));
  return s;
}

void SolutionLayout::check(const Solution& s) const {
  if (s.i_paa.size() != static_cast<std::size_t>(t) * mn) throw ValidationError("i_paa must be MN x T");
  if (s.i_uvaa.size() != static_cast<std::size_t>(t) * k) throw ValidationError("i_uvaa must be K x T");
  if (s.p_uav.size() != static_cast<std::size_t>(t) * k) throw ValidationError("p_uav must be K x T");
  if (s.s_recv.size() != static_cast<std::size_t>(t)) throw ValidationError("s_recv must have T entries");
  for (int r : s.s_recv)
    if (r < 1 || r > k) throw ValidationError("receiver index outside [1, K] (C2)");
  if (s.order.size() != static_cast<std::size_t>(t) || !is_permutation_of_1_to_n(s.order))
    throw ValidationError("order is not a permutation of 1..T (C7/C8)");
}

bool is_permutation_of_1_to_n(std::span<const int> v) {
  std::vector<char> seen(v.size() + 1, 0);
  for (int x : v) {
    if (x < 1 || static_cast<std::size_t>(x) > v.size() || seen[static_cast<std::size_t>(x)]) return false;
    seen[static_cast<std::size_t>(x)] = 1;
  }
  return true;
}

int repair_receiver(double raw, int k) {
  if (!std::isfinite(raw)) return 1;
  return static_cast<int>(std::clamp<double>(std::round(raw), 1.0, static_cast<double>(k)));
}

// ---- dominance -----------------------------------------------------------------------

bool pareto_dominates(const ObjectiveVector& a, const ObjectiveVector& b) {
  bool strictly = false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] > b[i]) return false;
    if (a[i] < b[i]) strictly = true;
  }
  return strictly;
}

bool dominates(const EvaluatedSolution& a, const EvaluatedSolution& b) {
  if (a.feasible != b.feasible) return a.feasible;
  if (!a.feasible) return a.violation < b.violation;
  return pareto_dominates(a.objectives, b.objectives);
}

// ---- problem -------------------------------------------------------------------------

Problem::Problem(Scenario scenario, GainQuadrature quad)
    : Problem(scenario, quad, SpeedPolicy::max_range(scenario.aero)) {}

Problem::Problem(Scenario scenario, GainQuadrature quad, SpeedPolicy policy)
    : budget_(std::move(scenario), std::move(quad)), layout_(SolutionLayout::of(budget_.scenario())), policy_(policy) {}

std::vector<RatePair> Problem::service_rates(const Solution& sol) const {
  layout_.check(sol);
  const auto& sc = scenario();
  std::vector<RatePair> out;
  out.reserve(static_cast<std::size_t>(layout_.t));
  for (int d = 0; d < layout_.t; ++d) {
    ServiceContext ctx;
    ctx.receiver = sol.s_recv[static_cast<std::size_t>(d)] - 1;
    ctx.uav_positions = std::span<const Position3D>(sol.p_uav).subspan(idx(d, layout_.k, 0), layout_.k);
    ctx.paa_weights = std::span<const double>(sol.i_paa).subspan(idx(d, layout_.mn, 0), layout_.mn);
    ctx.uvaa_weights = std::span<const double>(sol.i_uvaa).subspan(idx(d, layout_.k, 0), layout_.k);
    ctx.device = sc.devices[static_cast<std::size_t>(d)];
    out.push_back(budget_.service(ctx));
  }
  return out;
}

double Problem::violation(const Solution& sol) const {
  const double d_min = scenario().d_min_uav;
  double v = 0.0;
  for (int d = 0; d < layout_.t; ++d)
    for (int a = 0; a < layout_.k; ++a)
      for (int b = a + 1; b < layout_.k; ++b) {
        const double gap = distance(sol.p_uav[idx(d, layout_.k, a)], sol.p_uav[idx(d, layout_.k, b)]);
        if (gap < d_min) v += d_min - gap;
      }
  return v;
}

EvaluatedSolution Problem::evaluate(const Solution& sol) const {
  EvaluatedSolution ev;
  ev.solution = sol;
  const auto rates = service_rates(sol);
  double f1 = 0.0;
  double f2 = 0.0;
  for (const auto& r : rates) {
    f1 += r.r_legit;
    f2 += r.r_eaves;
    ev.degenerate = ev.degenerate || r.degenerate;
  }
  std::vector<int> order0(sol.order.size());
  for (std::size_t i = 0; i < order0.size(); ++i) order0[i] = sol.order[i] - 1;
  const double f3 = swarm_energy(sol.p_uav, scenario().uav_init, order0, scenario().aero, policy_);
  ev.objectives = {-f1, f2, f3};
  ev.violation = violation(sol);
  ev.feasible = ev.violation == 0.0;
  return ev;
}

Solution Problem::clamp_repair(Solution sol) const {
  const auto clip01 = [](double w) { return std::isfinite(w) ? std::clamp(w, 0.0, 1.0) : 0.0; };
  for (auto& w : sol.i_paa) w = clip01(w);
  for (auto& w : sol.i_uvaa) w = clip01(w);
  const auto& b = scenario().bounds;
  for (auto& p : sol.p_uav) {
    if (!is_finite(p)) p = b.center();
    p = b.clamp(p);
  }
  for (auto& r : sol.s_recv) r = std::clamp(r, 1, layout_.k);
  return sol;
}

Solution Problem::hover_solution() const {
  Solution s;
  s.i_paa.assign(static_cast<std::size_t>(layout_.t) * layout_.mn, 1.0);
  s.i_uvaa.assign(static_cast<std::size_t>(layout_.t) * layout_.k, 1.0);
  for (int d = 0; d < layout_.t; ++d) s.p_uav.insert(s.p_uav.end(), scenario().uav_init.begin(), scenario().uav_init.end());
  s.s_recv.assign(static_cast<std::size_t>(layout_.t), 1);
  for (int i = 0; i < layout_.t; ++i) s.order.push_back(i + 1);
  return s;
}

}  // namespace uavrelay
