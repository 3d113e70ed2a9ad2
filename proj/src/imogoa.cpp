#include "uavrelay/imogoa.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <thread>

#include "uavrelay/errors.hpp"

namespace uavrelay {

// ---- config --------------------------------------------------------------------------

OptimizerConfig OptimizerConfig::vanilla() const {
  OptimizerConfig v = *this;
  v.toggles = {false, false, false, false, false};
  return v;
}

void OptimizerConfig::validate() const {
  if (pop_size < 4) throw ValidationError("optimizer config invalid: pop_size >= 4");
  if (iter_max < 0) throw ValidationError("optimizer config invalid: iter_max >= 0");
  if (!(c_min > 0.0 && c_min < c_max)) throw ValidationError("optimizer config invalid: 0 < c_min < c_max");
  if (!(levy_beta > 0.0 && levy_beta <= 2.0)) throw ValidationError("optimizer config invalid: levy_beta in (0, 2]");
  if (alpha1 < 0.0 || alpha2 < 0.0) throw ValidationError("optimizer config invalid: alpha1, alpha2 >= 0");
  if (!(goa_l > 0.0)) throw ValidationError("optimizer config invalid: goa_l > 0");
  if (!(r_nbh > 0.0)) throw ValidationError("optimizer config invalid: r_nbh > 0");
  if (archive_cap < 0) throw ValidationError("optimizer config invalid: archive_cap >= 0");
}

OptimizerConfig optimizer_config_from_json(const nlohmann::json& j) {
  OptimizerConfig c;
  try {
    c.pop_size = j.value("pop_size", c.pop_size);
    c.iter_max = j.value("iter_max", c.iter_max);
    c.c_max = j.value("c_max", c.c_max);
    c.c_min = j.value("c_min", c.c_min);
    c.levy_beta = j.value("levy_beta", c.levy_beta);
    c.alpha1 = j.value("alpha1", c.alpha1);
    c.alpha2 = j.value("alpha2", c.alpha2);
    if (j.contains("step_reference")) {
      const auto ref = j.at("step_reference").get<std::string>();
      if (ref == "native") c.step_reference = StepReference::Native;
      else if (ref == "range") c.step_reference = StepReference::Range;
      else if (ref == "difference") c.step_reference = StepReference::Difference;
      else throw ValidationError("optimizer config invalid: step_reference must be native, range or difference");
    }
    c.goa_f = j.value("goa_f", c.goa_f);
    c.goa_l = j.value("goa_l", c.goa_l);
    c.chaos_a = j.value("chaos_a", c.chaos_a);
    c.chaos_b = j.value("chaos_b", c.chaos_b);
    c.r_nbh = j.value("r_nbh", c.r_nbh);
    c.archive_cap = j.value("archive_cap", c.archive_cap);
    c.hv_samples = j.value("hv_samples", c.hv_samples);
    c.threads = j.value("threads", c.threads);
    c.seed = j.value("seed", c.seed);
    if (j.contains("toggles")) {
      const auto& t = j.at("toggles");
      c.toggles.h3c_init = t.value("h3c_init", c.toggles.h3c_init);
      c.toggles.nonlinear_c = t.value("nonlinear_c", c.toggles.nonlinear_c);
      c.toggles.levy = t.value("levy", c.toggles.levy);
      c.toggles.archive_mutation = t.value("archive_mutation", c.toggles.archive_mutation);
      c.toggles.dcde = t.value("dcde", c.toggles.dcde);
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("optimizer config: ") + e.what());
  }
  c.validate();
  return c;
}

nlohmann::json optimizer_config_to_json(const OptimizerConfig& c) {
  return {{"pop_size", c.pop_size},
          {"iter_max", c.iter_max},
          {"c_max", c.c_max},
          {"c_min", c.c_min},
          {"levy_beta", c.levy_beta},
          {"alpha1", c.alpha1},
          {"alpha2", c.alpha2},
          {"step_reference", c.step_reference == StepReference::Native  ? "native"
                             : c.step_reference == StepReference::Range ? "range"
                                                                         : "difference"},
          {"goa_f", c.goa_f},
          {"goa_l", c.goa_l},
          {"chaos_a", c.chaos_a},
          {"chaos_b", c.chaos_b},
          {"r_nbh", c.r_nbh},
          {"archive_cap", c.archive_cap},
          {"hv_samples", c.hv_samples},
          {"threads", c.threads},
          {"seed", c.seed},
          {"toggles",
           {{"h3c_init", c.toggles.h3c_init},
            {"nonlinear_c", c.toggles.nonlinear_c},
            {"levy", c.toggles.levy},
            {"archive_mutation", c.toggles.archive_mutation},
            {"dcde", c.toggles.dcde}}}};
}

// ---- initialization ------------------------------------------------------------------

double halton(std::uint64_t index, int base) {
  double out = 0.0;
  double scale = 1.0 / base;
  while (index > 0) {
    out += static_cast<double>(index % static_cast<std::uint64_t>(base)) * scale;
    index /= static_cast<std::uint64_t>(base);
    scale /= base;
  }
  return out;
}

double circle_map(double c, double a, double b) {
  const double next = c + b - (a / (2.0 * kPi)) * std::sin(2.0 * kPi * c);
  const double r = next - std::floor(next);
  return r >= 1.0 ? 0.0 : r;
}

std::vector<std::vector<double>> h3c_unit_points(int n, std::size_t dims, const OptimizerConfig& cfg, Rng& rng) {
  static constexpr int kPrimes[] = {2, 3, 5, 7};
  std::uniform_int_distribution<int> pick(0, 3);
  std::uniform_int_distribution<std::uint64_t> start(0, (1u << 20) - 1);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  // Dimensions sharing a base would otherwise be identical, so each one also starts the
  // sequence at its own random index.
  std::vector<int> bases(dims);
  std::vector<std::uint64_t> offsets(dims);
  std::vector<double> chaos(dims);
  for (std::size_t d = 0; d < dims; ++d) {
    bases[d] = kPrimes[pick(rng)];
    offsets[d] = start(rng);
    chaos[d] = u(rng);
  }

  const int n_halton = (n + 1) / 2;
  std::vector<std::vector<double>> pts(static_cast<std::size_t>(n), std::vector<double>(dims));
  for (int i = 0; i < n; ++i) {
    auto& p = pts[static_cast<std::size_t>(i)];
    if (i < n_halton) {
      for (std::size_t d = 0; d < dims; ++d) p[d] = halton(offsets[d] + static_cast<std::uint64_t>(i) + 1, bases[d]);
    } else {
      // Each dimension runs its own orbit across the chaotic half of the population.
      for (std::size_t d = 0; d < dims; ++d) {
        chaos[d] = circle_map(chaos[d], cfg.chaos_a, cfg.chaos_b);
        p[d] = chaos[d];
      }
    }
  }
  return pts;
}

std::vector<std::vector<double>> random_unit_points(int n, std::size_t dims, Rng& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<std::vector<double>> pts(static_cast<std::size_t>(n), std::vector<double>(dims));
  for (auto& p : pts)
    for (auto& x : p) x = u(rng);
  return pts;
}

Encoding::Encoding(const Problem& problem)
    : layout_(problem.layout()),
      lo_(layout_.lower(problem.scenario().bounds)),
      hi_(layout_.upper(problem.scenario().bounds)) {}

std::vector<double> Encoding::step_alpha(double alpha, StepReference ref) const {
  if (ref == StepReference::Difference) throw ValidationError("difference steps depend on the member");
  std::vector<double> out(lo_.size(), alpha);
  if (ref == StepReference::Native)
    for (std::size_t d = 0; d < out.size(); ++d) out[d] = alpha / (hi_[d] - lo_[d]);
  return out;
}

std::vector<double> Encoding::to_unit(const Solution& s) const {
  auto x = layout_.continuous(s);
  for (std::size_t d = 0; d < x.size(); ++d) x[d] = (x[d] - lo_[d]) / (hi_[d] - lo_[d]);
  return x;
}

Solution Encoding::from_unit(std::span<const double> unit_cont, std::vector<int> s_recv, std::vector<int> order) const {
  std::vector<double> x(unit_cont.size());
  for (std::size_t d = 0; d < x.size(); ++d) {
    const double u = std::isfinite(unit_cont[d]) ? std::clamp(unit_cont[d], 0.0, 1.0) : 0.5;
    x[d] = std::clamp(lo_[d] + u * (hi_[d] - lo_[d]), lo_[d], hi_[d]);
  }
  Solution s;
  layout_.set_continuous(s, x);
  s.s_recv = std::move(s_recv);
  s.order = std::move(order);
  return s;
}

Solution Encoding::decode_genome(std::span<const double> genome) const {
  if (genome.size() != genome_size()) throw ValidationError("genome has the wrong length");
  const std::size_t n = continuous_size();
  const auto t = static_cast<std::size_t>(layout_.t);
  std::vector<int> recv(t);
  for (std::size_t d = 0; d < t; ++d) recv[d] = repair_receiver(1.0 + genome[n + d] * (layout_.k - 1), layout_.k);
  return from_unit(genome.first(n), std::move(recv), argsort_permutation(genome.subspan(n + t, t)));
}

std::vector<int> argsort_permutation(std::span<const double> keys) {
  std::vector<int> idx(keys.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) { return keys[static_cast<std::size_t>(a)] < keys[static_cast<std::size_t>(b)]; });
  for (auto& i : idx) ++i;
  return idx;
}

namespace {

std::vector<Solution> decode_all(const std::vector<std::vector<double>>& pts, const Problem& problem) {
  const Encoding enc(problem);
  std::vector<Solution> out;
  out.reserve(pts.size());
  for (const auto& p : pts) out.push_back(enc.decode_genome(p));
  return out;
}

}  // namespace

std::vector<Solution> h3c_initialize(const OptimizerConfig& cfg, const Problem& problem, Rng& rng) {
  const Encoding enc(problem);
  return decode_all(h3c_unit_points(cfg.pop_size, enc.genome_size(), cfg, rng), problem);
}

std::vector<Solution> random_initialize(const OptimizerConfig& cfg, const Problem& problem, Rng& rng) {
  const Encoding enc(problem);
  return decode_all(random_unit_points(cfg.pop_size, enc.genome_size(), rng), problem);
}

// ---- continuous update ---------------------------------------------------------------

double decreasing_coefficient(int iter, const OptimizerConfig& cfg) {
  return decreasing_coefficient(iter, cfg, cfg.toggles.nonlinear_c);
}

double decreasing_coefficient(int iter, const OptimizerConfig& cfg, bool nonlinear) {
  if (cfg.iter_max <= 0) return cfg.c_max;
  const double frac = std::clamp(static_cast<double>(iter) / cfg.iter_max, 0.0, 1.0);
  const double c = nonlinear ? cfg.c_max - (cfg.c_max - cfg.c_min) * std::sin(0.5 * kPi * std::sqrt(frac))
                             : cfg.c_max - iter * (cfg.c_max - cfg.c_min) / cfg.iter_max;
  return std::clamp(c, cfg.c_min, cfg.c_max);
}

double goa_s(double r, double f, double l) { return f * std::exp(-r / l) - std::exp(-r); }

std::vector<double> goa_step(std::span<const std::vector<double>> pop, std::size_t i, std::span<const double> target,
                             double c, const OptimizerConfig& cfg) {
  const std::size_t dims = target.size();
  const auto& xi = pop[i];
  std::vector<double> social(dims, 0.0);
  for (std::size_t j = 0; j < pop.size(); ++j) {
    if (j == i) continue;
    const auto& xj = pop[j];
    double d2 = 0.0;
    for (std::size_t d = 0; d < dims; ++d) d2 += (xj[d] - xi[d]) * (xj[d] - xi[d]);
    if (d2 == 0.0) continue;
    const double dij = std::sqrt(d2);
    for (std::size_t d = 0; d < dims; ++d) {
      const double gap = xj[d] - xi[d];
      const double r = 1.0 + 3.0 * std::min(std::abs(gap), 1.0);
      social[d] += c * 0.5 * goa_s(r, cfg.goa_f, cfg.goa_l) * gap / dij;
    }
  }
  std::vector<double> out(dims);
  for (std::size_t d = 0; d < dims; ++d) out[d] = c * social[d] + target[d];
  return out;
}

double levy_sigma(double beta) {
  const double num = std::tgamma(1.0 + beta) * std::sin(kPi * beta / 2.0);
  const double den = std::tgamma((1.0 + beta) / 2.0) * beta * std::pow(2.0, (beta - 1.0) / 2.0);
  return std::pow(num / den, 1.0 / beta);
}

double levy_draw(double beta, double sigma, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  const double mu = normal(rng) * sigma;
  const double w = normal(rng);
  return mu / std::pow(std::abs(w), 1.0 / beta);
}

void levy_perturb(std::span<double> x, double alpha, double beta, Rng& rng) {
  const double sigma = levy_sigma(beta);
  for (auto& v : x) {
    const double step = levy_draw(beta, sigma, rng);
    v += alpha * step;
  }
}

void levy_perturb(std::span<double> x, std::span<const double> alpha, double beta, Rng& rng) {
  const double sigma = levy_sigma(beta);
  for (std::size_t d = 0; d < x.size(); ++d) {
    const double step = levy_draw(beta, sigma, rng);
    x[d] += alpha[d] * step;
  }
}

void cauchy_mutate(std::span<double> x, double alpha, Rng& rng) {
  std::cauchy_distribution<double> cauchy(0.0, 1.0);
  for (auto& v : x) {
    const double step = cauchy(rng);
    v += alpha * step;
  }
}

void cauchy_mutate(std::span<double> x, std::span<const double> alpha, Rng& rng) {
  std::cauchy_distribution<double> cauchy(0.0, 1.0);
  for (std::size_t d = 0; d < x.size(); ++d) {
    const double step = cauchy(rng);
    x[d] += alpha[d] * step;
  }
}

// ---- discrete update -----------------------------------------------------------------

std::pair<std::size_t, std::size_t> crossover_points(std::size_t n, Rng& rng) {
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  std::size_t a = pick(rng);
  std::size_t b = pick(rng);
  if (a > b) std::swap(a, b);
  return {a, b};
}

IntPair tpc(std::span<const int> a, std::span<const int> b, std::size_t lo, std::size_t hi) {
  IntPair out{{a.begin(), a.end()}, {b.begin(), b.end()}};
  for (std::size_t p = lo; p <= hi && p < a.size(); ++p) std::swap(out.first[p], out.second[p]);
  return out;
}

IntPair tpc(std::span<const int> a, std::span<const int> b, Rng& rng) {
  if (a.empty()) return {};
  const auto [lo, hi] = crossover_points(a.size(), rng);
  return tpc(a, b, lo, hi);
}

namespace {

// Child of `base` carrying `donor`'s segment [lo, hi].
std::vector<int> pmx_child(std::span<const int> base, std::span<const int> donor, std::size_t lo, std::size_t hi) {
  std::vector<int> child(base.begin(), base.end());
  for (std::size_t p = lo; p <= hi; ++p) child[p] = donor[p];
  const auto in_segment = [&](int v) -> std::ptrdiff_t {
    for (std::size_t p = lo; p <= hi; ++p)
      if (donor[p] == v) return static_cast<std::ptrdiff_t>(p);
    return -1;
  };
  for (std::size_t p = 0; p < base.size(); ++p) {
    if (p >= lo && p <= hi) continue;
    int v = base[p];
    for (std::ptrdiff_t at = in_segment(v); at >= 0; at = in_segment(v)) v = base[static_cast<std::size_t>(at)];
    child[p] = v;
  }
  return child;
}

}  // namespace

IntPair pmx(std::span<const int> a, std::span<const int> b, std::size_t lo, std::size_t hi) {
  if (a.size() != b.size()) throw ValidationError("pmx parents differ in length");
  if (a.empty()) return {};
  hi = std::min(hi, a.size() - 1);
  return {pmx_child(a, b, lo, hi), pmx_child(b, a, lo, hi)};
}

IntPair pmx(std::span<const int> a, std::span<const int> b, Rng& rng) {
  if (a.empty()) return {};
  const auto [lo, hi] = crossover_points(a.size(), rng);
  return pmx(a, b, lo, hi);
}

int select_offspring(const EvaluatedSolution& o1, const EvaluatedSolution& o2, Rng& rng) {
  if (dominates(o1, o2)) return 0;
  if (dominates(o2, o1)) return 1;
  std::uniform_real_distribution<double> u(0.0, 1.0);
  return u(rng) < 0.5 ? 0 : 1;
}

void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& fn) {
  std::size_t workers = threads > 0 ? static_cast<std::size_t>(threads) : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min(workers, n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  // Static striding: slot i is always computed by worker i % workers.
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(workers);
  for (std::size_t w = 0; w < workers; ++w)
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = w; i < n; i += workers) fn(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

// ---- update operators ----------------------------------------------------------------

namespace {

std::vector<double> guided_alpha(const Encoding& enc, double alpha, StepReference ref, std::span<const double> x,
                                 std::span<const double> guide) {
  if (ref != StepReference::Difference) return enc.step_alpha(alpha, ref);
  std::vector<double> out(x.size());
  for (std::size_t d = 0; d < x.size(); ++d) out[d] = alpha * (x[d] - guide[d]);
  return out;
}

OffspringPair merge(const Encoding& enc, std::span<const double> unit_cont, const Solution& cur,
                    const Solution& partner, Rng& rng) {
  const auto s = tpc(cur.s_recv, partner.s_recv, rng);
  const auto o = pmx(cur.order, partner.order, rng);
  return {enc.from_unit(unit_cont, s.first, o.first), enc.from_unit(unit_cont, s.second, o.second)};
}

}  // namespace

OffspringPair propose_update(const Encoding& enc, std::span<const std::vector<double>> units, std::size_t i,
                             const Solution& target, std::span<const double> target_unit, const Solution& current,
                             double c, const OptimizerConfig& cfg, Rng& rng) {
  auto x = goa_step(units, i, target_unit, c, cfg);
  if (cfg.toggles.levy)
    levy_perturb(x, guided_alpha(enc, cfg.alpha1, cfg.step_reference, units[i], target_unit), cfg.levy_beta, rng);
  return merge(enc, x, current, target, rng);
}

OffspringPair propose_mutation(const Encoding& enc, const Solution& member, const Solution& partner,
                               const OptimizerConfig& cfg, Rng& rng) {
  auto x = enc.to_unit(member);
  const auto guide = enc.to_unit(partner);
  cauchy_mutate(x, guided_alpha(enc, cfg.alpha2, cfg.step_reference, x, guide), rng);
  return merge(enc, x, member, partner, rng);
}

std::vector<EvaluatedSolution> evaluate_all(const Problem& problem, std::span<const Solution> sols, int threads) {
  std::vector<EvaluatedSolution> out(sols.size());
  parallel_for(sols.size(), threads, [&](std::size_t i) { out[i] = problem.evaluate(sols[i]); });
  return out;
}

std::vector<EvaluatedSolution> select_pairs(const Problem& problem, std::span<const OffspringPair> pairs, int threads,
                                            Rng& rng) {
  std::vector<Solution> flat;
  flat.reserve(2 * pairs.size());
  for (const auto& k : pairs) {
    flat.push_back(k.o1);
    flat.push_back(k.o2);
  }
  auto ev = evaluate_all(problem, flat, threads);
  std::vector<EvaluatedSolution> out;
  out.reserve(pairs.size());
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const int w = select_offspring(ev[2 * i], ev[2 * i + 1], rng);
    out.push_back(std::move(ev[2 * i + static_cast<std::size_t>(w)]));
  }
  return out;
}

EvaluatedSolution solution_update(const Problem& problem, std::span<const EvaluatedSolution> pop, std::size_t i,
                                  const Solution& target, double c, const OptimizerConfig& cfg, Rng& rng) {
  const Encoding enc(problem);
  std::vector<std::vector<double>> units;
  units.reserve(pop.size());
  for (const auto& g : pop) units.push_back(enc.to_unit(g.solution));
  const auto pair = propose_update(enc, units, i, target, enc.to_unit(target), pop[i].solution, c, cfg, rng);
  return select_pairs(problem, std::span<const OffspringPair>(&pair, 1), 1, rng).front();
}

std::vector<EvaluatedSolution> archive_mutation(const Problem& problem, std::span<const EvaluatedSolution> archive,
                                                const OptimizerConfig& cfg, Rng& rng) {
  if (archive.empty()) return {};
  const Encoding enc(problem);
  std::vector<OffspringPair> kids;
  kids.reserve(archive.size());
  std::uniform_int_distribution<std::size_t> partner(0, archive.size() - 1);
  for (const auto& m : archive) {
    const auto& other = archive[partner(rng)].solution;
    kids.push_back(propose_mutation(enc, m.solution, other, cfg, rng));
  }
  return select_pairs(problem, kids, cfg.threads, rng);
}

// ---- driver --------------------------------------------------------------------------

namespace {

class Runner {
 public:
  Runner(const OptimizerConfig& cfg, const Problem& problem, const RunHooks& hooks)
      : cfg_(cfg), problem_(problem), hooks_(hooks), enc_(problem), rng_(cfg.seed) {}

  RunResult run() {
    cfg_.validate();
    auto init = cfg_.toggles.h3c_init ? h3c_initialize(cfg_, problem_, rng_) : random_initialize(cfg_, problem_, rng_);
    pop_ = evaluate_all(problem_, init, cfg_.threads);
    evaluations_ += pop_.size();

    // Non-dominated part of the initial population seeds the archive, then one archive
    // update (mutation + pruning) runs before the loop.
    archive_ = update_archive({}, pop_, pop_.size(), rng_, prune_mode());
    archive_update(0);

    for (int iter = 1; iter <= cfg_.iter_max; ++iter) {
      const double c = decreasing_coefficient(iter, cfg_);
      const auto& target = archive_[roulette_select_target(archive_, cfg_.r_nbh, rng_)].solution;
      const auto target_unit = enc_.to_unit(target);

      std::vector<std::vector<double>> units;
      units.reserve(pop_.size());
      for (const auto& g : pop_) units.push_back(enc_.to_unit(g.solution));

      std::vector<OffspringPair> kids;
      kids.reserve(pop_.size());
      for (std::size_t i = 0; i < pop_.size(); ++i)
        kids.push_back(propose_update(enc_, units, i, target, target_unit, pop_[i].solution, c, cfg_, rng_));
      pop_ = select_pairs(problem_, kids, cfg_.threads, rng_);
      evaluations_ += 2 * kids.size();
      if (hooks_.on_population) hooks_.on_population(iter, pop_);
      archive_update(iter);
    }

    RunResult out;
    out.archive = archive_;
    out.trace = finish_trace();
    return out;
  }

 private:
  PruneMode prune_mode() const { return cfg_.toggles.dcde ? PruneMode::Dynamic : PruneMode::Static; }

  void archive_update(int iter) {
    std::vector<EvaluatedSolution> candidates = pop_;
    if (cfg_.toggles.archive_mutation) {
      auto mutants = archive_mutation(problem_, archive_, cfg_, rng_);
      evaluations_ += 2 * mutants.size();
      candidates.insert(candidates.end(), mutants.begin(), mutants.end());
    }
    archive_ = update_archive(std::move(archive_), candidates, cfg_.cap(), rng_, prune_mode());
    if (hooks_.on_archive) hooks_.on_archive(iter, archive_);

    IterationRecord rec;
    rec.iteration = iter;
    rec.archive_size = archive_.size();
    rec.archive = objectives_of(archive_);
    rec.best = rec.archive.front();
    for (const auto& v : rec.archive)
      for (std::size_t o = 0; o < 3; ++o) rec.best[o] = std::min(rec.best[o], v[o]);
    records_.push_back(std::move(rec));
  }

  RunTrace finish_trace() {
    RunTrace t;
    t.evaluations = evaluations_;
    std::vector<std::vector<ObjectiveVector>> snaps;
    for (const auto& r : records_) snaps.push_back(r.archive);
    t.normalization = Normalization::of_fronts(snaps);
    // Separate stream so the trace never perturbs the search.
    Rng hv_rng(cfg_.seed ^ 0x9e3779b97f4a7c15ULL);
    for (auto& r : records_) r.hv = hypervolume_mc(t.normalization.apply(r.archive), cfg_.hv_samples, hv_rng);
    t.iterations = std::move(records_);
    return t;
  }

  OptimizerConfig cfg_;
  const Problem& problem_;
  const RunHooks& hooks_;
  Encoding enc_;
  Rng rng_;
  std::vector<EvaluatedSolution> pop_;
  std::vector<EvaluatedSolution> archive_;
  std::vector<IterationRecord> records_;
  std::size_t evaluations_ = 0;
};

}  // namespace

RunResult run(const OptimizerConfig& cfg, const Problem& problem, const RunHooks& hooks) {
  return Runner(cfg, problem, hooks).run();
}

RunResult run_vanilla(const OptimizerConfig& cfg, const Problem& problem, const RunHooks& hooks) {
  return run(cfg.vanilla(), problem, hooks);
}

}  // namespace uavrelay
