#include "uavrelay/experiment.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <ostream>

#include "uavrelay/baselines.hpp"
#include "uavrelay/errors.hpp"

#ifndef UAVRELAY_VERSION
#define UAVRELAY_VERSION "dev"
#endif

namespace uavrelay {

namespace fs = std::filesystem;

// ---- spec ----------------------------------------------------------------------------

void ExperimentSpec::validate() const {
  if (seeds.empty()) throw ValidationError("experiment needs at least one seed");
  if (algo != "imogoa" && algo != "mogoa") throw ValidationError("algo must be imogoa or mogoa, got '" + algo + "'");
  if (mode != "octd" && mode != "ctsd" && mode != "both")
    throw ValidationError("mode must be octd, ctsd or both, got '" + mode + "'");
  if (!(quad_deg > 0.0 && quad_deg <= 22.5)) throw ValidationError("quad-deg must lie in (0, 22.5]");
  for (int c : eaves_counts)
    if (c < 1) throw ValidationError("eavesdropper counts must be >= 1");
}

Scenario load_experiment_scenario(const ExperimentSpec& spec) {
  return spec.scenario_path.empty() ? default_scenario() : load_scenario(spec.scenario_path);
}

OptimizerConfig load_experiment_config(const ExperimentSpec& spec) {
  OptimizerConfig cfg;
  if (!spec.config_path.empty()) {
    std::ifstream in(spec.config_path);
    if (!in) throw ParseError("cannot open optimizer config " + spec.config_path.string());
    nlohmann::json j;
    try {
      in >> j;
    } catch (const nlohmann::json::exception& e) {
      throw ParseError("optimizer config " + spec.config_path.string() + ": " + e.what());
    }
    cfg = optimizer_config_from_json(j);
  }
  if (spec.threads != 0) cfg.threads = spec.threads;
  if (spec.algo == "mogoa") cfg = cfg.vanilla();
  cfg.validate();
  return cfg;
}

std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string s(16, '0');
  for (int i = 15; i >= 0; --i, v >>= 4) s[static_cast<std::size_t>(i)] = kDigits[v & 0xf];
  return s;
}

// ---- analysis helpers ----------------------------------------------------------------

std::size_t representative_index(std::span<const EvaluatedSolution> archive) {
  if (archive.empty()) throw ValidationError("representative of an empty archive");
  const bool any_feasible = std::any_of(archive.begin(), archive.end(), [](const auto& m) { return m.feasible; });
  std::vector<ObjectiveVector> objs;
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < archive.size(); ++i)
    if (archive[i].feasible || !any_feasible) {
      objs.push_back(archive[i].objectives);
      idx.push_back(i);
    }
  const auto norm = Normalization::of(objs).apply(objs);
  std::size_t best = 0;
  double best_d = INFINITY;
  for (std::size_t i = 0; i < norm.size(); ++i) {
    const double d = norm[i][0] * norm[i][0] + norm[i][1] * norm[i][1] + norm[i][2] * norm[i][2];
    if (d < best_d) {
      best_d = d;
      best = i;
    }
  }
  return idx[best];
}

std::vector<double> shared_hypervolumes(std::span<const std::vector<ObjectiveVector>> fronts, std::size_t n_samples,
                                        std::uint64_t seed) {
  const auto norm = Normalization::of_fronts(fronts);
  std::vector<double> out;
  for (const auto& f : fronts) {
    Rng rng(seed);
    out.push_back(hypervolume_mc(norm.apply(f), n_samples, rng));
  }
  return out;
}

double median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

namespace {

constexpr std::uint64_t kHvSeed = 20240229;

std::vector<ObjectiveVector> front_of(const std::vector<EvaluatedSolution>& archive) {
  // Hypervolume counts feasible members only, unless the archive has none.
  std::vector<ObjectiveVector> out;
  for (const auto& m : archive)
    if (m.feasible) out.push_back(m.objectives);
  if (out.empty()) out = objectives_of(archive);
  return out;
}

}  // namespace

CompareReport compare_algorithms(const Problem& problem, const OptimizerConfig& cfg,
                                 std::span<const std::uint64_t> seeds, std::size_t hv_samples) {
  CompareReport rep;
  rep.seeds.assign(seeds.begin(), seeds.end());
  std::vector<std::vector<ObjectiveVector>> fronts;
  for (auto seed : seeds) {
    OptimizerConfig c = cfg;
    c.seed = seed;
    rep.imogoa_runs.push_back(run(c, problem));
    rep.mogoa_runs.push_back(run_vanilla(c, problem));
  }
  for (const auto& r : rep.imogoa_runs) fronts.push_back(front_of(r.archive));
  for (const auto& r : rep.mogoa_runs) fronts.push_back(front_of(r.archive));
  const auto hv = shared_hypervolumes(fronts, hv_samples, kHvSeed);
  rep.hv_imogoa.assign(hv.begin(), hv.begin() + static_cast<std::ptrdiff_t>(seeds.size()));
  rep.hv_mogoa.assign(hv.begin() + static_cast<std::ptrdiff_t>(seeds.size()), hv.end());
  rep.median_imogoa = median(rep.hv_imogoa);
  rep.median_mogoa = median(rep.hv_mogoa);
  return rep;
}

// ---- output --------------------------------------------------------------------------

namespace {

std::string num(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

// CSV file plus a JSON sidecar next to it (`<name>.json`).
class CsvOut {
 public:
  CsvOut(const fs::path& path, const std::vector<std::string>& header, nlohmann::json meta) : path_(path) {
    fs::create_directories(path.parent_path());
    out_.open(path, std::ios::binary);
    if (!out_) throw ValidationError("cannot write " + path.string());
    for (std::size_t i = 0; i < header.size(); ++i) out_ << (i ? "," : "") << header[i];
    out_ << '\n';
    meta["file"] = path.filename().string();
    meta["version"] = UAVRELAY_VERSION;
    std::ofstream side(fs::path(path.string() + ".json"), std::ios::binary);
    side << meta.dump(2) << '\n';
  }

  CsvOut& cell(const std::string& s) {
    out_ << (first_ ? "" : ",") << s;
    first_ = false;
    return *this;
  }
  CsvOut& cell(double v) { return cell(num(v)); }
  CsvOut& cells(std::span<const double> vs) {
    for (double v : vs) cell(v);
    return *this;
  }
  void end_row() {
    out_ << '\n';
    first_ = true;
  }

 private:
  fs::path path_;
  std::ofstream out_;
  bool first_ = true;
};

struct Context {
  Scenario scenario;
  OptimizerConfig cfg;
  std::string hash;
  nlohmann::json meta;
};

Context make_context(const ExperimentSpec& spec, const std::string& command) {
  spec.validate();
  Context ctx{load_experiment_scenario(spec), load_experiment_config(spec), {}, {}};
  nlohmann::json cfg_json = optimizer_config_to_json(ctx.cfg);
  cfg_json.erase("threads");  // worker count never changes results
  cfg_json.erase("seed");
  const std::string canon = scenario_to_json(ctx.scenario).dump() + cfg_json.dump() + spec.algo + num(spec.quad_deg);
  ctx.hash = hex64(fnv1a64(canon));
  ctx.meta = {{"command", command},
              {"algo", spec.algo},
              {"config_hash", ctx.hash},
              {"scenario", spec.scenario_path.empty() ? std::string("default") : spec.scenario_path.string()},
              {"quad_deg", spec.quad_deg},
              {"effective_config", cfg_json}};
  return ctx;
}

nlohmann::json with_seed(nlohmann::json meta, std::uint64_t seed) {
  meta["seed"] = seed;
  return meta;
}

std::string seed_tag(std::uint64_t seed) { return "seed" + std::to_string(seed); }

void write_archive(const fs::path& path, const std::vector<EvaluatedSolution>& archive, const SolutionLayout& layout,
                   const nlohmann::json& meta) {
  std::vector<std::string> header{"f1", "f2", "f3", "feasible", "violation", "degenerate"};
  const auto rec = layout.record_header();
  header.insert(header.end(), rec.begin(), rec.end());
  CsvOut csv(path, header, meta);
  for (const auto& m : archive) {
    csv.cell(m.f1()).cell(m.f2()).cell(m.f3()).cell(m.feasible ? 1.0 : 0.0).cell(m.violation).cell(m.degenerate ? 1.0 : 0.0);
    csv.cells(layout.to_record(m.solution)).end_row();
  }
}

void write_trace(const fs::path& path, const RunTrace& trace, const nlohmann::json& meta) {
  CsvOut csv(path, {"iteration", "hv", "archive_size", "best_f1", "best_f2", "best_f3"}, meta);
  for (const auto& r : trace.iterations)
    csv.cell(r.iteration).cell(r.hv).cell(static_cast<double>(r.archive_size)).cell(-r.best[0]).cell(r.best[1]).cell(r.best[2]).end_row();
}

// Ordered waypoints of every UAV: step 0 is the initial position, step i the position
// while serving the i-th device in the service order.
void write_trajectory(const fs::path& path, const Solution& sol, const Scenario& sc, const nlohmann::json& meta) {
  CsvOut csv(path, {"uav", "step", "device", "x", "y", "z"}, meta);
  const int k = sc.uav_count();
  for (int u = 0; u < k; ++u) {
    const auto& p0 = sc.uav_init[static_cast<std::size_t>(u)];
    csv.cell(u + 1).cell(0).cell(0).cell(p0.x).cell(p0.y).cell(p0.z).end_row();
    for (std::size_t step = 0; step < sol.order.size(); ++step) {
      const int dev = sol.order[step];
      const auto& p = sol.p_uav[static_cast<std::size_t>(dev - 1) * k + u];
      csv.cell(u + 1).cell(static_cast<double>(step + 1)).cell(dev).cell(p.x).cell(p.y).cell(p.z).end_row();
    }
  }
}

// Beam patterns of both arrays while serving device `dev` (1-based).
void write_patterns(const fs::path& dir, const std::string& tag, const Solution& sol, int dev, const Problem& problem,
                    const nlohmann::json& meta) {
  const auto& sc = problem.scenario();
  const auto& layout = problem.layout();
  const auto& quad = problem.link_budget().quadrature();
  const auto d = static_cast<std::size_t>(dev - 1);
  const double lambda = sc.channel.wavelength();

  const auto begin = sol.p_uav.begin() + static_cast<std::ptrdiff_t>(d * layout.k);
  const std::vector<Position3D> pos(begin, begin + layout.k);
  Position3D center{};
  for (const auto& p : pos) center += p;
  center *= 1.0 / layout.k;

  ArraySpec uvaa{{}, {sol.i_uvaa.begin() + static_cast<std::ptrdiff_t>(d * layout.k),
                      sol.i_uvaa.begin() + static_cast<std::ptrdiff_t>((d + 1) * layout.k)},
                 lambda};
  for (const auto& p : pos) uvaa.offsets.push_back(p - center);
  ArraySpec paa{sc.paa.element_offsets(),
                {sol.i_paa.begin() + static_cast<std::ptrdiff_t>(d * layout.mn),
                 sol.i_paa.begin() + static_cast<std::ptrdiff_t>((d + 1) * layout.mn)},
                lambda};
  const auto& rx = pos[static_cast<std::size_t>(sol.s_recv[d] - 1)];

  const auto dump = [&](const std::string& name, const ArraySpec& spec, Direction target, double eta) {
    nlohmann::json m = meta;
    m["device"] = dev;
    m["target_theta_rad"] = target.theta;
    m["target_phi_rad"] = target.phi;
    CsvOut csv(dir / name, {"theta_rad", "phi_rad", "gain_db"}, m);
    for (const auto& s : sample_pattern(spec, target, quad, eta)) csv.cell(s.theta).cell(s.phi).cell(s.gain_db).end_row();
  };
  if (std::any_of(uvaa.weights.begin(), uvaa.weights.end(), [](double w) { return w > 0.0; }))
    dump("beampattern_uvaa_" + tag + ".csv", uvaa, direction_between(center, sc.devices[d]), sc.eta_uvaa);
  if (std::any_of(paa.weights.begin(), paa.weights.end(), [](double w) { return w > 0.0; }))
    dump("beampattern_paa_" + tag + ".csv", paa, direction_between(sc.paa.center, rx), sc.eta_paa);
}

int guarded(std::ostream& log, const std::function<int()>& body) {
  try {
    return body();
  } catch (const std::exception& e) {
    log << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace

// ---- subcommands ---------------------------------------------------------------------

int cmd_run(const ExperimentSpec& spec, std::ostream& log) {
  return guarded(log, [&] {
    auto ctx = make_context(spec, "run");
    const Problem problem(ctx.scenario, GainQuadrature::with_resolution_deg(spec.quad_deg));
    fs::create_directories(spec.out_dir);
    {
      std::ofstream cfg_out(spec.out_dir / "effective_config.json", std::ios::binary);
      cfg_out << ctx.meta.dump(2) << '\n';
    }

    std::vector<RunResult> runs;
    for (auto seed : spec.seeds) {
      OptimizerConfig c = ctx.cfg;
      c.seed = seed;
      runs.push_back(run(c, problem));
      const auto& r = runs.back();
      const auto meta = with_seed(ctx.meta, seed);
      const auto tag = seed_tag(seed);
      write_archive(spec.out_dir / ("archive_" + tag + ".csv"), r.archive, problem.layout(), meta);
      write_trace(spec.out_dir / ("trace_" + tag + ".csv"), r.trace, meta);
      const auto& rep = r.archive[representative_index(r.archive)].solution;
      write_trajectory(spec.out_dir / ("trajectory_" + tag + ".csv"), rep, ctx.scenario, meta);
      write_patterns(spec.out_dir, tag, rep, rep.order.front(), problem, meta);
      log << "seed " << seed << ": archive " << r.archive.size() << ", evaluations " << r.trace.evaluations << '\n';
    }

    std::vector<std::vector<ObjectiveVector>> fronts;
    for (const auto& r : runs) fronts.push_back(front_of(r.archive));
    const auto hv = shared_hypervolumes(fronts, spec.hv_samples, kHvSeed);
    CsvOut csv(spec.out_dir / "summary.csv", {"seed", "hv", "archive_size", "best_f1", "best_f2", "best_f3", "evaluations"},
               ctx.meta);
    for (std::size_t i = 0; i < runs.size(); ++i) {
      const auto& best = runs[i].trace.iterations.back().best;
      csv.cell(std::to_string(spec.seeds[i])).cell(hv[i]).cell(static_cast<double>(runs[i].archive.size()));
      csv.cell(-best[0]).cell(best[1]).cell(best[2]).cell(static_cast<double>(runs[i].trace.evaluations)).end_row();
    }
    csv.cell("median").cell(median(hv)).cell("").cell("").cell("").cell("").cell("").end_row();
    log << "median hv " << median(hv) << " over " << runs.size() << " seed(s); outputs in " << spec.out_dir.string()
        << '\n';
    return 0;
  });
}

int cmd_compare(const ExperimentSpec& spec, std::ostream& log) {
  return guarded(log, [&] {
    if (spec.seeds.size() < 3) throw ValidationError("compare needs at least 3 seeds");
    ExperimentSpec s = spec;
    s.algo = "imogoa";
    auto ctx = make_context(s, "compare");
    ctx.meta.erase("algo");
    const Problem problem(ctx.scenario, GainQuadrature::with_resolution_deg(spec.quad_deg));
    const auto rep = compare_algorithms(problem, ctx.cfg, spec.seeds, spec.hv_samples);

    CsvOut csv(spec.out_dir / "compare.csv", {"seed", "hv_imogoa", "hv_mogoa"}, ctx.meta);
    for (std::size_t i = 0; i < rep.seeds.size(); ++i)
      csv.cell(std::to_string(rep.seeds[i])).cell(rep.hv_imogoa[i]).cell(rep.hv_mogoa[i]).end_row();
    csv.cell("median").cell(rep.median_imogoa).cell(rep.median_mogoa).end_row();

    // Progression curves under the normalization of all final fronts.
    std::vector<std::vector<ObjectiveVector>> fronts;
    for (const auto& r : rep.imogoa_runs) fronts.push_back(front_of(r.archive));
    for (const auto& r : rep.mogoa_runs) fronts.push_back(front_of(r.archive));
    const auto norm = Normalization::of_fronts(fronts);
    CsvOut curves(spec.out_dir / "hv_curves.csv", {"algo", "seed", "iteration", "hv"}, ctx.meta);
    const auto emit = [&](const std::string& algo, const std::vector<RunResult>& runs) {
      for (std::size_t i = 0; i < runs.size(); ++i)
        for (const auto& it : runs[i].trace.iterations) {
          Rng rng(kHvSeed);
          curves.cell(algo).cell(std::to_string(rep.seeds[i])).cell(it.iteration);
          curves.cell(hypervolume_mc(norm.apply(it.archive), ctx.cfg.hv_samples, rng)).end_row();
        }
    };
    emit("imogoa", rep.imogoa_runs);
    emit("mogoa", rep.mogoa_runs);

    for (std::size_t i = 0; i < rep.seeds.size(); ++i) {
      const auto meta = with_seed(ctx.meta, rep.seeds[i]);
      write_archive(spec.out_dir / ("archive_imogoa_" + seed_tag(rep.seeds[i]) + ".csv"), rep.imogoa_runs[i].archive,
                    problem.layout(), meta);
      write_archive(spec.out_dir / ("archive_mogoa_" + seed_tag(rep.seeds[i]) + ".csv"), rep.mogoa_runs[i].archive,
                    problem.layout(), meta);
    }
    log << "median hv: imogoa " << rep.median_imogoa << ", mogoa " << rep.median_mogoa << '\n';
    return 0;
  });
}

int cmd_eaves_sweep(const ExperimentSpec& spec, std::ostream& log) {
  return guarded(log, [&] {
    auto ctx = make_context(spec, "eaves-sweep");
    std::vector<EavesMode> modes;
    if (spec.mode != "ctsd") modes.push_back(EavesMode::Octd);
    if (spec.mode != "octd") modes.push_back(EavesMode::Ctsd);
    const auto quad = GainQuadrature::with_resolution_deg(spec.quad_deg);
    const auto seed = spec.seeds.front();

    CsvOut csv(spec.out_dir / "eaves_sweep.csv",
               {"count", "mode", "rep_f1", "rep_f2", "rep_f3", "best_f1", "min_f2", "min_f3", "frozen_f1", "frozen_f2",
                "frozen_f3"},
               with_seed(ctx.meta, seed));
    for (int count : spec.eaves_counts) {
      for (auto mode : modes) {
        Scenario sc = with_eavesdroppers(ctx.scenario, count, 1);
        sc.eaves_mode = mode;
        const Problem problem(sc, quad);
        const auto frozen = problem.evaluate(problem.hover_solution());
        OptimizerConfig c = ctx.cfg;
        c.seed = seed;
        const auto r = run(c, problem);
        const auto& rep = r.archive[representative_index(r.archive)];
        const auto& best = r.trace.iterations.back().best;
        csv.cell(count).cell(to_string(mode)).cell(rep.f1()).cell(rep.f2()).cell(rep.f3());
        csv.cell(-best[0]).cell(best[1]).cell(best[2]).cell(frozen.f1()).cell(frozen.f2()).cell(frozen.f3()).end_row();
        log << "eavesdroppers " << count << " " << to_string(mode) << ": f2 " << rep.f2() << '\n';
      }
    }
    return 0;
  });
}

int cmd_baselines(const ExperimentSpec& spec, std::ostream& log) {
  return guarded(log, [&] {
    auto ctx = make_context(spec, "baselines");
    const Problem problem(ctx.scenario, GainQuadrature::with_resolution_deg(spec.quad_deg));
    OptimizerConfig c = ctx.cfg;
    c.seed = spec.seeds.front();
    const auto r = run(c, problem);
    const auto& urs = r.archive[representative_index(r.archive)];
    const auto meta = with_seed(ctx.meta, c.seed);

    CsvOut mrs(spec.out_dir / "mrs_table.csv", {"strategy", "f1", "f2", "f3", "log10_f1", "log10_f2", "log10_f3"}, meta);
    const auto row = [&](const std::string& name, double f1, double f2, double f3) {
      mrs.cell(name).cell(f1).cell(f2).cell(f3).cell(std::log10(f1)).cell(std::log10(f2)).cell(std::log10(f3)).end_row();
    };
    for (int n : {2, 4, 8, 16}) {
      if (n > ctx.scenario.uav_count()) break;
      MrsConfig m;
      m.n_hops = n;
      const auto res = evaluate_mrs(m, ctx.scenario, problem.speed_policy());
      row("MRS (" + std::to_string(n) + " UAVs)", res.f1, res.f2, res.f3);
      log << "MRS " << n << ": f1 " << res.f1 << " f2 " << res.f2 << " f3 " << res.f3 << '\n';
    }
    row("URS", urs.f1(), urs.f2(), urs.f3());

    CsvOut lrs(spec.out_dir / "lrs_table.csv", {"strategy", "f1", "f2", "draws"}, meta);
    for (int spacing = 1; spacing <= 5; ++spacing) {
      LrsConfig l;
      l.element_spacing = spacing;
      l.seed = c.seed;
      const auto res = evaluate_lrs(l, problem, c.threads);
      lrs.cell("LRS (" + std::to_string(spacing) + " m)").cell(res.f1).cell(res.f2).cell(res.draws).end_row();
      log << "LRS " << spacing << " m: f1 " << res.f1 << " f2 " << res.f2 << '\n';
    }
    lrs.cell("URS").cell(urs.f1()).cell(urs.f2()).cell("").end_row();
    log << "URS: f1 " << urs.f1() << " f2 " << urs.f2() << " f3 " << urs.f3() << '\n';
    return 0;
  });
}

int cmd_overhead(const ExperimentSpec& spec, std::ostream& log) {
  return guarded(log, [&] {
    const auto& p = spec.overhead;
    const double e = scheduling_overhead(p);
    log << "N_re " << p.n_re << ", f " << p.f << ", K " << p.k << ", r " << p.r << " bps, P_T " << p.p_t << " W\n"
        << "mean transmissions " << mean_transmissions(p.f, p.n_re) << "\n"
        << "scheduling energy " << std::setprecision(6) << e << " J\n";
    nlohmann::json meta = {{"command", "overhead"},
                           {"n_re", p.n_re},
                           {"f", p.f},
                           {"k", p.k},
                           {"r_bps", p.r},
                           {"p_t_w", p.p_t},
                           {"bits", {p.b_s, p.b_f, p.b_o, p.b_a1, p.b_a3}}};
    meta["config_hash"] = hex64(fnv1a64(meta.dump()));
    CsvOut csv(spec.out_dir / "overhead.csv", {"f", "n_re", "mean_transmissions", "energy_j"}, meta);
    for (double f : {0.0, 0.01, 0.05, 0.1, 0.2, 0.3, 0.5})
      for (int n = 1; n <= 5; ++n) {
        OverheadParams q = p;
        q.f = f;
        q.n_re = n;
        csv.cell(f).cell(n).cell(mean_transmissions(f, n)).cell(scheduling_overhead(q)).end_row();
      }
    return 0;
  });
}

int cmd_beampattern(const ExperimentSpec& spec, std::ostream& log) {
  return guarded(log, [&] {
    auto ctx = make_context(spec, "beampattern");
    const Problem problem(ctx.scenario, GainQuadrature::with_resolution_deg(spec.quad_deg));
    const auto sol = problem.hover_solution();
    write_patterns(spec.out_dir, "hover", sol, 1, problem, ctx.meta);
    log << "beam patterns for device 1 written to " << spec.out_dir.string() << '\n';
    return 0;
  });
}

}  // namespace uavrelay
