#include "uavrelay/moea.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "uavrelay/errors.hpp"

namespace uavrelay {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

std::vector<double> crowding_distances(std::span<const ObjectiveVector> objs) {
  const std::size_t n = objs.size();
  std::vector<double> dist(n, 0.0);
  if (n <= 2) {
    std::fill(dist.begin(), dist.end(), kInf);
    return dist;
  }
  std::vector<std::size_t> idx(n);
  for (std::size_t o = 0; o < 3; ++o) {
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return objs[a][o] < objs[b][o]; });
    const double range = objs[idx.back()][o] - objs[idx.front()][o];
    if (range <= 0.0) continue;
    dist[idx.front()] = kInf;
    dist[idx.back()] = kInf;
    for (std::size_t r = 1; r + 1 < n; ++r) dist[idx[r]] += (objs[idx[r + 1]][o] - objs[idx[r - 1]][o]) / range;
  }
  return dist;
}

std::vector<std::size_t> crowding_prune(std::span<const ObjectiveVector> objs, std::size_t cap, PruneMode mode,
                                        Rng& rng) {
  std::vector<std::size_t> alive(objs.size());
  std::iota(alive.begin(), alive.end(), 0);
  if (objs.size() <= cap) return alive;

  const auto distances_of = [&](const std::vector<std::size_t>& members) {
    std::vector<ObjectiveVector> sub;
    sub.reserve(members.size());
    for (auto i : members) sub.push_back(objs[i]);
    return crowding_distances(sub);
  };
  // Position (in `members`) of one member with the minimal distance, ties at random.
  const auto pick_min = [&](const std::vector<double>& dist, const std::vector<char>& gone) {
    double best = kInf;
    bool any = false;
    for (std::size_t i = 0; i < dist.size(); ++i)
      if (!gone[i] && (!any || dist[i] < best)) {
        best = dist[i];
        any = true;
      }
    std::vector<std::size_t> ties;
    for (std::size_t i = 0; i < dist.size(); ++i)
      if (!gone[i] && dist[i] == best) ties.push_back(i);
    if (ties.size() == 1) return ties.front();
    std::uniform_int_distribution<std::size_t> pick(0, ties.size() - 1);
    return ties[pick(rng)];
  };

  if (mode == PruneMode::Dynamic) {
    while (alive.size() > cap) {
      const auto dist = distances_of(alive);
      const std::vector<char> none(alive.size(), 0);
      alive.erase(alive.begin() + static_cast<std::ptrdiff_t>(pick_min(dist, none)));
    }
    return alive;
  }

  const auto dist = distances_of(alive);
  std::vector<char> gone(alive.size(), 0);
  for (std::size_t removed = 0; removed < objs.size() - cap; ++removed) gone[pick_min(dist, gone)] = 1;
  std::vector<std::size_t> kept;
  for (std::size_t i = 0; i < alive.size(); ++i)
    if (!gone[i]) kept.push_back(alive[i]);
  return kept;
}

std::vector<EvaluatedSolution> dcde_prune(std::vector<EvaluatedSolution> members, std::size_t cap, Rng& rng,
                                          PruneMode mode) {
  if (members.size() <= cap) return members;
  const auto objs = objectives_of(members);
  const auto keep = crowding_prune(objs, cap, mode, rng);
  std::vector<EvaluatedSolution> out;
  out.reserve(keep.size());
  for (auto i : keep) out.push_back(std::move(members[i]));
  return out;
}

std::vector<EvaluatedSolution> update_archive(std::vector<EvaluatedSolution> archive,
                                              std::span<const EvaluatedSolution> candidates, std::size_t cap,
                                              Rng& rng, PruneMode mode) {
  archive.insert(archive.end(), candidates.begin(), candidates.end());
  std::vector<EvaluatedSolution> kept;
  for (std::size_t i = 0; i < archive.size(); ++i) {
    bool drop = false;
    for (std::size_t j = 0; j < archive.size() && !drop; ++j) {
      if (i == j) continue;
      if (dominates(archive[j], archive[i])) drop = true;
      // Identical entries: keep the first occurrence.
      else if (j < i && archive[j].objectives == archive[i].objectives && archive[j].feasible == archive[i].feasible &&
               archive[j].violation == archive[i].violation)
        drop = true;
    }
    if (!drop) kept.push_back(archive[i]);
  }
  return dcde_prune(std::move(kept), cap, rng, mode);
}

// ---- normalization -------------------------------------------------------------------

Normalization Normalization::of(std::span<const ObjectiveVector> objs) {
  Normalization n;
  if (objs.empty()) {
    n.hi = {1.0, 1.0, 1.0};
    return n;
  }
  n.lo = n.hi = objs.front();
  for (const auto& v : objs)
    for (std::size_t o = 0; o < 3; ++o) {
      n.lo[o] = std::min(n.lo[o], v[o]);
      n.hi[o] = std::max(n.hi[o], v[o]);
    }
  return n;
}

Normalization Normalization::of_fronts(std::span<const std::vector<ObjectiveVector>> fronts) {
  std::vector<ObjectiveVector> all;
  for (const auto& f : fronts) all.insert(all.end(), f.begin(), f.end());
  return of(all);
}

ObjectiveVector Normalization::apply(const ObjectiveVector& v) const {
  ObjectiveVector out{};
  for (std::size_t o = 0; o < 3; ++o) {
    const double range = hi[o] - lo[o];
    out[o] = range > 0.0 ? (v[o] - lo[o]) / range : 0.0;
  }
  return out;
}

std::vector<ObjectiveVector> Normalization::apply(std::span<const ObjectiveVector> vs) const {
  std::vector<ObjectiveVector> out;
  out.reserve(vs.size());
  for (const auto& v : vs) out.push_back(apply(v));
  return out;
}

// ---- roulette ------------------------------------------------------------------------

std::vector<int> neighbor_counts(std::span<const ObjectiveVector> pts, double radius) {
  std::vector<int> counts(pts.size(), 0);
  const double r2 = radius * radius;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      double d2 = 0.0;
      for (std::size_t o = 0; o < 3; ++o) d2 += (pts[i][o] - pts[j][o]) * (pts[i][o] - pts[j][o]);
      if (d2 < r2) {
        ++counts[i];
        ++counts[j];
      }
    }
  return counts;
}

std::vector<double> roulette_probabilities(std::span<const int> counts) {
  std::vector<double> p;
  p.reserve(counts.size());
  for (int n : counts) p.push_back(1.0 / (1.0 + n));
  const double total = std::accumulate(p.begin(), p.end(), 0.0);
  for (auto& x : p) x /= total;
  return p;
}

std::size_t roulette_select(std::span<const double> probabilities, Rng& rng) {
  if (probabilities.empty()) throw ValidationError("roulette selection over an empty set");
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double r = u(rng);
  for (std::size_t i = 0; i < probabilities.size(); ++i) {
    r -= probabilities[i];
    if (r < 0.0) return i;
  }
  return probabilities.size() - 1;
}

std::size_t roulette_select_target(std::span<const EvaluatedSolution> archive, double radius, Rng& rng) {
  if (archive.empty()) throw ValidationError("cannot select a target from an empty archive");
  if (archive.size() == 1) return 0;
  const auto objs = objectives_of(archive);
  const auto norm = Normalization::of(objs).apply(objs);
  const auto counts = neighbor_counts(norm, radius);
  const auto p = roulette_probabilities(counts);
  return roulette_select(p, rng);
}

// ---- hypervolume ---------------------------------------------------------------------

double hypervolume_mc(std::span<const std::vector<double>> front, std::size_t n_samples, Rng& rng) {
  if (front.empty() || n_samples == 0) return 0.0;
  const std::size_t dim = front.front().size();
  // Points at or beyond the reference in any objective dominate nothing inside the box.
  std::vector<const std::vector<double>*> useful;
  for (const auto& p : front)
    if (std::all_of(p.begin(), p.end(), [](double v) { return v < 1.0; })) useful.push_back(&p);
  if (useful.empty()) return 0.0;

  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> s(dim);
  std::size_t hits = 0;
  for (std::size_t n = 0; n < n_samples; ++n) {
    for (auto& x : s) x = u(rng);
    for (const auto* p : useful) {
      bool dom = true;
      for (std::size_t o = 0; o < dim && dom; ++o) dom = (*p)[o] <= s[o];
      if (dom) {
        ++hits;
        break;
      }
    }
  }
  return static_cast<double>(hits) / static_cast<double>(n_samples);
}

double hypervolume_mc(std::span<const ObjectiveVector> normalized_front, std::size_t n_samples, Rng& rng) {
  std::vector<std::vector<double>> pts;
  pts.reserve(normalized_front.size());
  for (const auto& v : normalized_front) pts.emplace_back(v.begin(), v.end());
  return hypervolume_mc(pts, n_samples, rng);
}

std::vector<ObjectiveVector> objectives_of(std::span<const EvaluatedSolution> members) {
  std::vector<ObjectiveVector> out;
  out.reserve(members.size());
  for (const auto& m : members) out.push_back(m.objectives);
  return out;
}

}  // namespace uavrelay
