#include "rmz/covering.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numbers>

#include "rmz/errors.hpp"
#include "rmz/rng.hpp"

namespace rmz {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// ---------------------------------------------------------------------------
// covering_number
// ---------------------------------------------------------------------------

// Exact 1-D sweep for collinear sets: a radius-eps disk meets the carrier
// line in a segment of length 2*eps, and the right-anchored greedy is optimal
// for interval covering.
int interval_sweep_count(std::vector<double> xs, double eps) {
  std::sort(xs.begin(), xs.end());
  const double slack = 1e-12 * std::max(1.0, std::abs(xs.back() - xs.front()));
  int count = 0;
  std::size_t i = 0;
  while (i < xs.size()) {
    ++count;
    double limit = xs[i] + 2.0 * eps + slack;
    while (i < xs.size() && xs[i] <= limit) ++i;
  }
  return count;
}

struct CandidateSet {
  std::vector<std::uint32_t> masks;  // coverage over <= 20 points
};

// Candidate centers: single points, pair midpoints, triple circumcenters.
// An optimal cover normalizes to disks whose MEB over the covered subset is
// determined by <= 3 points, so these centers suffice.
CandidateSet build_candidates(const std::vector<Complex>& pts, double eps) {
  const std::size_t n = pts.size();
  const double reach = eps * (1.0 + 1e-12) + 1e-300;
  auto mask_of = [&](Complex c) {
    std::uint32_t m = 0;
    for (std::size_t i = 0; i < n; ++i)
      if (std::abs(pts[i] - c) <= reach) m |= (1u << i);
    return m;
  };
  std::vector<std::uint32_t> masks;
  for (std::size_t i = 0; i < n; ++i) masks.push_back(mask_of(pts[i]));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      if (std::abs(pts[i] - pts[j]) > 2.0 * eps * (1.0 + 1e-12)) continue;
      masks.push_back(mask_of(0.5 * (pts[i] + pts[j])));
    }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k) {
        auto cc = circumcircle(pts[i], pts[j], pts[k]);
        if (!cc || cc->radius > eps * (1.0 + 1e-12)) continue;
        masks.push_back(mask_of(cc->center));
      }
  std::sort(masks.begin(), masks.end());
  masks.erase(std::unique(masks.begin(), masks.end()), masks.end());
  // Keep only maximal masks.
  std::vector<std::uint32_t> maximal;
  for (std::uint32_t m : masks) {
    bool dominated = false;
    for (std::uint32_t other : masks)
      if (other != m && (m & other) == m) {
        dominated = true;
        break;
      }
    if (!dominated) maximal.push_back(m);
  }
  return {std::move(maximal)};
}

struct CoverSearch {
  const std::vector<std::uint32_t>& masks;
  std::uint32_t full;
  int best;
  int max_popcount;
  long nodes = 0;

  void run(std::uint32_t covered, int used) {
    ++nodes;
    if (covered == full) {
      best = std::min(best, used);
      return;
    }
    std::uint32_t uncovered = full & ~covered;
    int remaining = std::popcount(uncovered);
    if (used + (remaining + max_popcount - 1) / max_popcount >= best) return;
    // Branch on the uncovered point with the fewest candidates.
    std::uint32_t pick = 0;
    int fewest = std::numeric_limits<int>::max();
    for (std::uint32_t bit = uncovered; bit;) {
      std::uint32_t b = bit & (~bit + 1);
      bit ^= b;
      int cnt = 0;
      for (std::uint32_t m : masks)
        if (m & b) ++cnt;
      if (cnt < fewest) {
        fewest = cnt;
        pick = b;
      }
    }
    std::vector<std::uint32_t> options;
    for (std::uint32_t m : masks)
      if (m & pick) options.push_back(m);
    std::sort(options.begin(), options.end(),
              [&](std::uint32_t a, std::uint32_t b) {
                return std::popcount(a & ~covered) > std::popcount(b & ~covered);
              });
    for (std::uint32_t m : options) run(covered | m, used + 1);
  }
};

int exact_planar_count(const std::vector<Complex>& pts, double eps) {
  auto cand = build_candidates(pts, eps);
  std::uint32_t full = (pts.size() == 32) ? ~0u : ((1u << pts.size()) - 1);
  int max_pop = 1;
  for (std::uint32_t m : cand.masks) max_pop = std::max(max_pop, std::popcount(m));
  // Greedy warm start.
  std::uint32_t covered = 0;
  int greedy = 0;
  while (covered != full) {
    std::uint32_t bestm = 0;
    int gain = -1;
    for (std::uint32_t m : cand.masks) {
      int g = std::popcount(m & ~covered);
      if (g > gain) {
        gain = g;
        bestm = m;
      }
    }
    covered |= bestm;
    ++greedy;
  }
  CoverSearch search{cand.masks, full, greedy, max_pop};
  search.run(0, 0);
  return search.best;
}

// Greedy upper bound for large non-collinear sets: lazily proposes disks
// anchored at the first uncovered point plus pair midpoints near it.
int greedy_planar_count(const std::vector<Complex>& pts, double eps) {
  const std::size_t n = pts.size();
  const double reach = eps * (1.0 + 1e-12);
  std::vector<bool> covered(n, false);
  int count = 0;
  for (std::size_t anchor = 0; anchor < n; ++anchor) {
    if (covered[anchor]) continue;
    Complex best_center = pts[anchor];
    int best_gain = -1;
    auto consider = [&](Complex c) {
      if (std::abs(pts[anchor] - c) > reach) return;
      int gain = 0;
      for (std::size_t i = 0; i < n; ++i)
        if (!covered[i] && std::abs(pts[i] - c) <= reach) ++gain;
      if (gain > best_gain) {
        best_gain = gain;
        best_center = c;
      }
    };
    consider(pts[anchor]);
    for (std::size_t j = 0; j < n; ++j) {
      if (j == anchor || covered[j]) continue;
      if (std::abs(pts[anchor] - pts[j]) <= 2.0 * eps)
        consider(0.5 * (pts[anchor] + pts[j]));
    }
    for (std::size_t i = 0; i < n; ++i)
      if (!covered[i] && std::abs(pts[i] - best_center) <= reach)
        covered[i] = true;
    ++count;
  }
  return count;
}

// ---------------------------------------------------------------------------
// exact c_d: subset DP over the partition optimum
// ---------------------------------------------------------------------------

struct PartitionResult {
  double value = 0.0;
  std::vector<std::vector<Complex>> blocks;
};

PartitionResult exact_partition(const std::vector<Complex>& pts, int d) {
  const int n = static_cast<int>(pts.size());
  const std::uint32_t full = (1u << n) - 1;
  // Subset MEB table, incremental over the highest bit: when the new point
  // already sits inside the parent's disk the disk is unchanged.
  std::vector<double> cost(full + 1, 0.0);
  std::vector<Complex> cost_center(full + 1, Complex(0, 0));
  std::vector<Complex> scratch;
  for (std::uint32_t mask = 1; mask <= full; ++mask) {
    int hi = 31 - std::countl_zero(mask);
    std::uint32_t rest = mask ^ (1u << hi);
    if (rest == 0) {
      cost[mask] = 0.0;
      cost_center[mask] = pts[hi];
      continue;
    }
    Complex p = pts[hi];
    if (std::abs(p - cost_center[rest]) <=
        cost[rest] * (1.0 + 1e-12) + 1e-300) {
      cost[mask] = cost[rest];
      cost_center[mask] = cost_center[rest];
      continue;
    }
    scratch.clear();
    for (int i = 0; i < n; ++i)
      if (mask & (1u << i)) scratch.push_back(pts[i]);
    Disk meb = min_enclosing_disk(std::span<const Complex>(scratch));
    cost[mask] = meb.radius;
    cost_center[mask] = meb.center;
  }
  const int layers = std::min(d, n);
  std::vector<double> prev(full + 1, kInf), cur(full + 1, kInf);
  prev[0] = 0.0;
  std::vector<std::vector<std::uint32_t>> parent(
      layers + 1, std::vector<std::uint32_t>(full + 1, 0));
  for (int k = 1; k <= layers; ++k) {
    cur[0] = 0.0;
    for (std::uint32_t mask = 1; mask <= full; ++mask) {
      double best = prev[mask];  // use fewer than k blocks
      std::uint32_t best_sub = 0;
      std::uint32_t low = mask & (~mask + 1);
      for (std::uint32_t sub = mask; sub; sub = (sub - 1) & mask) {
        if (!(sub & low)) continue;
        double cand = cost[sub] + prev[mask ^ sub];
        if (cand < best) {
          best = cand;
          best_sub = sub;
        }
      }
      cur[mask] = best;
      parent[k][mask] = best_sub;
    }
    std::swap(prev, cur);
  }
  PartitionResult res;
  res.value = prev[full];
  std::uint32_t mask = full;
  for (int k = layers; k >= 1 && mask; --k) {
    std::uint32_t sub = parent[k][mask];
    if (sub == 0) continue;  // this layer reused the (k-1)-block solution
    std::vector<Complex> block;
    for (int i = 0; i < n; ++i)
      if (sub & (1u << i)) block.push_back(pts[i]);
    res.blocks.push_back(std::move(block));
    mask ^= sub;
  }
  if (mask) {  // remaining points ended in the k=0 state; shouldn't happen
    std::vector<Complex> block;
    for (int i = 0; i < n; ++i)
      if (mask & (1u << i)) block.push_back(pts[i]);
    res.blocks.push_back(std::move(block));
  }
  return res;
}

// ---------------------------------------------------------------------------
// heuristic c_d: seeded k-means++-style assignment plus local point moves
// ---------------------------------------------------------------------------

double partition_objective(const std::vector<std::vector<Complex>>& blocks) {
  double total = 0.0;
  for (const auto& b : blocks)
    if (!b.empty())
      total += min_enclosing_disk(std::span<const Complex>(b)).radius;
  return total;
}

// One clustering pass with exactly k seeds; merging beats splitting whenever
// blobs overlap, so the caller sweeps k = 1..d.
PartitionResult heuristic_partition_k(const std::vector<Complex>& pts, int d,
                                      std::uint64_t seed);

PartitionResult heuristic_partition(const std::vector<Complex>& pts, int d,
                                    std::uint64_t seed) {
  PartitionResult best;
  best.value = kInf;
  for (int k = 1; k <= d; ++k) {
    auto cand = heuristic_partition_k(pts, k, mix_keys(seed, k));
    if (cand.value < best.value) best = std::move(cand);
  }
  return best;
}

PartitionResult heuristic_partition_k(const std::vector<Complex>& pts, int d,
                                      std::uint64_t seed) {
  const std::size_t n = pts.size();
  const int restarts = n <= 200 ? 6 : 4;
  PartitionResult best;
  best.value = kInf;
  for (int r = 0; r < restarts; ++r) {
    auto rng = substream(seed, static_cast<std::uint64_t>(r));
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    // k-means++ style seeding on squared distances.
    std::vector<Complex> centers;
    centers.push_back(pts[rng() % n]);
    while (static_cast<int>(centers.size()) < d) {
      std::vector<double> d2(n);
      double total = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        double m = kInf;
        for (Complex c : centers) m = std::min(m, std::norm(pts[i] - c));
        d2[i] = m;
        total += m;
      }
      std::size_t pick = rng() % n;
      if (total > 0) {
        double t = u01(rng) * total, acc = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
          acc += d2[i];
          if (acc >= t) {
            pick = i;
            break;
          }
        }
      }
      centers.push_back(pts[pick]);
    }
    std::vector<int> assign(n, 0);
    double obj = kInf;
    std::vector<std::vector<Complex>> blocks(d);
    for (int round = 0; round < 12; ++round) {
      for (auto& b : blocks) b.clear();
      for (std::size_t i = 0; i < n; ++i) {
        int bestc = 0;
        double bestd = kInf;
        for (int c = 0; c < d; ++c) {
          double dist = std::abs(pts[i] - centers[c]);
          if (dist < bestd) {
            bestd = dist;
            bestc = c;
          }
        }
        assign[i] = bestc;
        blocks[bestc].push_back(pts[i]);
      }
      for (int c = 0; c < d; ++c)
        if (!blocks[c].empty())
          centers[c] =
              min_enclosing_disk(std::span<const Complex>(blocks[c])).center;
      double next = partition_objective(blocks);
      if (next >= obj - 1e-15) {
        obj = std::min(obj, next);
        break;
      }
      obj = next;
    }
    // Local point moves pay off for small sets; skip for bulk samples.
    if (n <= 64) {
      bool improved = true;
      int guard = 0;
      while (improved && guard++ < 200) {
        improved = false;
        for (std::size_t i = 0; i < n; ++i) {
          int from = assign[i];
          for (int to = 0; to < d; ++to) {
            if (to == from) continue;
            std::vector<std::vector<Complex>> trial = blocks;
            auto& src = trial[from];
            src.erase(std::find(src.begin(), src.end(), pts[i]));
            trial[to].push_back(pts[i]);
            double next = partition_objective(trial);
            if (next < obj - 1e-15) {
              blocks = std::move(trial);
              assign[i] = to;
              obj = next;
              improved = true;
              break;
            }
          }
        }
      }
    }
    if (obj < best.value) {
      best.value = obj;
      best.blocks.clear();
      for (auto& b : blocks)
        if (!b.empty()) best.blocks.push_back(b);
    }
  }
  return best;
}

Covering covering_from_blocks(const std::vector<std::vector<Complex>>& blocks) {
  Covering cov;
  for (const auto& b : blocks) {
    if (b.empty()) continue;
    cov.disks.push_back(min_enclosing_disk(std::span<const Complex>(b)));
    cov.total_radius += cov.disks.back().radius;
  }
  return cov;
}

double omega_impl(const CoveringProfile& profile, int d, double bracket_pow) {
  if (d < 1) throw ValidationError("d must be >= 1");
  if (profile.n_dedup <= d) return 0.0;
  double best = 0.0;
  // Interval (0, radii[0]) has M = |Z|; interval [radii[k], radii[k+1]) has
  // M = counts[k]. The sup over each interval is its right endpoint times
  // the bracket, and the final interval has M = 1 <= d.
  int m_prev = profile.n_dedup;
  for (std::size_t k = 0; k < profile.radii.size(); ++k) {
    if (m_prev > d)
      best = std::max(best,
                      profile.radii[k] * std::pow(m_prev - d, bracket_pow));
    m_prev = profile.counts[k];
  }
  return best;
}

}  // namespace

CoveringProfile covering_profile(const PointSet& Z) {
  auto pts = Z.deduplicated();
  CoveringProfile profile;
  profile.n_dedup = static_cast<int>(pts.size());
  if (pts.size() < 2) return profile;
  PointSet dedup{pts, Z.label};
  profile.radii = critical_radii(dedup);
  profile.counts.reserve(profile.radii.size());
  for (double r : profile.radii)
    profile.counts.push_back(covering_number(dedup, r).count);
  return profile;
}

CoveringCount covering_number(const PointSet& Z, double eps) {
  if (!(eps > 0.0)) throw ValidationError("eps must be positive");
  auto pts = Z.deduplicated();
  if (pts.empty()) return {0, true};
  if (pts.size() == 1) return {1, true};
  Complex dir;
  if (collinear(std::span<const Complex>(pts), &dir)) {
    std::vector<double> xs(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i)
      xs[i] = (pts[i] * std::conj(dir)).real();
    return {interval_sweep_count(std::move(xs), eps), true};
  }
  if (pts.size() <= kExactCoverLimit) return {exact_planar_count(pts, eps), true};
  return {greedy_planar_count(pts, eps), false};
}

std::vector<double> critical_radii(const PointSet& Z) {
  auto pts = Z.deduplicated();
  if (pts.size() < 2) return {};
  std::vector<double> radii;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j)
      radii.push_back(0.5 * std::abs(pts[i] - pts[j]));
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j)
      for (std::size_t k = j + 1; k < pts.size(); ++k)
        radii.push_back(min_disk_of_three(pts[i], pts[j], pts[k]).radius);
  std::sort(radii.begin(), radii.end());
  std::vector<double> out;
  for (double r : radii) {
    if (out.empty() || r - out.back() > 1e-12 * std::max(1.0, r))
      out.push_back(r);
  }
  return out;
}

CdResult c_d(const PointSet& Z, int d, CdMode mode, std::uint64_t seed) {
  if (d < 1) throw ValidationError("d must be >= 1");
  auto pts = Z.deduplicated();
  if (pts.empty()) throw ValidationError("empty set");
  CdResult res;
  if (static_cast<int>(pts.size()) <= d) {
    // One zero-radius disk per point (Prop-2.1 boundary).
    for (Complex p : pts) res.covering.disks.push_back(Disk{p, 0.0});
    res.value = 0.0;
    res.exact = true;
    return res;
  }
  if (mode == CdMode::Exact && pts.size() <= kExactCdLimit) {
    auto part = exact_partition(pts, d);
    res.value = part.value;
    res.covering = covering_from_blocks(part.blocks);
    res.exact = true;
    return res;
  }
  if (mode == CdMode::Exact)
    throw ValidationError(
        "exact c_d supports at most 12 distinct points; use heuristic mode");
  auto part = heuristic_partition(pts, d, seed);
  res.value = part.value;
  res.covering = covering_from_blocks(part.blocks);
  res.exact = false;
  return res;
}

RhoResult rho_d(const PointSet& Z, int d) {
  if (d < 1) throw ValidationError("d must be >= 1");
  auto pts = Z.deduplicated();
  if (static_cast<int>(pts.size()) <= d) return {0.0, 0.0};
  PointSet dedup{pts, Z.label};
  auto radii = critical_radii(dedup);
  // M(radii[i]) is nonincreasing in i; find the first index with M <= d.
  std::size_t lo = 0, hi = radii.size();
  while (lo < hi) {
    std::size_t mid = (lo + hi) / 2;
    if (covering_number(dedup, radii[mid]).count <= d)
      hi = mid;
    else
      lo = mid + 1;
  }
  if (lo == radii.size())
    throw ComputationError("no critical radius achieves M <= d");
  double eps0 = radii[lo];
  return {d * eps0, eps0};
}

RhoResult rho_d(const CoveringProfile& profile, int d) {
  if (d < 1) throw ValidationError("d must be >= 1");
  if (profile.n_dedup <= d) return {0.0, 0.0};
  for (std::size_t k = 0; k < profile.radii.size(); ++k)
    if (profile.counts[k] <= d) return {d * profile.radii[k], profile.radii[k]};
  throw ComputationError("no critical radius achieves M <= d");
}

double omega_cd(const PointSet& Z, int d) {
  return omega_impl(covering_profile(Z), d, 0.5);
}

double omega_d(const PointSet& Z, int d) {
  return omega_impl(covering_profile(Z), d, 1.0);
}

double omega_cd(const CoveringProfile& profile, int d) {
  return omega_impl(profile, d, 0.5);
}

double omega_d(const CoveringProfile& profile, int d) {
  return omega_impl(profile, d, 1.0);
}

double measure_lower_bound(double mu2) {
  if (mu2 < 0.0) throw ValidationError("area must be nonnegative");
  return std::sqrt(mu2 / std::numbers::pi);
}

InvariantReport invariant_report(const PointSet& Z, int d, CdMode mode,
                                 std::uint64_t seed,
                                 std::optional<double> mu2) {
  InvariantReport rep;
  rep.d = d;
  auto cd = c_d(Z, d, mode, seed);
  rep.c_d = cd.value;
  rep.c_d_is_exact = cd.exact;
  rep.witness_covering = cd.covering;
  auto profile = covering_profile(Z);
  auto rho = rho_d(profile, d);
  rep.rho_d = rho.rho;
  rep.epsilon0 = rho.epsilon0;
  rep.omega_cd = omega_cd(profile, d);
  rep.omega_d = omega_d(profile, d);
  rep.mu2 = mu2;
  return rep;
}

double c_d_lower_bound(const PointSet& Z, int d, std::uint64_t seed) {
  auto pts = Z.deduplicated();
  if (pts.empty()) throw ValidationError("empty set");
  if (pts.size() <= kExactCdLimit)
    return c_d(PointSet{pts, ""}, d, CdMode::Exact).value;
  // Exact value over a subsample is a lower bound (any cover of Z covers the
  // subsample); keep the best of a few seeded draws.
  double best = 0.0;
  for (int rep = 0; rep < 5; ++rep) {
    auto rng = substream(seed, 0xcd10u + rep);
    std::vector<Complex> pool = pts;
    for (std::size_t i = 0; i < kExactCdLimit; ++i) {
      std::size_t j = i + rng() % (pool.size() - i);
      std::swap(pool[i], pool[j]);
    }
    pool.resize(kExactCdLimit);
    best = std::max(best, c_d(PointSet{pool, ""}, d, CdMode::Exact).value);
  }
  return best;
}

}  // namespace rmz
