#include "rmz/asymptotics.hpp"

#include <cmath>
#include <map>

#include "rmz/errors.hpp"

namespace rmz {

long zr_covering_count(int r, double eps) {
  if (r < 1) throw ValidationError("r must be >= 1");
  if (!(eps > 0.0)) throw ValidationError("eps must be positive");
  long count = 0;
  double v = 1.0;  // largest uncovered point
  while (v > 2.0 * eps) {
    ++count;
    double bound = v - 2.0 * eps;  // [bound, v] is covered (closed interval)
    // Next uncovered point: the largest k^-r strictly below `bound`.
    double kd = std::pow(bound, -1.0 / static_cast<double>(r));
    if (kd > 9e15) {
      // Indices past 2^53: the points are denser than double resolution, so
      // the next point is `bound` itself to working precision.
      v = bound * (1.0 - 1e-12);
      continue;
    }
    double k = std::floor(kd) + 1.0;
    while (std::pow(k, -static_cast<double>(r)) >= bound) k += 1.0;
    v = std::pow(k, -static_cast<double>(r));
  }
  return count + 1;  // one closed interval covers the remaining (0, v]
}

double zr_min_eps(int r, long m) {
  if (m < 1) throw ValidationError("m must be >= 1");
  double lo = 0.0, hi = 0.5;  // M(0.5) = 1
  for (int it = 0; it < 200 && hi - lo > 1e-18 * hi; ++it) {
    double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (zr_covering_count(r, mid) <= m)
      hi = mid;
    else
      lo = mid;
  }
  return hi;
}

namespace {

double zr_omega_impl(int r, int d, double bracket_pow) {
  if (d < 1) throw ValidationError("d must be >= 1");
  // Terms decay like m^{-(r+1)+bracket} past the argmax; stop after a long
  // run below half the incumbent.
  double best = 0.0;
  int below = 0;
  const long m_cap = 16L * d + 4096;
  for (long m = d + 1; m <= m_cap; ++m) {
    double eps_drop = zr_min_eps(r, m - 1);
    double term = eps_drop * std::pow(static_cast<double>(m - d), bracket_pow);
    if (term > best) {
      best = term;
      below = 0;
    } else if (m > d + 8 && term < 0.4 * best) {
      if (++below >= 40) break;
    } else {
      below = 0;
    }
  }
  return best;
}

}  // namespace

double zr_omega_d(int r, int d) { return zr_omega_impl(r, d, 1.0); }

double zr_omega_cd(int r, int d) { return zr_omega_impl(r, d, 0.5); }

std::vector<AsymptoticsRow> zr_table(const std::vector<int>& rs,
                                     const std::vector<int>& ds, Exec exec) {
  std::vector<std::pair<int, int>> jobs;
  for (int r : rs)
    for (int d : ds) jobs.emplace_back(r, d);
  std::vector<AsymptoticsRow> rows;
  map_index(exec, jobs.size(), rows, [&](std::size_t i) {
    auto [r, d] = jobs[i];
    return AsymptoticsRow{r, d, zr_omega_d(r, d), zr_omega_cd(r, d)};
  });
  return rows;
}

std::vector<SlopeFit> fit_slopes(const std::vector<AsymptoticsRow>& rows) {
  std::map<int, std::vector<std::pair<double, std::pair<double, double>>>> by_r;
  for (const auto& row : rows)
    by_r[row.r].push_back(
        {std::log(static_cast<double>(row.d)),
         {std::log(row.omega_d), std::log(row.omega_cd)}});
  std::vector<SlopeFit> fits;
  for (const auto& [r, pts] : by_r) {
    if (pts.size() < 2)
      throw ValidationError("need at least two d values to fit a slope");
    double n = static_cast<double>(pts.size());
    double sx = 0, sxx = 0, sy1 = 0, sxy1 = 0, sy2 = 0, sxy2 = 0;
    for (const auto& [x, ys] : pts) {
      sx += x;
      sxx += x * x;
      sy1 += ys.first;
      sxy1 += x * ys.first;
      sy2 += ys.second;
      sxy2 += x * ys.second;
    }
    double denom = n * sxx - sx * sx;
    fits.push_back(SlopeFit{r, (n * sxy1 - sx * sy1) / denom,
                            (n * sxy2 - sx * sy2) / denom});
  }
  return fits;
}

}  // namespace rmz
