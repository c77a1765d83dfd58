#include "rmz/chains.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <queue>
#include <sstream>

#include "rmz/remez.hpp"
#include "rmz/rng.hpp"

namespace rmz {

namespace {

std::string cstr(Complex z) {
  std::ostringstream os;
  os << z.real() << (z.imag() < 0 ? "-" : "+") << std::abs(z.imag()) << "i";
  return os.str();
}

double fiber_scale(const std::vector<Complex>& f) {
  double s = 1.0;
  for (Complex y : f) s = std::max(s, std::abs(y));
  return s;
}

// Midpoint of the overlap of two disks along the center line.
Complex overlap_midpoint(const Disk& a, const Disk& b) {
  double dist = std::abs(b.center - a.center);
  if (dist < 1e-15) return a.center;
  Complex u = (b.center - a.center) / dist;
  double lo = std::max(dist - b.radius, -a.radius);
  double hi = std::min(a.radius, dist + b.radius);
  return a.center + u * (0.5 * (lo + hi));
}

}  // namespace

GlobalConfiguration make_configuration(std::shared_ptr<const Curve> curve,
                                       int d1, PointSet Z, Complex x0,
                                       int hat_branch, int bar_branch) {
  if (d1 < 1) throw ValidationError("polynomial degree d1 must be >= 1");
  if (Z.empty()) throw ValidationError("empty set");
  GlobalConfiguration cfg;
  cfg.curve = curve;
  cfg.poly_degree_d1 = d1;
  cfg.sigma = curve->singular_locus();
  cfg.Z = std::move(Z);
  cfg.x0 = x0;
  Disk meb = min_enclosing_disk(cfg.Z);
  double safe = curve->safe_radius(meb.center);
  if (!(meb.radius < safe - curve->margin()))
    throw ValidationError(
        "Z does not fit in a singularity-free disk around its center");
  cfg.branch_hat = curve->germ_at(meb.center, hat_branch);
  cfg.branch_bar = curve->germ_at(x0, bar_branch);
  cfg.monodromy = curve->monodromy(meb.center);
  return cfg;
}

ChainValidation validate_chain(const Curve& curve, const Chain& chain,
                               const GlobalConfiguration* config) {
  ChainValidation val;
  auto issue = [&](int cond, int link, std::string msg) {
    val.issues.push_back({cond, link, std::move(msg)});
  };
  if (chain.links.empty()) {
    issue(0, -1, "chain has no links");
    return val;
  }
  const double margin = curve.margin();
  const auto& sigma = curve.singular_locus().points;

  for (std::size_t j = 0; j < chain.links.size(); ++j) {
    const ChainLink& link = chain.links[j];
    if (!(link.disk.radius > 0))
      issue(0, static_cast<int>(j), "disk radius must be positive");
    if (!(link.inner_radius_R1 > 0 && link.inner_radius_R1 < link.disk.radius))
      issue(0, static_cast<int>(j), "need 0 < R_(j,1) < R_j");
    if (!(link.inner_radius_Rp > 0 && link.inner_radius_Rp < link.disk.radius))
      issue(0, static_cast<int>(j), "need 0 < R'_j < R_j");
    for (Complex s : sigma)
      if (std::abs(link.disk.center - s) <= link.disk.radius + margin) {
        issue(0, static_cast<int>(j),
              "disk closure meets the singular locus near x=" + cstr(s));
        break;
      }
    if (std::abs(link.germ.base_x - link.disk.center) >
        link.disk.radius * (1 + 1e-9))
      issue(0, static_cast<int>(j), "germ base lies outside the disk");
    Polynomial uni = curve.Q().at_x(link.germ.base_x);
    if (std::abs(uni(link.germ.y_value)) >
        1e-10 * std::max(uni.eval_scale(link.germ.y_value), 1e-30))
      issue(0, static_cast<int>(j), "germ does not lie on the curve");
  }
  if (!val.issues.empty()) return val;  // geometry is broken, stop here

  const ChainLink& first = chain.links.front();
  const ChainLink& last = chain.links.back();

  // Condition 1: Z inside D^1_0, first germ matches h_hat.
  for (Complex z : chain.Z_anchor.points)
    if (std::abs(z - first.disk.center) >
        first.inner_radius_R1 * (1 + 1e-9) + 1e-15) {
      issue(1, 0, "anchor set leaves D^1_0");
      break;
    }
  if (config) {
    if (std::abs(config->branch_hat.base_x - first.disk.center) >
        first.disk.radius * (1 + 1e-9)) {
      issue(1, 0, "h_hat germ base lies outside D_0");
    } else {
      auto moved = curve.continue_along(
          config->branch_hat, {config->branch_hat.base_x, first.germ.base_x},
          PathCheck::PreValidated);
      double ys = fiber_scale({moved.y_value, first.germ.y_value});
      if (std::abs(moved.y_value - first.germ.y_value) > 1e-8 * ys)
        issue(1, 0, "first germ disagrees with h_hat");
    }
  }

  // Condition 2: x0 inside D'_m, last germ matches h_bar.
  if (std::abs(chain.target_x0 - last.disk.center) >
      last.inner_radius_Rp * (1 + 1e-9))
    issue(2, static_cast<int>(chain.links.size()) - 1, "x0 leaves D'_m");
  if (config) {
    auto moved =
        curve.continue_along(last.germ, {last.germ.base_x, chain.target_x0},
                             PathCheck::PreValidated);
    double ys = fiber_scale({moved.y_value, config->branch_bar.y_value});
    if (std::abs(moved.y_value - config->branch_bar.y_value) > 1e-8 * ys)
      issue(2, static_cast<int>(chain.links.size()) - 1,
            "last germ disagrees with h_bar at x0");
  }

  // Condition 3: consecutive overlaps and branch agreement.
  for (std::size_t j = 0; j + 1 < chain.links.size(); ++j) {
    const ChainLink& a = chain.links[j];
    const ChainLink& b = chain.links[j + 1];
    double dist = std::abs(a.disk.center - b.disk.center);
    if (dist >= a.disk.radius + b.disk.radius - 1e-12) {
      issue(3, static_cast<int>(j), "consecutive disks do not overlap");
      continue;
    }
    if (dist >= a.inner_radius_Rp + b.disk.radius - 1e-12)
      issue(3, static_cast<int>(j), "D'_j does not reach D_(j+1)");
    if (dist >= b.inner_radius_R1 + a.inner_radius_Rp - 1e-12)
      issue(3, static_cast<int>(j),
            "lens D^1_(j+1) cap D'_j is empty (no c_j invariant)");
    Complex w = overlap_midpoint(a.disk, b.disk);
    auto ga = curve.continue_along(a.germ, {a.germ.base_x, w},
                                   PathCheck::PreValidated);
    auto gb = curve.continue_along(b.germ, {b.germ.base_x, w},
                                   PathCheck::PreValidated);
    double ys = fiber_scale({ga.y_value, gb.y_value});
    if (std::abs(ga.y_value - gb.y_value) > 1e-8 * ys)
      issue(3, static_cast<int>(j),
            "branches disagree over the overlap of links " +
                std::to_string(j) + " and " + std::to_string(j + 1));
  }
  return val;
}

double lens_c_invariant(const Disk& diskA, const Disk& diskB, int d1,
                        int n_samples, std::uint64_t seed) {
  if (d1 < 1) throw ValidationError("d1 must be >= 1");
  if (n_samples < 1) throw ValidationError("need at least one sample");
  double dist = std::abs(diskA.center - diskB.center);
  double scale = std::max({1.0, diskA.radius, diskB.radius});
  if (dist >= diskA.radius + diskB.radius - 1e-12 * scale)
    throw ValidationError("empty lens");
  const Disk& small = diskA.radius <= diskB.radius ? diskA : diskB;
  const Disk& other = diskA.radius <= diskB.radius ? diskB : diskA;

  std::vector<Complex> accepted;
  const long max_attempts = 1000 + 400L * n_samples;
  for (long i = 0; i < max_attempts &&
                   accepted.size() < static_cast<std::size_t>(n_samples);
       ++i) {
    auto rng = substream(seed, static_cast<std::uint64_t>(i), 0x1e45u);
    Complex p = uniform_in_disk(rng, small.center, small.radius);
    if (std::abs(p - other.center) <= other.radius) accepted.push_back(p);
  }
  if (accepted.empty()) throw ValidationError("empty lens");
  if (static_cast<int>(accepted.size()) <= d1) return 0.0;  // degenerate

  // Residue-class subsamples are prefix-stable: growing the sample can only
  // extend each class, so the value is nondecreasing under nested seeding.
  double best = 0.0;
  const int classes = 5;
  for (int r = 0; r < classes; ++r) {
    std::vector<Complex> sub;
    for (std::size_t i = r; i < accepted.size(); i += classes) {
      sub.push_back(accepted[i]);
      if (sub.size() == kExactCdLimit) break;
    }
    if (sub.empty()) continue;
    best = std::max(best, c_d(PointSet{sub, ""}, d1, CdMode::Exact).value);
  }
  return best;
}

namespace {

struct RadiiContext {
  const Chain* chain;
  int d, d1;
  std::uint64_t seed;
  std::map<std::tuple<int, int, int>, double> lens_cache;

  double lens_c(int j, double frac1_j, double fracp_prev) {
    int k1 = static_cast<int>(std::lround(frac1_j * 1000));
    int kp = static_cast<int>(std::lround(fracp_prev * 1000));
    auto key = std::make_tuple(j, k1, kp);
    auto it = lens_cache.find(key);
    if (it != lens_cache.end()) return it->second;
    const auto& links = chain->links;
    Disk inner{links[j].disk.center, frac1_j * links[j].disk.radius};
    Disk prev{links[j - 1].disk.center, fracp_prev * links[j - 1].disk.radius};
    double value;
    try {
      value = lens_c_invariant(inner, prev, d1, 200, mix_keys(seed, 7919 * j));
    } catch (const ValidationError&) {
      value = -1.0;  // infeasible lens
    }
    lens_cache.emplace(key, value);
    return value;
  }

  // Per-link factors for fraction vectors f1, fp; empty when infeasible.
  std::vector<double> factors(const std::vector<double>& f1,
                              const std::vector<double>& fp,
                              std::vector<double>* c_out) {
    const auto& links = chain->links;
    const int m = static_cast<int>(links.size()) - 1;
    for (Complex z : chain->Z_anchor.points)
      if (std::abs(z - links[0].disk.center) >
          f1[0] * links[0].disk.radius * (1 + 1e-9) + 1e-15)
        return {};
    if (std::abs(chain->target_x0 - links[m].disk.center) >
        fp[m] * links[m].disk.radius * (1 + 1e-9))
      return {};
    for (int j = 0; j + 1 <= m; ++j) {
      double dist = std::abs(links[j].disk.center - links[j + 1].disk.center);
      if (dist >= fp[j] * links[j].disk.radius + links[j + 1].disk.radius)
        return {};
      if (dist >= f1[j + 1] * links[j + 1].disk.radius +
                      fp[j] * links[j].disk.radius - 1e-12)
        return {};
    }
    std::vector<double> out;
    if (c_out) c_out->clear();
    for (int j = 0; j <= m; ++j) {
      double factor =
          std::pow(sigma(f1[j], fp[j]), static_cast<double>(d) * d1);
      if (j >= 1) {
        double c = lens_c(j, f1[j], fp[j - 1]);
        if (c <= 0) return {};
        if (c_out) c_out->push_back(c);
        factor *= std::pow(kSixE * links[j].disk.radius / c, d1);
      }
      out.push_back(factor);
    }
    return out;
  }
};

double product(const std::vector<double>& v) {
  double p = 1.0;
  for (double x : v) p *= x;
  return p;
}

double log_product(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += std::log(x);
  return s;
}

}  // namespace

ChainConstantReport chain_constant(const Curve& curve, const Chain& chain,
                                   int d, int d1, bool optimize,
                                   std::uint64_t seed) {
  if (d < 1 || d1 < 1) throw ValidationError("need d >= 1 and d1 >= 1");
  auto val = validate_chain(curve, chain, nullptr);
  if (!val.ok())
    throw ValidationError("chain invalid: " + val.issues.front().message);

  const int m = static_cast<int>(chain.links.size()) - 1;
  RadiiContext ctx{&chain, d, d1, seed, {}};
  std::vector<double> f1(m + 1), fp(m + 1);
  for (int j = 0; j <= m; ++j) {
    f1[j] = chain.links[j].inner_radius_R1 / chain.links[j].disk.radius;
    fp[j] = chain.links[j].inner_radius_Rp / chain.links[j].disk.radius;
  }
  std::vector<double> c_vals;
  auto factors = ctx.factors(f1, fp, &c_vals);
  if (factors.empty())
    throw ComputationError(
        "no feasible radii: the stored chain radii violate the "
        "overlap/containment constraints");

  if (optimize) {
    std::vector<double> grid;
    for (double g = 0.50; g <= 0.951; g += 0.05) grid.push_back(g);
    double best = log_product(factors);
    for (int sweep = 0; sweep < 4; ++sweep) {
      bool improved = false;
      for (int j = 0; j <= m; ++j) {
        for (int which = 0; which < 2; ++which) {
          auto& vec = which == 0 ? f1 : fp;
          double best_val = vec[j];
          for (double g : grid) {
            vec[j] = g;
            auto cand = ctx.factors(f1, fp, nullptr);
            if (cand.empty()) continue;
            double lk = log_product(cand);
            if (lk < best - 1e-12) {
              best = lk;
              best_val = g;
              improved = true;
            }
          }
          vec[j] = best_val;
        }
      }
      if (!improved) break;
    }
    factors = ctx.factors(f1, fp, &c_vals);
    if (factors.empty())
      throw ComputationError("radius optimization lost feasibility");
  }

  ChainConstantReport rep;
  rep.per_link_factors = factors;
  rep.K_value = product(factors);
  rep.log_K = log_product(factors);
  for (int j = 0; j <= m; ++j)
    rep.chosen_radii.emplace_back(f1[j] * chain.links[j].disk.radius,
                                  fp[j] * chain.links[j].disk.radius);
  rep.lens_c_values = c_vals;
  return rep;
}

void apply_radii(Chain& chain, const ChainConstantReport& report) {
  if (report.chosen_radii.size() != chain.links.size())
    throw ValidationError("radii report does not match the chain length");
  for (std::size_t j = 0; j < chain.links.size(); ++j) {
    chain.links[j].inner_radius_R1 = report.chosen_radii[j].first;
    chain.links[j].inner_radius_Rp = report.chosen_radii[j].second;
  }
}

// ---------------------------------------------------------------------------
// chain search
// ---------------------------------------------------------------------------

namespace {

// Waypoints from a to b that keep clear of the singular locus.
void repelled_corridor(const Curve& curve, Complex a, Complex b, int depth,
                       std::vector<Complex>& out) {
  const auto& sigma = curve.singular_locus().points;
  Complex offender(0, 0);
  double clearance_needed = 0.0;
  double worst_severity = 0.0;
  for (Complex s : sigma) {
    double nearest_other = std::numeric_limits<double>::infinity();
    for (Complex t : sigma) {
      double dd = std::abs(t - s);
      if (dd > 1e-12) nearest_other = std::min(nearest_other, dd);
    }
    double want =
        std::min({0.45 * nearest_other, 0.35 * std::abs(b - a),
                  0.25 * std::max(std::abs(a - s), std::abs(b - s))});
    want = std::max(want, 5 * curve.margin());
    double severity = want - segment_distance(s, a, b);
    if (severity > worst_severity) {
      worst_severity = severity;
      offender = s;
      clearance_needed = want;
    }
  }
  if (worst_severity <= 0.0 || depth >= 4) {
    out.push_back(b);
    return;
  }
  Complex ab = b - a;
  double len = std::abs(ab);
  Complex u = len > 0 ? ab / len : Complex(1, 0);
  double t = std::clamp(((offender - a) * std::conj(u)).real(), 0.0, len);
  Complex closest = a + t * u;
  Complex away = closest - offender;
  if (std::abs(away) < 1e-12) away = Complex(-u.imag(), u.real());
  away /= std::abs(away);
  Complex w = offender + 1.3 * clearance_needed * away;
  repelled_corridor(curve, a, w, depth + 1, out);
  repelled_corridor(curve, w, b, depth + 1, out);
}

std::vector<Complex> plan_corridor(const Curve& curve, Complex a, Complex b) {
  std::vector<Complex> path{a};
  repelled_corridor(curve, a, b, 0, path);
  return path;
}

// Loop polyline around `sing` based at `base`: radius_factor 1 circles
// through the basepoint, otherwise radial legs reach the circle first.
std::vector<Complex> detour_loop(Complex base, Complex sing,
                                 double radius_factor, bool clockwise) {
  double r = std::abs(base - sing) * radius_factor;
  std::vector<Complex> path;
  double theta0 = std::arg(base - sing);
  const int steps = 72;
  path.push_back(base);
  if (radius_factor != 1.0) path.push_back(sing + std::polar(r, theta0));
  for (int k = 1; k <= steps; ++k) {
    double ang = theta0 +
                 (clockwise ? -1.0 : 1.0) * 2.0 * std::numbers::pi * k / steps;
    path.push_back(sing + std::polar(r, ang));
  }
  if (radius_factor != 1.0) path.push_back(sing + std::polar(r, theta0));
  path.push_back(base);
  return path;
}

double path_length(const std::vector<Complex>& p) {
  double len = 0.0;
  for (std::size_t i = 0; i + 1 < p.size(); ++i)
    len += std::abs(p[i + 1] - p[i]);
  return len;
}

Complex point_at_arclength(const std::vector<Complex>& p, double s) {
  for (std::size_t i = 0; i + 1 < p.size(); ++i) {
    double seg = std::abs(p[i + 1] - p[i]);
    if (s <= seg || i + 2 == p.size())
      return p[i] +
             (seg > 0 ? std::min(s, seg) / seg : 0.0) * (p[i + 1] - p[i]);
    s -= seg;
  }
  return p.back();
}

// The exact stretch of the polyline between two arclengths (keeps corners).
std::vector<Complex> subpath_between(const std::vector<Complex>& p, double a0,
                                     double a1) {
  std::vector<Complex> out{point_at_arclength(p, a0)};
  double acc = 0.0;
  for (std::size_t i = 0; i + 1 < p.size(); ++i) {
    double seg = std::abs(p[i + 1] - p[i]);
    double next = acc + seg;
    if (next > a0 && next < a1) out.push_back(p[i + 1]);
    acc = next;
    if (acc >= a1) break;
  }
  out.push_back(point_at_arclength(p, a1));
  return out;
}

}  // namespace

SearchResult search_chain(const GlobalConfiguration& config,
                          std::uint64_t seed) {
  const Curve& curve = *config.curve;
  const auto& sigma = curve.singular_locus().points;
  Disk meb = min_enclosing_disk(config.Z);
  Complex c0 = meb.center;
  Complex x0 = config.x0;

  auto disk_radius_at = [&](Complex c) {
    double safe = curve.safe_radius(c);
    if (std::isinf(safe))
      return std::max({1.0, 2.5 * meb.radius, 1.2 * std::abs(x0 - c0)});
    return 0.9 * safe;
  };

  std::vector<Complex> path = plan_corridor(curve, c0, x0);
  curve.validate_path(path);
  BranchGerm hat_at_c0 = curve.continue_along(
      config.branch_hat, {config.branch_hat.base_x, c0}, PathCheck::Strict);
  BranchGerm arrival = curve.continue_along(hat_at_c0, path);
  auto fiber_x0 = curve.fiber(x0);
  double ys = fiber_scale(fiber_x0);
  auto index_of = [&](Complex y) {
    for (std::size_t k = 0; k < fiber_x0.size(); ++k)
      if (std::abs(y - fiber_x0[k]) <= 1e-8 * ys) return static_cast<int>(k);
    throw ComputationError("branch value does not match the fiber at x0");
  };
  int have = index_of(arrival.y_value);
  int want = index_of(config.branch_bar.y_value);

  std::vector<std::pair<std::size_t, bool>> word;  // (sigma index, clockwise)
  if (have != want) {
    if (sigma.empty())
      throw ComputationError(
          "unreachable branch: no singularities to loop around");
    std::vector<std::vector<int>> perms, inv_perms;
    for (Complex s : sigma) {
      auto loop = detour_loop(x0, s, 1.0, false);
      try {
        curve.validate_path(loop);
      } catch (const ValidationError&) {
        loop = curve.standard_loop(x0, s);
        curve.validate_path(loop);
      }
      std::vector<int> perm(fiber_x0.size());
      for (std::size_t j = 0; j < fiber_x0.size(); ++j) {
        auto end = curve.continue_along(
            BranchGerm{x0, fiber_x0[j], static_cast<int>(j)}, loop,
            PathCheck::PreValidated);
        perm[j] = index_of(end.y_value);
      }
      std::vector<int> inv(perm.size());
      for (std::size_t j = 0; j < perm.size(); ++j) inv[perm[j]] = j;
      perms.push_back(std::move(perm));
      inv_perms.push_back(std::move(inv));
    }
    std::vector<int> prev_state(fiber_x0.size(), -1);
    std::vector<std::pair<std::size_t, bool>> prev_move(fiber_x0.size());
    std::queue<int> q;
    q.push(have);
    prev_state[have] = have;
    while (!q.empty() && prev_state[want] < 0) {
      int cur = q.front();
      q.pop();
      for (std::size_t g = 0; g < perms.size(); ++g)
        for (bool cw : {false, true}) {
          int nxt = cw ? inv_perms[g][cur] : perms[g][cur];
          if (prev_state[nxt] < 0) {
            prev_state[nxt] = cur;
            prev_move[nxt] = {g, cw};
            q.push(nxt);
          }
        }
    }
    if (prev_state[want] < 0)
      throw ComputationError(
          "unreachable branch: h_hat and h_bar lie in different monodromy "
          "orbits");
    for (int cur = want; cur != have; cur = prev_state[cur])
      word.push_back(prev_move[cur]);
    std::reverse(word.begin(), word.end());
  }

  SearchResult best;
  bool found = false;
  double best_log_k = std::numeric_limits<double>::infinity();

  const double spacing_options[] = {0.5, 0.35};
  const double loop_factor_options[] = {1.0, 0.8, 1.25};
  for (double spacing : spacing_options) {
    for (double loop_factor : loop_factor_options) {
      try {
        std::vector<Complex> full = path;
        for (auto [g, cw] : word) {
          auto loop = detour_loop(x0, sigma[g], loop_factor, cw);
          try {
            curve.validate_path(loop);
          } catch (const ValidationError&) {
            loop = curve.standard_loop(x0, sigma[g]);
            if (cw) std::reverse(loop.begin(), loop.end());
          }
          full.insert(full.end(), loop.begin() + 1, loop.end());
        }
        curve.validate_path(full);

        // Disk centers along the path, spaced for lens feasibility.
        const double total = path_length(full);
        std::vector<std::pair<Complex, double>> centers{{c0, 0.0}};
        double s = 0.0;
        while (true) {
          Complex cur = centers.back().first;
          double r_cur = disk_radius_at(cur);
          double s_next = s + spacing * r_cur;
          if (s_next >= total) break;
          Complex cand = point_at_arclength(full, s_next);
          double r_next = disk_radius_at(cand);
          int shrink = 0;
          while (std::abs(cand - cur) > 0.45 * (r_cur + r_next) &&
                 shrink++ < 40) {
            s_next = s + (s_next - s) * 0.7;
            cand = point_at_arclength(full, s_next);
            r_next = disk_radius_at(cand);
          }
          if (std::abs(cand - cur) > 1e-9) centers.push_back({cand, s_next});
          s = s_next;
        }
        if (std::abs(centers.back().first - x0) > 1e-12)
          centers.push_back({x0, total});
        // Subdivide any remaining wide gaps.
        for (int pass = 0; pass < 20; ++pass) {
          bool split = false;
          for (std::size_t j = 0; j + 1 < centers.size(); ++j) {
            double ra = disk_radius_at(centers[j].first);
            double rb = disk_radius_at(centers[j + 1].first);
            if (std::abs(centers[j].first - centers[j + 1].first) >
                0.45 * (ra + rb)) {
              double mid = 0.5 * (centers[j].second + centers[j + 1].second);
              centers.insert(centers.begin() + j + 1,
                             {point_at_arclength(full, mid), mid});
              split = true;
              break;
            }
          }
          if (!split) break;
        }

        Chain chain;
        chain.Z_anchor = config.Z;
        chain.target_x0 = x0;
        BranchGerm germ = hat_at_c0;
        for (std::size_t j = 0; j < centers.size(); ++j) {
          if (j > 0) {
            auto seg =
                subpath_between(full, centers[j - 1].second, centers[j].second);
            germ = curve.continue_along(germ, seg, PathCheck::PreValidated);
          }
          double r = disk_radius_at(centers[j].first);
          ChainLink link;
          link.disk = Disk{centers[j].first, r};
          link.germ = germ;
          link.inner_radius_R1 = 0.5 * r;
          link.inner_radius_Rp = 0.7 * r;
          chain.links.push_back(link);
        }
        {
          ChainLink& l0 = chain.links.front();
          double need = 0.0;
          for (Complex z : config.Z.points)
            need = std::max(need, std::abs(z - l0.disk.center));
          double want_r1 = need * 1.02 + curve.margin();
          if (want_r1 > 0.95 * l0.disk.radius)
            throw ComputationError(
                "anchor set does not fit in the first disk");
          l0.inner_radius_R1 = std::max(l0.inner_radius_R1, want_r1);
          ChainLink& lm = chain.links.back();
          double want_rp =
              std::abs(x0 - lm.disk.center) * 1.02 + curve.margin();
          lm.inner_radius_Rp = std::max(
              lm.inner_radius_Rp, std::min(0.95 * lm.disk.radius, want_rp));
        }

        auto validation = validate_chain(curve, chain, &config);
        if (!validation.ok()) continue;
        auto quick = chain_constant(curve, chain, curve.degree(),
                                    config.poly_degree_d1, false,
                                    mix_keys(seed, 1));
        if (quick.log_K < best_log_k) {
          best_log_k = quick.log_K;
          best.chain = chain;
          found = true;
        }
      } catch (const std::exception&) {
        continue;  // candidate failed; try the next geometry
      }
    }
  }
  if (!found)
    throw ComputationError("no chain found (K(S) not bounded by this search)");
  best.report = chain_constant(curve, best.chain, curve.degree(),
                               config.poly_degree_d1, true, mix_keys(seed, 2));
  apply_radii(best.chain, best.report);
  auto final_check = validate_chain(curve, best.chain, &config);
  if (!final_check.ok())
    throw ComputationError("optimized chain failed validation: " +
                           final_check.issues.front().message);
  return best;
}

CurveRemezCertificate verify_local_remez(std::shared_ptr<const Curve> curve,
                                         const BivariatePolynomial& P,
                                         const BranchGerm& germ,
                                         const PointSet& Z, double R1,
                                         double Rp, std::uint64_t seed) {
  Complex x0 = germ.base_x;
  double R = curve->safe_radius(x0);
  if (!(R1 > 0 && R1 < R)) throw ValidationError("need 0 < R1 < safe radius");
  if (!(Rp > 0 && Rp < R)) throw ValidationError("need 0 < R' < safe radius");
  double reach = std::max(R1, Rp);
  if (reach > R - 2 * curve->margin())
    throw ValidationError("R1/R' leave no singularity margin");
  for (Complex z : Z.points)
    if (std::abs(z - x0) > R1 * (1 + 1e-9))
      throw ValidationError("Z must lie in D_R1(x0)");
  int d1 = P.total_degree();
  if (d1 < 1) throw ValidationError("polynomial must have positive degree");
  if (Z.deduplicated().size() <= static_cast<std::size_t>(d1))
    throw ValidationError(
        "c_d1(Z) vanishes (Prop 2.1): need more than d1 points");
  double c = c_d_lower_bound(Z, d1, seed);

  auto g = branch_restriction(curve, germ, P, Disk{x0, reach});
  double max_rp =
      boundary_max([&](Complex x) { return g->value(x); }, Disk{x0, Rp}, 2048,
                   Exec::Serial)
          .max_value;
  double max_z = 0.0;
  for (Complex z : Z.points) max_z = std::max(max_z, std::abs(g->value(z)));
  if (max_z <= 0.0) throw ComputationError("g vanishes identically on Z");

  CurveRemezCertificate cert;
  cert.d = curve->degree();
  cert.d1 = d1;
  cert.R = R;
  cert.R1 = R1;
  cert.Rp = Rp;
  cert.c = c;
  cert.bound =
      std::pow(sigma(R1 / R, Rp / R), static_cast<double>(cert.d) * d1) *
      std::pow(kSixE * R / c, d1);
  cert.observed_ratio = max_rp / max_z;
  cert.holds = cert.observed_ratio <= cert.bound * (1 + 1e-9);
  cert.slack = cert.bound / cert.observed_ratio;
  return cert;
}

GlobalRemezCertificate verify_global_remez(const GlobalConfiguration& config,
                                           const BivariatePolynomial& P,
                                           const Chain& chain,
                                           std::uint64_t seed,
                                           const ChainConstantReport* precomputed) {
  const Curve& curve = *config.curve;
  auto val = validate_chain(curve, chain, &config);
  if (!val.ok())
    throw ValidationError("chain invalid: " + val.issues.front().message);
  if (chain.Z_anchor.size() != config.Z.size())
    throw ValidationError("chain anchor does not match the configuration Z");
  int d1 = config.poly_degree_d1;
  if (P.total_degree() > d1)
    throw ValidationError("polynomial degree exceeds the configuration d1");
  if (config.Z.deduplicated().size() <= static_cast<std::size_t>(d1))
    throw ValidationError("c_d1(Z) vanishes (Prop 2.1)");
  int d = curve.degree();
  double c = c_d_lower_bound(config.Z, d1, seed);

  ChainConstantReport report =
      precomputed ? *precomputed
                  : chain_constant(curve, chain, d, d1, false, seed);
  if (report.per_link_factors.size() != chain.links.size())
    throw ValidationError("chain-constant report does not match the chain");

  const ChainLink& l0 = chain.links.front();
  auto ghat = branch_restriction(config.curve, l0.germ, P,
                                 Disk{l0.disk.center, l0.inner_radius_R1});
  double max_z = 0.0;
  for (Complex z : config.Z.points)
    max_z = std::max(max_z, std::abs(ghat->value(z)));
  if (max_z <= 0.0) throw ComputationError("g_hat vanishes identically on Z");

  const ChainLink& lm = chain.links.back();
  auto bar = curve.continue_along(lm.germ, {lm.germ.base_x, config.x0},
                                  PathCheck::PreValidated);
  double g_x0 = std::abs(P.eval(config.x0, bar.y_value));

  GlobalRemezCertificate cert;
  cert.d = d;
  cert.d1 = d1;
  cert.c = c;
  cert.K = report.K_value;
  cert.log_K = report.log_K;
  cert.cartan_factor = std::pow(kSixE * l0.disk.radius / c, d1);
  cert.max_on_Z = max_z;
  cert.g_at_x0 = g_x0;
  // Chain constants overflow doubles easily; the certificate lives in logs.
  double log_cartan = d1 * std::log(kSixE * l0.disk.radius / c);
  cert.log_bound = report.log_K + log_cartan + std::log(max_z);
  cert.bound = std::exp(cert.log_bound);
  double log_g = std::log(std::max(g_x0, 1e-300));
  cert.holds = log_g <= cert.log_bound + 1e-9;
  cert.log_slack = cert.log_bound - log_g;
  cert.slack = std::exp(cert.log_slack);

  // Chaining the per-link bounds reproduces the global constant exactly up
  // to summation order of the logs.
  double link_log_sum = log_cartan;
  for (double f : report.per_link_factors) link_log_sum += std::log(f);
  double global_log = report.log_K + log_cartan;
  cert.composition_residual = std::abs(link_log_sum - global_log) /
                              std::max({std::abs(global_log),
                                        std::abs(link_log_sum), 1.0});
  if (cert.composition_residual > 1e-9)
    throw ComputationError("composition identity violated");
  return cert;
}

}  // namespace rmz
