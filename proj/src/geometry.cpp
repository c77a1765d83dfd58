#include "rmz/geometry.hpp"

#include <algorithm>
#include <cmath>

#include "rmz/errors.hpp"
#include "rmz/rng.hpp"

namespace rmz {

std::vector<Complex> PointSet::deduplicated() const {
  std::vector<Complex> out = points;
  std::sort(out.begin(), out.end(), [](Complex a, Complex b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
  out.erase(std::unique(out.begin(), out.end(),
                        [](Complex a, Complex b) { return a == b; }),
            out.end());
  return out;
}

bool Covering::covers(std::span<const Complex> pts, double slack) const {
  for (Complex p : pts) {
    bool in = false;
    for (const Disk& d : disks)
      if (d.contains(p, slack)) {
        in = true;
        break;
      }
    if (!in) return false;
  }
  return true;
}

Disk disk_from_two(Complex a, Complex b) {
  return Disk{0.5 * (a + b), 0.5 * std::abs(a - b)};
}

std::optional<Disk> circumcircle(Complex a, Complex b, Complex c) {
  // Shift to a for conditioning.
  Complex u = b - a, v = c - a;
  double cross = u.real() * v.imag() - u.imag() * v.real();
  double scale = std::max({std::abs(u), std::abs(v), std::abs(u - v)});
  if (std::abs(cross) <= 1e-14 * scale * scale) return std::nullopt;
  double u2 = std::norm(u), v2 = std::norm(v);
  double cx = (v.imag() * u2 - u.imag() * v2) / (2.0 * cross);
  double cy = (u.real() * v2 - v.real() * u2) / (2.0 * cross);
  Complex center = a + Complex(cx, cy);
  double r = std::max({std::abs(center - a), std::abs(center - b),
                       std::abs(center - c)});
  return Disk{center, r};
}

Disk min_disk_of_three(Complex a, Complex b, Complex c) {
  Disk best{0.0, std::numeric_limits<double>::infinity()};
  const Complex p[3] = {a, b, c};
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j) {
      Disk d = disk_from_two(p[i], p[j]);
      if (d.contains(p[3 - i - j], 1e-12) && d.radius < best.radius) best = d;
    }
  if (std::isfinite(best.radius)) return best;
  auto cc = circumcircle(a, b, c);
  if (cc) return *cc;
  // Collinear: the farthest pair's disk contains the third point.
  best = disk_from_two(a, b);
  Disk d2 = disk_from_two(a, c), d3 = disk_from_two(b, c);
  if (d2.radius > best.radius) best = d2;
  if (d3.radius > best.radius) best = d3;
  return best;
}

namespace {

bool inside(const Disk& d, Complex p) {
  return std::abs(p - d.center) <= d.radius * (1.0 + 1e-12) + 1e-300;
}

Disk meb_two_fixed(std::span<const Complex> pts, std::size_t limit, Complex q1,
                   Complex q2) {
  Disk d = disk_from_two(q1, q2);
  for (std::size_t k = 0; k < limit; ++k) {
    if (!inside(d, pts[k])) {
      auto cc = circumcircle(q1, q2, pts[k]);
      d = cc ? *cc : min_disk_of_three(q1, q2, pts[k]);
    }
  }
  return d;
}

Disk meb_one_fixed(std::span<const Complex> pts, std::size_t limit, Complex q) {
  Disk d{q, 0.0};
  for (std::size_t j = 0; j < limit; ++j) {
    if (!inside(d, pts[j])) d = meb_two_fixed(pts, j, q, pts[j]);
  }
  return d;
}

}  // namespace

Disk min_enclosing_disk(std::span<const Complex> points) {
  if (points.empty()) throw ValidationError("empty set");
  std::vector<Complex> pts(points.begin(), points.end());
  // Deterministic shuffle keeps the expected-linear behaviour reproducible.
  auto rng = substream(0x5eb2f3a1u, pts.size());
  for (std::size_t i = pts.size(); i > 1; --i) {
    std::size_t j = rng() % i;
    std::swap(pts[i - 1], pts[j]);
  }
  Disk d{pts[0], 0.0};
  for (std::size_t i = 1; i < pts.size(); ++i) {
    if (!inside(d, pts[i])) d = meb_one_fixed(pts, i, pts[i]);
  }
  return d;
}

bool collinear(std::span<const Complex> pts, Complex* direction) {
  if (pts.size() <= 2) {
    if (direction) {
      Complex d = pts.size() == 2 ? pts[1] - pts[0] : Complex(1.0, 0.0);
      double n = std::abs(d);
      *direction = n > 0 ? d / n : Complex(1.0, 0.0);
    }
    return true;
  }
  // Direction from an approximate diameter: farthest point from pts[0],
  // then farthest point from that one (double sweep).
  std::size_t far1 = 0;
  for (std::size_t i = 1; i < pts.size(); ++i)
    if (std::abs(pts[i] - pts[0]) > std::abs(pts[far1] - pts[0])) far1 = i;
  std::size_t far2 = 0;
  for (std::size_t i = 0; i < pts.size(); ++i)
    if (std::abs(pts[i] - pts[far1]) > std::abs(pts[far2] - pts[far1]))
      far2 = i;
  Complex d = pts[far2] - pts[far1];
  double spread = std::abs(d);
  if (spread == 0.0) {  // all points identical
    if (direction) *direction = Complex(1.0, 0.0);
    return true;
  }
  Complex u = d / spread;
  for (Complex p : pts) {
    Complex rel = p - pts[far1];
    double perp = std::abs(rel.real() * u.imag() - rel.imag() * u.real());
    if (perp > 1e-12 * spread) return false;
  }
  if (direction) *direction = u;
  return true;
}

double segment_distance(Complex p, Complex a, Complex b) {
  Complex ab = b - a;
  double len2 = std::norm(ab);
  if (len2 == 0.0) return std::abs(p - a);
  double t = ((p - a).real() * ab.real() + (p - a).imag() * ab.imag()) / len2;
  t = std::clamp(t, 0.0, 1.0);
  return std::abs(p - (a + t * ab));
}

}  // namespace rmz
