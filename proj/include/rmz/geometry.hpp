#pragma once

#include <complex>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace rmz {

using Complex = std::complex<double>;

struct Disk {
  Complex center{0.0, 0.0};
  double radius = 0.0;  // >= 0; disks are closed

  bool contains(Complex p, double slack = 1e-12) const {
    return std::abs(p - center) <= radius + slack * std::max(1.0, radius);
  }
};

// Finite multiset of plane points. Invariant computations run on the
// deduplicated set (exact equality; callers pre-snap if they need fuzz).
struct PointSet {
  std::vector<Complex> points;
  std::string label;

  bool empty() const { return points.empty(); }
  std::size_t size() const { return points.size(); }

  std::vector<Complex> deduplicated() const;
};

struct Covering {
  std::vector<Disk> disks;
  double total_radius = 0.0;

  bool covers(std::span<const Complex> pts, double slack = 1e-12) const;
};

// Smallest closed disk containing all points, Welzl move-to-front.
// Optimal to ~1e-12 relative radius; throws ValidationError on empty input.
Disk min_enclosing_disk(std::span<const Complex> points);
inline Disk min_enclosing_disk(const PointSet& ps) {
  return min_enclosing_disk(std::span<const Complex>(ps.points));
}

// Circumcircle helpers used by the covering module's candidate sets.
Disk disk_from_two(Complex a, Complex b);
// Circle through three points; nullopt when (near-)collinear.
std::optional<Disk> circumcircle(Complex a, Complex b, Complex c);
// MEB of exactly three points (handles the obtuse/collinear cases).
Disk min_disk_of_three(Complex a, Complex b, Complex c);

// True when all points lie on one line within 1e-12 * spread. Fills
// direction (unit) when non-degenerate; collinear holds trivially for n <= 2.
bool collinear(std::span<const Complex> pts, Complex* direction = nullptr);

// Distance from point p to segment [a, b].
double segment_distance(Complex p, Complex a, Complex b);

}  // namespace rmz
