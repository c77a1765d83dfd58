#pragma once

#include <vector>

#include "rmz/parallel.hpp"

namespace rmz {

// Invariants of Z_r = {1, 2^-r, 3^-r, ...}: the accumulation at 0 is handled
// exactly by the greedy interval sweep (one closed interval of length 2*eps
// finishes the tail once the largest uncovered point drops below 2*eps).

// Minimal number of radius-eps intervals covering Z_r; exact.
long zr_covering_count(int r, double eps);

// Minimal eps with M(eps, Z_r) <= m.
double zr_min_eps(int r, long m);

// sup_eps eps * (M(eps) - d)^bracket over M > d, via breakpoint enumeration:
// max over m > d of E(m-1) * (m - d)^bracket.
double zr_omega_d(int r, int d);
double zr_omega_cd(int r, int d);

struct AsymptoticsRow {
  int r = 0;
  int d = 0;
  double omega_d = 0.0;
  double omega_cd = 0.0;
};

std::vector<AsymptoticsRow> zr_table(const std::vector<int>& rs,
                                     const std::vector<int>& ds,
                                     Exec exec = default_exec());

struct SlopeFit {
  int r = 0;
  double omega_d_slope = 0.0;
  double omega_cd_slope = 0.0;
};

// Least-squares log-log slopes of omega_d and omega_cd against d.
std::vector<SlopeFit> fit_slopes(const std::vector<AsymptoticsRow>& rows);

}  // namespace rmz
