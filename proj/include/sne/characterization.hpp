#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SVD>

#include "sne/game.hpp"

namespace sne {

inline constexpr double kEpsAlign = 1e-9;

struct AlignmentReport {
  bool aligned = false;
  std::optional<std::array<double, 2>> normal;  // unit normal of the line
  std::optional<double> offset;                 // normal . p = offset
  std::optional<double> phi;                    // line u1 + phi*u2 = const
  std::optional<std::vector<int>> ordering;     // point indices along the line
  std::optional<bool> admissible;
};

namespace detail {

inline double cross2(double ax, double ay, double bx, double by) {
  return ax * by - ay * bx;
}

inline double diameter2(const std::vector<PayoffPoint>& pts) {
  double d = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      const double dx = pts[i][0] - pts[j][0];
      const double dy = pts[i][1] - pts[j][1];
      d = std::max(d, dx * dx + dy * dy);
    }
  return d;
}

// Collinearity of three 2-d points, tolerance relative to the segment scale.
inline bool triple_collinear(const PayoffPoint& a, const PayoffPoint& b,
                             const PayoffPoint& c, double eps) {
  const double ux = b[0] - a[0], uy = b[1] - a[1];
  const double vx = c[0] - a[0], vy = c[1] - a[1];
  const double scale = std::max(1e-300, std::hypot(ux, uy) * std::hypot(vx, vy));
  return std::abs(cross2(ux, uy, vx, vy)) <= eps * scale;
}

}  // namespace detail

// True iff segment R1R2 is parallel to R3R4 and R1R3 parallel to R2R4,
// tested via cross products so that equal coordinates need no division.
inline bool parallelogram_check(const PayoffPoint& r1, const PayoffPoint& r2,
                                const PayoffPoint& r3, const PayoffPoint& r4,
                                double eps = kEpsAlign) {
  auto parallel = [eps](const PayoffPoint& a, const PayoffPoint& b,
                        const PayoffPoint& c, const PayoffPoint& d) {
    const double ux = b[0] - a[0], uy = b[1] - a[1];
    const double vx = d[0] - c[0], vy = d[1] - c[1];
    const double scale = std::max(1e-300, std::hypot(ux, uy) * std::hypot(vx, vy));
    return std::abs(detail::cross2(ux, uy, vx, vy)) <= eps * scale;
  };
  return parallel(r1, r2, r3, r4) && parallel(r1, r3, r2, r4);
}

// Least-squares line through >= 2 points in the utility plane; aligned iff
// every point lies within eps * diameter of it. Direction sign is fixed by
// the lexicographic rule (first nonzero component positive), which also
// fixes the reported ordering.
inline AlignmentReport collinear(const std::vector<PayoffPoint>& points,
                                 double eps = kEpsAlign) {
  if (points.size() < 2) throw GameError("collinear: need at least 2 points");
  AlignmentReport report;
  const std::size_t n = points.size();
  double cx = 0, cy = 0;
  for (const auto& p : points) { cx += p[0]; cy += p[1]; }
  cx /= static_cast<double>(n);
  cy /= static_cast<double>(n);
  double sxx = 0, sxy = 0, syy = 0;
  for (const auto& p : points) {
    const double dx = p[0] - cx, dy = p[1] - cy;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  // Principal direction of the 2x2 scatter matrix (largest eigenvalue).
  const double tr = sxx + syy;
  const double det = sxx * syy - sxy * sxy;
  const double lam = 0.5 * tr + std::sqrt(std::max(0.0, 0.25 * tr * tr - det));
  double dx, dy;
  if (std::abs(sxy) > 0 || sxx >= syy) {
    dx = lam - syy;
    dy = sxy;
  } else {
    dx = sxy;
    dy = lam - sxx;
  }
  double len = std::hypot(dx, dy);
  if (len == 0.0) { dx = 1.0; dy = 0.0; len = 1.0; }  // all points coincide
  dx /= len;
  dy /= len;
  if (dx < 0 || (dx == 0 && dy < 0)) { dx = -dx; dy = -dy; }

  const double diam = std::sqrt(detail::diameter2(points));
  double worst = 0.0;
  for (const auto& p : points)
    worst = std::max(worst,
                     std::abs(detail::cross2(dx, dy, p[0] - cx, p[1] - cy)));
  if (worst > eps * std::max(diam, 1e-300)) return report;  // aligned=false

  report.aligned = true;
  const double nx = -dy, ny = dx;
  report.normal = {nx, ny};
  report.offset = nx * cx + ny * cy;
  if (std::abs(nx) > 1e-12) {
    report.phi = ny / nx;  // normalize to u1 + phi*u2 = const
  }
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return points[a][0] * dx + points[a][1] * dy <
           points[b][0] * dx + points[b][1] * dy;
  });
  report.ordering = std::move(order);
  return report;
}

// Admissibility of a collinear R1,R2,R3,R4: one extreme must
// come from {R1,R4} followed by the other of the pair, then {R2,R3} closes
// the line (or the whole pattern reversed).
inline std::pair<bool, std::vector<int>> alignment_admissible(
    const PayoffPoint& r1, const PayoffPoint& r2, const PayoffPoint& r3,
    const PayoffPoint& r4, double eps = kEpsAlign) {
  const std::vector<PayoffPoint> points = {r1, r2, r3, r4};
  AlignmentReport report = collinear(points, eps);
  if (!report.aligned) throw GameError("alignment_admissible: points not collinear");
  const std::vector<int>& ord = *report.ordering;
  auto pair_is = [&](int a, int b, int x, int y) {
    return (ord[a] == x && ord[b] == y) || (ord[a] == y && ord[b] == x);
  };
  // Indices: 0=R1, 1=R2, 2=R3, 3=R4.
  const bool forward = pair_is(0, 1, 0, 3) && pair_is(2, 3, 1, 2);
  const bool backward = pair_is(0, 1, 1, 2) && pair_is(2, 3, 0, 3);
  return {forward || backward, ord};
}

// True iff the points' affine rank is <= n-1, i.e. they fit on an
// (n-1)-dimensional hyperplane; decided by the singular values of the
// centered point matrix.
inline bool hyperplane_check(const std::vector<PayoffPoint>& points,
                             double eps = kEpsAlign) {
  if (points.empty()) throw GameError("hyperplane_check: no points");
  const std::size_t n = points[0].size();
  for (const auto& p : points)
    if (p.size() != n) throw GameError("hyperplane_check: dimension mismatch");
  if (points.size() <= n) return true;  // affine span dimension bound

  Eigen::MatrixXd m(static_cast<Eigen::Index>(points.size()),
                    static_cast<Eigen::Index>(n));
  for (std::size_t r = 0; r < points.size(); ++r)
    for (std::size_t c = 0; c < n; ++c)
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = points[r][c];
  m.rowwise() -= m.colwise().mean();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  const auto& sv = svd.singularValues();
  const double smax = sv(0);
  const double smin = sv(sv.size() - 1);
  return smin <= eps * std::max(smax, 1e-300) || smax == 0.0;
}

// The "temp" flag of the solver's alignment pre-check: is there any 2x2
// sub-bimatrix in which at least three of the four payoff points are
// collinear? Scans all C(m1,2)*C(m2,2) sub-bimatrices.
inline bool aligned_2x2_witness_scan(const Game& game, double eps = kEpsAlign,
                                     std::int64_t* scanned = nullptr) {
  if (game.num_players() != 2)
    throw GameError("aligned_2x2_witness_scan: n must be 2");
  const int m1 = game.num_actions(0), m2 = game.num_actions(1);
  std::int64_t count = 0;
  bool found = false;
  for (int r1 = 0; r1 < m1 && !found; ++r1)
    for (int r2 = r1 + 1; r2 < m1 && !found; ++r2)
      for (int c1 = 0; c1 < m2 && !found; ++c1)
        for (int c2 = c1 + 1; c2 < m2 && !found; ++c2) {
          ++count;
          const PayoffPoint pts[4] = {
              {game.at2(0, r1, c1), game.at2(1, r1, c1)},
              {game.at2(0, r1, c2), game.at2(1, r1, c2)},
              {game.at2(0, r2, c1), game.at2(1, r2, c1)},
              {game.at2(0, r2, c2), game.at2(1, r2, c2)}};
          for (int skip = 0; skip < 4 && !found; ++skip) {
            const PayoffPoint* t[3];
            int w = 0;
            for (int j = 0; j < 4; ++j)
              if (j != skip) t[w++] = &pts[j];
            found = detail::triple_collinear(*t[0], *t[1], *t[2], eps);
          }
        }
  if (scanned) *scanned += count;
  return found;
}

// Degeneracy in the sense of the 2-agent characterization's distinctness
// assumptions: the support-restricted game has a duplicate payoff row or
// column for some player.
inline bool detect_degeneracy(const Game& game, const SupportProfile& support) {
  if (game.num_players() != 2) throw GameError("detect_degeneracy: n must be 2");
  const Game sub = restrict_to(game, support);
  const int m1 = sub.num_actions(0), m2 = sub.num_actions(1);
  for (int player = 0; player < 2; ++player) {
    for (int r1 = 0; r1 < m1; ++r1)
      for (int r2 = r1 + 1; r2 < m1; ++r2) {
        bool same = true;
        for (int c = 0; c < m2 && same; ++c)
          same = sub.at2(player, r1, c) == sub.at2(player, r2, c);
        if (same) return true;
      }
    for (int c1 = 0; c1 < m2; ++c1)
      for (int c2 = c1 + 1; c2 < m2; ++c2) {
        bool same = true;
        for (int r = 0; r < m1 && same; ++r)
          same = sub.at2(player, r, c1) == sub.at2(player, r, c2);
        if (same) return true;
      }
  }
  return false;
}

}  // namespace sne
