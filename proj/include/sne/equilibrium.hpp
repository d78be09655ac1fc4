#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SVD>

#include "sne/game.hpp"

namespace sne {

// Certificate for the Nash constraints: expected values, the worst residual
// over all constraints, and the actions whose value meets v_i with equality.
struct NeCertificate {
  std::vector<double> values;
  double max_violation = 0.0;
  std::vector<std::vector<int>> binding;
};

struct NeVerdict {
  bool is_ne = false;
  NeCertificate certificate;
};

// Checks the NE constraints directly: no action's deviation value exceeds
// v_i (+eps), every support action's value matches v_i (within eps), and the
// profile is a valid point of the product simplex.
inline NeVerdict verify_ne(const Game& game, const MixedProfile& profile,
                           double eps = 1e-9) {
  profile.validate_for(game, eps);
  NeVerdict verdict;
  verdict.certificate.values = expected_utility(game, profile);
  verdict.certificate.binding.resize(game.num_players());
  double worst = 0.0;
  for (int i = 0; i < game.num_players(); ++i) {
    const double vi = verdict.certificate.values[i];
    for (int a = 0; a < game.num_actions(i); ++a) {
      const double value = action_value(game, i, a, profile);
      if (std::abs(value - vi) <= eps)
        verdict.certificate.binding[i].push_back(a);
      worst = std::max(worst, value - vi);  // constraint (1)
      if (profile.probs[i][a] > kEpsSupport)
        worst = std::max(worst, std::abs(value - vi));  // constraint (2)
    }
  }
  verdict.certificate.max_violation = worst;
  verdict.is_ne = worst <= eps;
  return verdict;
}

namespace detail {

// Unique solution of A x = b via LU with partial pivoting. A pivot below
// 1e-12 * max|A| declares the system rank-deficient and returns nullopt.
inline std::optional<std::vector<double>> lu_solve(
    std::vector<std::vector<double>> a, std::vector<double> b) {
  const std::size_t n = b.size();
  double scale = 0.0;
  for (const auto& row : a)
    for (double v : row) scale = std::max(scale, std::abs(v));
  const double pivot_tol = 1e-12 * std::max(scale, 1.0);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t best = k;
    for (std::size_t r = k + 1; r < n; ++r)
      if (std::abs(a[r][k]) > std::abs(a[best][k])) best = r;
    if (std::abs(a[best][k]) < pivot_tol) return std::nullopt;
    std::swap(a[k], a[best]);
    std::swap(b[k], b[best]);
    for (std::size_t r = k + 1; r < n; ++r) {
      const double f = a[r][k] / a[k][k];
      if (f == 0.0) continue;
      for (std::size_t j = k; j < n; ++j) a[r][j] -= f * a[k][j];
      b[r] -= f * b[k];
    }
  }
  std::vector<double> x(n);
  for (std::size_t k = n; k-- > 0;) {
    double s = b[k];
    for (std::size_t j = k + 1; j < n; ++j) s -= a[k][j] * x[j];
    x[k] = s / a[k][k];
  }
  return x;
}

// Minimum-norm least-squares solution; nullopt when the system is
// inconsistent. Handles the rank-deficient indifference systems that the
// block instances produce (their checkerboard payoffs repeat rows, so whole
// solution families exist; the minimum-norm member is the symmetric one).
inline std::optional<std::vector<double>> min_norm_solve(
    const std::vector<std::vector<double>>& a, const std::vector<double>& b) {
  const Eigen::Index rows = static_cast<Eigen::Index>(a.size());
  const Eigen::Index cols = static_cast<Eigen::Index>(a[0].size());
  Eigen::MatrixXd m(rows, cols);
  Eigen::VectorXd rhs(rows);
  for (Eigen::Index r = 0; r < rows; ++r) {
    rhs(r) = b[r];
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = a[r][c];
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  svd.setThreshold(1e-10);
  Eigen::VectorXd x = svd.solve(rhs);
  const double scale = std::max(1.0, rhs.norm() + m.norm());
  if ((m * x - rhs).norm() > 1e-8 * scale) return std::nullopt;
  return std::vector<double>(x.data(), x.data() + cols);
}

// Indifference system for one side of a 2-player support: the mixture of
// `mixer` must equalize the values of all of `responder`'s support actions.
// Rows: (|S_r| - 1) indifference equations plus normalization.
inline std::optional<std::vector<double>> solve_indifference(
    const Game& game, int mixer, const std::vector<int>& mixer_support,
    const std::vector<int>& responder_support) {
  const int k = static_cast<int>(mixer_support.size());
  const int r = static_cast<int>(responder_support.size());
  const int responder = 1 - mixer;
  auto payoff = [&](int mi, int rj) {
    const int row = mixer == 0 ? mixer_support[mi] : responder_support[rj];
    const int col = mixer == 0 ? responder_support[rj] : mixer_support[mi];
    return game.at2(responder, row, col);
  };
  std::vector<std::vector<double>> a;
  std::vector<double> b;
  for (int j = 1; j < r; ++j) {
    std::vector<double> row(k);
    for (int i = 0; i < k; ++i) row[i] = payoff(i, j) - payoff(i, 0);
    a.push_back(std::move(row));
    b.push_back(0.0);
  }
  a.emplace_back(k, 1.0);
  b.push_back(1.0);

  if (static_cast<int>(a.size()) == k) {
    if (auto x = lu_solve(a, b)) return x;
  }
  return min_norm_solve(a, b);
}

}  // namespace detail

// Solves the support's indifference system for both players and verifies the
// candidate against the full game. Returns at most one representative per
// support: the unique solution when the system is nonsingular, the
// minimum-norm member when a solution family exists, and nullopt when the
// system is inconsistent, the candidate leaves the simplex, leaves the
// claimed support, or fails verify_ne.
inline std::optional<MixedProfile> solve_support_2p(const Game& game,
                                                    const SupportProfile& support,
                                                    double eps = 1e-9) {
  if (game.num_players() != 2) throw GameError("solve_support_2p: n must be 2");
  support.validate_for(game);

  auto x1 = detail::solve_indifference(game, 0, support.supports[0],
                                       support.supports[1]);
  if (!x1) return std::nullopt;
  auto x2 = detail::solve_indifference(game, 1, support.supports[1],
                                       support.supports[0]);
  if (!x2) return std::nullopt;

  MixedProfile profile;
  profile.probs.assign(2, {});
  profile.probs[0].assign(game.num_actions(0), 0.0);
  profile.probs[1].assign(game.num_actions(1), 0.0);
  std::vector<std::vector<double>> sols = {*x1, *x2};
  for (int i = 0; i < 2; ++i) {
    double sum = 0.0;
    for (std::size_t j = 0; j < support.supports[i].size(); ++j) {
      const double p = sols[i][j];
      if (p < kEpsSupport) return std::nullopt;  // off-simplex or support mismatch
      profile.probs[i][support.supports[i][j]] = p;
      sum += p;
    }
    for (double& p : profile.probs[i]) p /= sum;
  }
  if (!verify_ne(game, profile, eps).is_ne) return std::nullopt;
  return profile;
}

// All pure NE action profiles, in row-major lexicographic order.
inline std::vector<std::vector<int>> enumerate_pure_ne(const Game& game) {
  const int n = game.num_players();
  std::vector<std::vector<int>> result;
  std::vector<int> joint(n, 0);
  const std::size_t cells = game.num_cells();
  std::vector<int> probe(n);
  for (std::size_t c = 0; c < cells; ++c) {
    game.unflatten(c, joint);
    bool ne = true;
    for (int i = 0; i < n && ne; ++i) {
      probe = joint;
      const double base = game.payoff(i, joint);
      for (int a = 0; a < game.num_actions(i); ++a) {
        probe[i] = a;
        if (game.payoff(i, probe) > base) { ne = false; break; }
      }
    }
    if (ne) result.push_back(joint);
  }
  return result;
}

}  // namespace sne
