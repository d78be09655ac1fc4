#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <vector>

#include "sne/equilibrium.hpp"
#include "sne/game.hpp"
#include "sne/lp.hpp"

namespace sne {

enum class FrontierStatus { Efficient, Dominated, Indeterminate };

struct FrontierVerdict {
  FrontierStatus status = FrontierStatus::Indeterminate;
  std::optional<PayoffPoint> witness_point;
  std::optional<MixedProfile> witness_profile;
  double margin = 0.0;  // max-min improvement found, utility units
};

// Coalitions enumerated by size ascending, then lexicographic member sets.
inline std::vector<std::vector<int>> enumerate_coalitions(int n, int min_size) {
  std::vector<std::vector<int>> result;
  for (int size = min_size; size <= n; ++size) {
    std::vector<int> members(size);
    for (int i = 0; i < size; ++i) members[i] = i;
    for (;;) {
      result.push_back(members);
      int i = size - 1;
      while (i >= 0 && members[i] == n - size + i) --i;
      if (i < 0) break;
      ++members[i];
      for (int j = i + 1; j < size; ++j) members[j] = members[j - 1] + 1;
    }
  }
  return result;
}

// For each joint pure action of the coalition, the vector of coalition
// members' expected utilities against the fixed mixed strategies of the
// non-members. For the grand coalition this is every cell's payoff vector.
inline std::vector<PayoffPoint> coalition_outcome_points(
    const Game& game, const MixedProfile& profile,
    const std::vector<int>& coalition) {
  if (coalition.empty()) throw GameError("empty coalition");
  profile.validate_for(game);
  const int n = game.num_players();
  const int k = static_cast<int>(coalition.size());
  std::vector<bool> in_coalition(n, false);
  for (int i : coalition) in_coalition[i] = true;

  std::size_t joint_count = 1;
  for (int i : coalition) joint_count *= static_cast<std::size_t>(game.num_actions(i));

  std::vector<PayoffPoint> points;
  points.reserve(joint_count);
  std::vector<int> joint(n, 0);
  const std::size_t cells = game.num_cells();
  for (std::size_t c = 0; c < joint_count; ++c) {
    std::vector<int> coalition_action(k);
    std::size_t rem = c;
    for (int j = k - 1; j >= 0; --j) {
      const int m = game.num_actions(coalition[j]);
      coalition_action[j] = static_cast<int>(rem % static_cast<std::size_t>(m));
      rem /= static_cast<std::size_t>(m);
    }
    PayoffPoint point(k, 0.0);
    for (std::size_t cell = 0; cell < cells; ++cell) {
      game.unflatten(cell, joint);
      bool match = true;
      for (int j = 0; j < k; ++j)
        if (joint[coalition[j]] != coalition_action[j]) { match = false; break; }
      if (!match) continue;
      double w = 1.0;
      for (int i = 0; i < n; ++i)
        if (!in_coalition[i]) w *= profile.probs[i][joint[i]];
      if (w == 0.0) continue;
      for (int j = 0; j < k; ++j)
        point[j] += w * game.payoff_flat(coalition[j], cell);
    }
    points.push_back(std::move(point));
  }
  return points;
}

// Correlated (convex-hull) frontier membership: solves
//   max t  s.t.  sum_k lambda_k * points_k >= u + t*1,  lambda in the simplex
// as an LP; Efficient iff the optimal t <= eps, else Dominated witnessed by
// the hull point sum_k lambda_k * points_k.
inline FrontierVerdict correlated_frontier_check(
    const std::vector<PayoffPoint>& points, const PayoffPoint& u,
    double eps = 1e-9) {
  if (points.empty()) throw GameError("correlated_frontier_check: no points");
  const std::size_t d = u.size();
  for (const auto& p : points)
    if (p.size() != d) throw GameError("frontier check: dimension mismatch");
  const std::size_t kk = points.size();

  // Columns: lambda_1..lambda_K, t+, t-, s_1..s_d. Rows: d inequalities
  // turned into equalities plus the simplex normalization.
  const std::size_t cols = kk + 2 + d;
  std::vector<std::vector<double>> a(d + 1, std::vector<double>(cols, 0.0));
  std::vector<double> b(d + 1, 0.0);
  for (std::size_t j = 0; j < d; ++j) {
    double sign = u[j] >= 0 ? 1.0 : -1.0;  // simplex wants rhs >= 0
    for (std::size_t k = 0; k < kk; ++k) a[j][k] = sign * points[k][j];
    a[j][kk] = -sign;
    a[j][kk + 1] = sign;
    a[j][kk + 2 + j] = -sign;
    b[j] = sign * u[j];
  }
  for (std::size_t k = 0; k < kk; ++k) a[d][k] = 1.0;
  b[d] = 1.0;
  std::vector<double> c(cols, 0.0);
  c[kk] = 1.0;
  c[kk + 1] = -1.0;

  LpResult lp = LpSolver(std::move(a), std::move(b), std::move(c)).solve();
  if (lp.status != LpResult::Status::Optimal)
    throw GameError("frontier LP did not solve");  // feasible and bounded by construction

  FrontierVerdict verdict;
  verdict.margin = lp.objective;
  if (lp.objective <= eps) {
    verdict.status = FrontierStatus::Efficient;
  } else {
    verdict.status = FrontierStatus::Dominated;
    PayoffPoint witness(d, 0.0);
    for (std::size_t k = 0; k < kk; ++k)
      for (std::size_t j = 0; j < d; ++j) witness[j] += lp.x[k] * points[k][j];
    verdict.witness_point = std::move(witness);
  }
  return verdict;
}

namespace detail {

// Enumerates simplex grid vectors (compositions of grid_k into m parts,
// scaled by 1/grid_k) in lexicographic order, first coordinate descending.
class SimplexGrid {
 public:
  SimplexGrid(int m, int grid_k) : counts_(m, 0) {
    counts_[0] = grid_k;
  }
  const std::vector<int>& counts() const { return counts_; }
  bool advance() {
    const int m = static_cast<int>(counts_.size());
    // Find rightmost position before the last with a nonzero count.
    int i = m - 2;
    while (i >= 0 && counts_[i] == 0) --i;
    if (i < 0) return false;
    --counts_[i];
    int tail = counts_[m - 1] + 1;
    counts_[m - 1] = 0;
    counts_[i + 1] = tail;
    return true;
  }
  std::vector<double> probs() const {
    int total = 0;
    for (int c : counts_) total += c;
    std::vector<double> p(counts_.size());
    for (std::size_t j = 0; j < counts_.size(); ++j)
      p[j] = static_cast<double>(counts_[j]) / total;
    return p;
  }

 private:
  std::vector<int> counts_;
};

}  // namespace detail

// Brute-force falsifier of weak Pareto efficiency over mixed strategies:
// sweeps coalition members' mixed strategies over the simplex grid with
// denominator grid_k (non-members fixed). Sound when it answers Dominated;
// otherwise Indeterminate (a grid search proves nothing by exhaustion, and
// the sweep also stops early once `budget` grid profiles were evaluated).
inline FrontierVerdict mixed_deviation_falsifier(
    const Game& game, const MixedProfile& profile,
    const std::vector<int>& coalition, int grid_k = 20, double eps = 1e-9,
    std::int64_t budget = 200000) {
  if (grid_k < 1) throw GameError("grid_k must be >= 1");
  profile.validate_for(game);
  const int k = static_cast<int>(coalition.size());
  const std::vector<double> base = expected_utility(game, profile);

  std::vector<detail::SimplexGrid> grids;
  grids.reserve(k);
  for (int i : coalition)
    grids.emplace_back(game.num_actions(i), grid_k);

  MixedProfile candidate = profile;
  std::int64_t evaluated = 0;
  for (;;) {
    for (int j = 0; j < k; ++j) candidate.probs[coalition[j]] = grids[j].probs();
    const std::vector<double> v = expected_utility(game, candidate);
    double worst_gain = std::numeric_limits<double>::infinity();
    for (int i : coalition) worst_gain = std::min(worst_gain, v[i] - base[i]);
    if (worst_gain > eps) {
      FrontierVerdict verdict;
      verdict.status = FrontierStatus::Dominated;
      verdict.margin = worst_gain;
      PayoffPoint witness(k);
      for (int j = 0; j < k; ++j) witness[j] = v[coalition[j]];
      verdict.witness_point = std::move(witness);
      verdict.witness_profile = candidate;
      return verdict;
    }
    if (++evaluated >= budget) break;
    // Odometer over the coalition members' grids.
    int j = k - 1;
    while (j >= 0 && !grids[j].advance()) {
      grids[j] = detail::SimplexGrid(game.num_actions(coalition[j]), grid_k);
      --j;
    }
    if (j < 0) break;
  }
  FrontierVerdict verdict;
  verdict.status = FrontierStatus::Indeterminate;
  verdict.margin = 0.0;
  return verdict;
}

enum class SneStatus { Sne, NotSne, Indeterminate };

struct SneEvidence {
  NeVerdict ne;
  // One entry per multi-member coalition, in enumeration order.
  std::vector<std::pair<std::vector<int>, FrontierVerdict>> coalition_verdicts;
};

// SNE = NE + weak Pareto efficiency for every coalition. Singleton
// coalitions are covered by the NE check. The correlated hull check is a
// sound sufficient condition for efficiency (mixed outcomes are a subset of
// correlated ones); when it reports Dominated the grid falsifier decides
// NotSne, or the verdict degrades to Indeterminate if no mixed witness is
// found at this resolution.
inline std::pair<SneStatus, SneEvidence> verify_sne(
    const Game& game, const MixedProfile& profile, double eps = 1e-9,
    int grid_k = 20, std::int64_t falsifier_budget = 200000) {
  SneEvidence evidence;
  evidence.ne = verify_ne(game, profile, eps);
  if (!evidence.ne.is_ne) return {SneStatus::NotSne, std::move(evidence)};

  bool any_indeterminate = false;
  for (const auto& coalition :
       enumerate_coalitions(game.num_players(), /*min_size=*/2)) {
    const auto points = coalition_outcome_points(game, profile, coalition);
    PayoffPoint u(coalition.size());
    for (std::size_t j = 0; j < coalition.size(); ++j)
      u[j] = evidence.ne.certificate.values[coalition[j]];
    FrontierVerdict verdict = correlated_frontier_check(points, u, eps);
    if (verdict.status == FrontierStatus::Dominated) {
      FrontierVerdict falsified = mixed_deviation_falsifier(
          game, profile, coalition, grid_k, eps, falsifier_budget);
      if (falsified.status == FrontierStatus::Dominated) {
        evidence.coalition_verdicts.emplace_back(coalition, std::move(falsified));
        return {SneStatus::NotSne, std::move(evidence)};
      }
      any_indeterminate = true;
      verdict.status = FrontierStatus::Indeterminate;
    }
    evidence.coalition_verdicts.emplace_back(coalition, std::move(verdict));
  }
  return {any_indeterminate ? SneStatus::Indeterminate : SneStatus::Sne,
          std::move(evidence)};
}

}  // namespace sne
