#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <vector>

#include "sne/characterization.hpp"
#include "sne/equilibrium.hpp"
#include "sne/game.hpp"
#include "sne/pareto.hpp"

namespace sne {

enum class SolveStatus { Found, NonExistence, Indeterminate, Aborted };

inline const char* to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::Found: return "found";
    case SolveStatus::NonExistence: return "non-existence";
    case SolveStatus::Indeterminate: return "indeterminate";
    case SolveStatus::Aborted: return "aborted";
  }
  return "?";
}

struct SolveOptions {
  double eps = 1e-9;
  int grid_k = 20;
  std::int64_t falsifier_budget = 200000;
  std::int64_t support_budget = 10000000;  // phase-3 step budget
  int threads = 1;  // caps parallelism; results are thread-count independent
};

struct SolveStats {
  std::int64_t pure_profiles_checked = 0;
  std::int64_t subbimatrices_scanned = 0;
  std::int64_t supports_enumerated = 0;
  double wall_time = 0.0;
};

struct SolveResult {
  SolveStatus status = SolveStatus::Indeterminate;
  std::optional<MixedProfile> profile;
  int phase = 0;  // part of the pipeline that terminated the run
  SolveStats stats;
  // Candidates whose Pareto verdict stayed Indeterminate (recorded, skipped).
  std::vector<MixedProfile> indeterminate_candidates;
  // Pure-path extra: whether mixed SNEs could be excluded outright.
  std::optional<bool> mixed_sne_excluded;
};

namespace detail {

// Support profiles in deterministic order: total size ascending, then |S_1|
// ascending, then lexicographic index sets. Visitor returns false to stop.
template <typename Visitor>
void enumerate_supports_2p(int m1, int m2, Visitor&& visit) {
  auto next_combination = [](std::vector<int>& comb, int m) {
    const int k = static_cast<int>(comb.size());
    int i = k - 1;
    while (i >= 0 && comb[i] == m - k + i) --i;
    if (i < 0) return false;
    ++comb[i];
    for (int j = i + 1; j < k; ++j) comb[j] = comb[j - 1] + 1;
    return true;
  };
  for (int total = 2; total <= m1 + m2; ++total) {
    for (int k1 = std::max(1, total - m2); k1 <= std::min(m1, total - 1); ++k1) {
      const int k2 = total - k1;
      std::vector<int> s1(k1);
      for (int i = 0; i < k1; ++i) s1[i] = i;
      do {
        std::vector<int> s2(k2);
        for (int i = 0; i < k2; ++i) s2[i] = i;
        do {
          if (!visit(s1, s2)) return;
        } while (next_combination(s2, m2));
      } while (next_combination(s1, m1));
    }
  }
}

class WallClock {
 public:
  double elapsed() const {
    return std::chrono::duration<double>(
               std::chrono::steady_clock::now() - start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_ =
      std::chrono::steady_clock::now();
};

}  // namespace detail

// Three-phase SNE search for 2-agent games: pure enumeration, the 2x2
// alignment pre-check, then support enumeration. The pre-check failing rules
// out mixed-strategy SNEs, so the run can stop after the pure phase.
inline SolveResult sne_find(const Game& game, const SolveOptions& opts = {}) {
  if (game.num_players() != 2)
    throw GameError("sne_find: n must be 2 (use sne_find_pure_n)");
  detail::WallClock clock;
  SolveResult result;

  // Phase 1: pure profiles in lexicographic order.
  std::vector<int> joint(2, 0);
  for (std::size_t c = 0; c < game.num_cells(); ++c) {
    game.unflatten(c, joint);
    ++result.stats.pure_profiles_checked;
    MixedProfile candidate = pure_profile(game, joint);
    auto [status, evidence] = verify_sne(game, candidate, opts.eps, opts.grid_k,
                                         opts.falsifier_budget);
    if (status == SneStatus::Sne) {
      result.status = SolveStatus::Found;
      result.profile = std::move(candidate);
      result.phase = 1;
      result.stats.wall_time = clock.elapsed();
      return result;
    }
    if (status == SneStatus::Indeterminate)
      result.indeterminate_candidates.push_back(std::move(candidate));
  }

  // Phase 2: no collinear triple in any 2x2 sub-bimatrix means no
  // mixed-strategy SNE can exist.
  const bool witness =
      aligned_2x2_witness_scan(game, kEpsAlign, &result.stats.subbimatrices_scanned);
  if (!witness) {
    result.status = SolveStatus::NonExistence;
    result.phase = 2;
    result.stats.wall_time = clock.elapsed();
    return result;
  }

  // Phase 3: support enumeration.
  bool aborted = false;
  detail::enumerate_supports_2p(
      game.num_actions(0), game.num_actions(1),
      [&](const std::vector<int>& s1, const std::vector<int>& s2) {
        if (result.stats.supports_enumerated >= opts.support_budget) {
          aborted = true;
          return false;
        }
        ++result.stats.supports_enumerated;
        SupportProfile support{{s1, s2}};
        auto candidate = solve_support_2p(game, support, opts.eps);
        if (!candidate) return true;
        auto [status, evidence] = verify_sne(game, *candidate, opts.eps,
                                             opts.grid_k, opts.falsifier_budget);
        if (status == SneStatus::Sne) {
          result.status = SolveStatus::Found;
          result.profile = std::move(*candidate);
          return false;
        }
        if (status == SneStatus::Indeterminate)
          result.indeterminate_candidates.push_back(std::move(*candidate));
        return true;
      });
  result.phase = 3;
  if (result.status != SolveStatus::Found) {
    if (aborted)
      result.status = SolveStatus::Aborted;
    else if (result.indeterminate_candidates.empty())
      result.status = SolveStatus::NonExistence;
    else
      result.status = SolveStatus::Indeterminate;
  }
  result.stats.wall_time = clock.elapsed();
  return result;
}

// Exhaustive scan over every support profile; collects every verified SNE
// (one representative per support, deduplicated by profile closeness).
// Backs the `solve --all` flag and uniqueness experiments.
inline std::vector<MixedProfile> find_all_sne_2p(const Game& game,
                                                 const SolveOptions& opts = {}) {
  if (game.num_players() != 2) throw GameError("find_all_sne_2p: n must be 2");
  std::vector<MixedProfile> found;
  auto same_profile = [&](const MixedProfile& a, const MixedProfile& b) {
    for (int i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < a.probs[i].size(); ++j)
        if (std::abs(a.probs[i][j] - b.probs[i][j]) > 1e-7) return false;
    return true;
  };
  detail::enumerate_supports_2p(
      game.num_actions(0), game.num_actions(1),
      [&](const std::vector<int>& s1, const std::vector<int>& s2) {
        SupportProfile support{{s1, s2}};
        auto candidate = solve_support_2p(game, support, opts.eps);
        if (!candidate) return true;
        auto [status, evidence] = verify_sne(game, *candidate, opts.eps,
                                             opts.grid_k, opts.falsifier_budget);
        if (status == SneStatus::Sne) {
          bool duplicate = false;
          for (const auto& p : found)
            if (same_profile(p, *candidate)) { duplicate = true; break; }
          if (!duplicate) found.push_back(std::move(*candidate));
        }
        return true;
      });
  return found;
}

namespace detail {

// Can a mixed-strategy SNE be excluded for an n-agent game? A mixed SNE on
// support S needs all support-restricted payoff points on an
// (n-1)-dimensional hyperplane. Restricted clouds with more than n points
// are tested directly; a support where exactly one player mixes always
// passes that test trivially, so those are excluded via the NE indifference
// requirement instead (the mixing player's payoff entries must tie exactly).
// Supports that neither test can exclude leave the answer open.
enum class MixedExclusion { Excluded, Open };

inline MixedExclusion mixed_sne_exclusion(const Game& game, double eps,
                                          std::int64_t budget) {
  const int n = game.num_players();
  std::vector<std::vector<std::vector<int>>> subsets(n);
  for (int i = 0; i < n; ++i) {
    const int m = game.num_actions(i);
    for (int mask = 1; mask < (1 << m); ++mask) {
      std::vector<int> s;
      for (int a = 0; a < m; ++a)
        if (mask & (1 << a)) s.push_back(a);
      subsets[i].push_back(std::move(s));
    }
  }
  std::vector<std::size_t> pick(n, 0);
  std::int64_t steps = 0;
  for (;;) {
    SupportProfile support;
    support.supports.resize(n);
    int mixers = 0, mixer = -1;
    for (int i = 0; i < n; ++i) {
      support.supports[i] = subsets[i][pick[i]];
      if (support.supports[i].size() > 1) { ++mixers; mixer = i; }
    }
    if (mixers > 0) {
      if (++steps > budget) return MixedExclusion::Open;
      const Game sub = restrict_to(game, support);
      const auto points = payoff_points(sub);
      bool excluded;
      if (points.size() > static_cast<std::size_t>(n)) {
        excluded = !hyperplane_check(points, eps);
      } else if (mixers == 1) {
        // Others pure: NE needs the mixer's entries to tie exactly.
        excluded = false;
        std::vector<int> probe(n, 0);
        double ref = 0.0;
        bool have_ref = false;
        for (int a = 0; a < sub.num_actions(mixer); ++a) {
          probe[mixer] = a;
          const double v = sub.payoff(mixer, probe);
          if (!have_ref) { ref = v; have_ref = true; }
          else if (std::abs(v - ref) > eps) { excluded = true; break; }
        }
      } else {
        excluded = false;  // too few points for the hyperplane test to bite
      }
      if (!excluded) return MixedExclusion::Open;
    }
    int i = n - 1;
    while (i >= 0 && ++pick[i] == subsets[i].size()) pick[i--] = 0;
    if (i < 0) break;
  }
  return MixedExclusion::Excluded;
}

}  // namespace detail

// n-agent path: exhaustive pure-SNE search, plus the hyperplane necessary
// condition to decide whether mixed-strategy SNEs can be ruled out.
inline SolveResult sne_find_pure_n(const Game& game,
                                   const SolveOptions& opts = {}) {
  detail::WallClock clock;
  SolveResult result;
  const int n = game.num_players();
  std::vector<int> joint(n, 0);
  for (std::size_t c = 0; c < game.num_cells(); ++c) {
    game.unflatten(c, joint);
    ++result.stats.pure_profiles_checked;
    MixedProfile candidate = pure_profile(game, joint);
    auto [status, evidence] = verify_sne(game, candidate, opts.eps, opts.grid_k,
                                         opts.falsifier_budget);
    if (status == SneStatus::Sne) {
      result.status = SolveStatus::Found;
      result.profile = std::move(candidate);
      result.phase = 1;
      result.stats.wall_time = clock.elapsed();
      return result;
    }
    if (status == SneStatus::Indeterminate)
      result.indeterminate_candidates.push_back(std::move(candidate));
  }
  const auto exclusion =
      detail::mixed_sne_exclusion(game, opts.eps, opts.support_budget);
  result.mixed_sne_excluded = exclusion == detail::MixedExclusion::Excluded;
  result.phase = 1;
  result.status = *result.mixed_sne_excluded ? SolveStatus::NonExistence
                                             : SolveStatus::Indeterminate;
  result.stats.wall_time = clock.elapsed();
  return result;
}

}  // namespace sne
