#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace sne {

inline constexpr double kEpsProb = 1e-9;     // simplex validity tolerance
inline constexpr double kEpsSupport = 1e-12; // support thresholding

// One pure outcome viewed in utility space: (U_1(a), ..., U_n(a)).
using PayoffPoint = std::vector<double>;

class GameError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Finite strategic-form game. Payoffs are stored as one flat row-major
// tensor per player, the last player's action index varying fastest.
// Immutable after construction and safe to share across threads.
class Game {
 public:
  Game(std::vector<int> actions, std::vector<std::vector<double>> payoffs,
       std::string name = "")
      : name_(std::move(name)),
        actions_(std::move(actions)),
        payoffs_(std::move(payoffs)) {
    if (actions_.size() < 2) throw GameError("game needs at least 2 players");
    std::size_t cells = 1;
    for (int m : actions_) {
      if (m < 1) throw GameError("every player needs at least one action");
      cells *= static_cast<std::size_t>(m);
    }
    if (payoffs_.size() != actions_.size())
      throw GameError("one payoff tensor per player required");
    for (const auto& u : payoffs_) {
      if (u.size() != cells)
        throw GameError("payoff tensor size does not match action counts");
      for (double v : u)
        if (!std::isfinite(v)) throw GameError("non-finite payoff entry");
    }
  }

  int num_players() const { return static_cast<int>(actions_.size()); }
  int num_actions(int player) const { return actions_[player]; }
  const std::vector<int>& actions() const { return actions_; }
  const std::string& name() const { return name_; }

  std::size_t num_cells() const { return payoffs_[0].size(); }

  std::size_t flat_index(std::span<const int> joint) const {
    std::size_t idx = 0;
    for (std::size_t j = 0; j < actions_.size(); ++j)
      idx = idx * static_cast<std::size_t>(actions_[j]) +
            static_cast<std::size_t>(joint[j]);
    return idx;
  }

  void unflatten(std::size_t flat, std::span<int> joint) const {
    for (std::size_t j = actions_.size(); j-- > 0;) {
      joint[j] = static_cast<int>(flat % static_cast<std::size_t>(actions_[j]));
      flat /= static_cast<std::size_t>(actions_[j]);
    }
  }
  std::vector<int> unflatten(std::size_t flat) const {
    std::vector<int> joint(actions_.size());
    unflatten(flat, joint);
    return joint;
  }

  double payoff(int player, std::span<const int> joint) const {
    return payoffs_[player][flat_index(joint)];
  }
  double payoff_flat(int player, std::size_t flat) const {
    return payoffs_[player][flat];
  }
  const std::vector<double>& payoff_tensor(int player) const {
    return payoffs_[player];
  }

  // 2-player convenience accessor: row = player 1 action, col = player 2.
  double at2(int player, int row, int col) const {
    return payoffs_[player][static_cast<std::size_t>(row) *
                                static_cast<std::size_t>(actions_[1]) +
                            static_cast<std::size_t>(col)];
  }

  bool operator==(const Game& o) const {
    return actions_ == o.actions_ && payoffs_ == o.payoffs_;
  }

 private:
  std::string name_;
  std::vector<int> actions_;
  std::vector<std::vector<double>> payoffs_;
};

// Per-player probability vectors.
struct MixedProfile {
  std::vector<std::vector<double>> probs;

  void validate_for(const Game& game, double eps = kEpsProb) const {
    if (static_cast<int>(probs.size()) != game.num_players())
      throw GameError("profile/game shape mismatch: player count");
    for (int i = 0; i < game.num_players(); ++i) {
      if (static_cast<int>(probs[i].size()) != game.num_actions(i))
        throw GameError("profile/game shape mismatch: action count");
      double sum = 0;
      for (double p : probs[i]) {
        if (p < -eps) throw GameError("negative probability");
        sum += p;
      }
      if (std::abs(sum - 1.0) > eps)
        throw GameError("probability vector does not sum to 1");
    }
  }
};

inline MixedProfile pure_profile(const Game& game, std::span<const int> joint) {
  MixedProfile p;
  p.probs.resize(game.num_players());
  for (int i = 0; i < game.num_players(); ++i) {
    p.probs[i].assign(game.num_actions(i), 0.0);
    p.probs[i][joint[i]] = 1.0;
  }
  return p;
}

inline MixedProfile pure_profile(const Game& game,
                                 std::initializer_list<int> joint) {
  return pure_profile(game, std::span<const int>(joint.begin(), joint.size()));
}

inline MixedProfile uniform_over_first(const Game& game, int k) {
  MixedProfile p;
  p.probs.resize(game.num_players());
  for (int i = 0; i < game.num_players(); ++i) {
    p.probs[i].assign(game.num_actions(i), 0.0);
    for (int a = 0; a < k; ++a) p.probs[i][a] = 1.0 / k;
  }
  return p;
}

// Index sets of positively played actions, sorted ascending.
struct SupportProfile {
  std::vector<std::vector<int>> supports;

  void validate_for(const Game& game) const {
    if (static_cast<int>(supports.size()) != game.num_players())
      throw GameError("support/game shape mismatch");
    for (int i = 0; i < game.num_players(); ++i) {
      const auto& s = supports[i];
      if (s.empty()) throw GameError("empty support set");
      if (!std::is_sorted(s.begin(), s.end())) throw GameError("support not sorted");
      if (std::adjacent_find(s.begin(), s.end()) != s.end())
        throw GameError("duplicate support index");
      if (s.front() < 0 || s.back() >= game.num_actions(i))
        throw GameError("support index out of range");
    }
  }

  int total_size() const {
    int t = 0;
    for (const auto& s : supports) t += static_cast<int>(s.size());
    return t;
  }
};

// v_i = sum over joint actions a of U_i(a) * prod_j x_j(a_j).
inline std::vector<double> expected_utility(const Game& game,
                                            const MixedProfile& profile) {
  profile.validate_for(game);
  const int n = game.num_players();
  std::vector<double> v(n, 0.0);
  std::vector<int> joint(n, 0);
  const std::size_t cells = game.num_cells();
  for (std::size_t c = 0; c < cells; ++c) {
    game.unflatten(c, joint);
    double w = 1.0;
    for (int j = 0; j < n; ++j) w *= profile.probs[j][joint[j]];
    if (w == 0.0) continue;
    for (int i = 0; i < n; ++i) v[i] += w * game.payoff_flat(i, c);
  }
  return v;
}

// Expected utility to `player` of committing to `action` while everyone
// else follows the profile (the deviation value of NE constraint (1)).
inline double action_value(const Game& game, int player, int action,
                           const MixedProfile& profile) {
  profile.validate_for(game);
  if (action < 0 || action >= game.num_actions(player))
    throw GameError("action index out of range");
  const int n = game.num_players();
  std::vector<int> joint(n, 0);
  double value = 0.0;
  const std::size_t cells = game.num_cells();
  for (std::size_t c = 0; c < cells; ++c) {
    game.unflatten(c, joint);
    if (joint[player] != action) continue;
    double w = 1.0;
    for (int j = 0; j < n; ++j)
      if (j != player) w *= profile.probs[j][joint[j]];
    if (w == 0.0) continue;
    value += w * game.payoff_flat(player, c);
  }
  return value;
}

inline SupportProfile support_of(const MixedProfile& profile,
                                 double eps = kEpsSupport) {
  SupportProfile s;
  s.supports.resize(profile.probs.size());
  for (std::size_t i = 0; i < profile.probs.size(); ++i) {
    for (int a = 0; a < static_cast<int>(profile.probs[i].size()); ++a)
      if (profile.probs[i][a] > eps) s.supports[i].push_back(a);
    if (s.supports[i].empty())
      throw GameError("degenerate profile: empty support after thresholding");
  }
  return s;
}

// Subgame whose action sets are exactly the support sets; payoff entries
// are copied with their relative order preserved.
inline Game restrict_to(const Game& game, const SupportProfile& support) {
  support.validate_for(game);
  const int n = game.num_players();
  std::vector<int> actions(n);
  std::size_t cells = 1;
  for (int i = 0; i < n; ++i) {
    actions[i] = static_cast<int>(support.supports[i].size());
    cells *= static_cast<std::size_t>(actions[i]);
  }
  std::vector<std::vector<double>> payoffs(n);
  for (auto& u : payoffs) u.reserve(cells);
  std::vector<int> sub(n, 0), orig(n, 0);
  for (std::size_t c = 0; c < cells; ++c) {
    std::size_t rem = c;
    for (int j = n - 1; j >= 0; --j) {
      sub[j] = static_cast<int>(rem % static_cast<std::size_t>(actions[j]));
      rem /= static_cast<std::size_t>(actions[j]);
      orig[j] = support.supports[j][sub[j]];
    }
    for (int i = 0; i < n; ++i) payoffs[i].push_back(game.payoff(i, orig));
  }
  return Game(std::move(actions), std::move(payoffs), game.name());
}

// All pure outcomes as points in utility space.
inline std::vector<PayoffPoint> payoff_points(const Game& game) {
  std::vector<PayoffPoint> points;
  points.reserve(game.num_cells());
  for (std::size_t c = 0; c < game.num_cells(); ++c) {
    PayoffPoint p(game.num_players());
    for (int i = 0; i < game.num_players(); ++i) p[i] = game.payoff_flat(i, c);
    points.push_back(std::move(p));
  }
  return points;
}

}  // namespace sne
