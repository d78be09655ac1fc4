#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "sne/game.hpp"
#include "sne/rng.hpp"

namespace sne {

// Parameters of a hard-to-solve instance: m actions per agent, target
// support size mbar, and the seed for the random padding entries.
struct HardSpec {
  int m = 4;
  int mbar = 2;
  std::uint64_t seed = 0;

  void validate() const {
    if (mbar < 1) throw GameError("hard instance: mbar must be >= 1");
    if (mbar == 1) {
      if (m < 1) throw GameError("hard instance: m must be >= 1");
    } else if (2 * mbar > m) {
      throw GameError("hard instance: need 2*mbar <= m");
    }
  }
};

namespace detail {

// The four mbar x mbar blocks per player of the even construction, written
// directly into an m x m payoff pair. Checkerboard phase is 0-based with
// U_1 = 1 when i+j is even, so cell (a_1, a_{m+1}) reads (1, 0).
inline void fill_even_blocks(int mbar, int m, std::vector<double>& u1,
                             std::vector<double>& u2) {
  auto idx = [m](int r, int c) {
    return static_cast<std::size_t>(r) * static_cast<std::size_t>(m) +
           static_cast<std::size_t>(c);
  };
  const double neg = -static_cast<double>(mbar);
  for (int i = 0; i < mbar; ++i)
    for (int j = 0; j < mbar; ++j) {
      u1[idx(i, j)] = (i + j) % 2 == 0 ? 1.0 : 0.0;          // U1^{1,1}
      u2[idx(i, j)] = (i + j) % 2 == 1 ? 1.0 : 0.0;          // U2^{1,1}
      u1[idx(mbar + i, j)] = i == j ? neg : 1.0;             // U1^{2,1}
      u2[idx(mbar + i, j)] = neg;                            // U2^{2,1}
      u1[idx(i, mbar + j)] = neg;                            // U1^{1,2}
      u2[idx(i, mbar + j)] = i == j ? neg : 1.0;             // U2^{1,2}
      u1[idx(mbar + i, mbar + j)] = 0.0;                     // U1^{2,2}
      u2[idx(mbar + i, mbar + j)] = 0.0;                     // U2^{2,2}
    }
}

}  // namespace detail

// Block construction for even support size: 2*mbar actions per agent, a
// unique-SNE game whose only SNE is uniform over the first mbar actions.
inline Game gen_block_even(int mbar) {
  if (mbar < 2 || mbar % 2 != 0)
    throw GameError("gen_block_even: mbar must be even and >= 2");
  const int m = 2 * mbar;
  std::vector<double> u1(static_cast<std::size_t>(m) * m, 0.0), u2 = u1;
  detail::fill_even_blocks(mbar, m, u1, u2);
  return Game({m, m}, {std::move(u1), std::move(u2)},
              "block_even_" + std::to_string(mbar));
}

// Odd variant: the leading (mbar-1)x(mbar-1) checkerboard plus value 1/2 in
// the remaining row and column of the top-left block, for both players.
inline Game gen_block_odd(int mbar) {
  if (mbar < 3 || mbar % 2 != 1)
    throw GameError("gen_block_odd: mbar must be odd and >= 3");
  const int m = 2 * mbar;
  std::vector<double> u1(static_cast<std::size_t>(m) * m, 0.0), u2 = u1;
  detail::fill_even_blocks(mbar, m, u1, u2);
  auto idx = [m](int r, int c) {
    return static_cast<std::size_t>(r) * static_cast<std::size_t>(m) +
           static_cast<std::size_t>(c);
  };
  for (int i = 0; i < mbar; ++i) {
    u1[idx(i, mbar - 1)] = u2[idx(i, mbar - 1)] = 0.5;
    u1[idx(mbar - 1, i)] = u2[idx(mbar - 1, i)] = 0.5;
  }
  return Game({m, m}, {std::move(u1), std::move(u2)},
              "block_odd_" + std::to_string(mbar));
}

inline Game gen_block(int mbar) {
  return mbar % 2 == 0 ? gen_block_even(mbar) : gen_block_odd(mbar);
}

// Definition-style hard instance: the block construction embedded as the
// leading 2*mbar x 2*mbar sub-bimatrix, every remaining cell an integer
// drawn i.i.d. uniform from {-mbar, ..., 0}. For mbar = 1 the designated
// pure SNE cell (0,0) is set to (1,1) and everything else is drawn from
// {-1, 0}. Draw order: player 1 then player 2, cells row-major.
inline std::pair<Game, MixedProfile> gen_hard(const HardSpec& spec) {
  spec.validate();
  const int m = spec.m;
  SplitMix64 rng(spec.seed);
  std::vector<std::vector<double>> payoffs(
      2, std::vector<double>(static_cast<std::size_t>(m) * m, 0.0));

  if (spec.mbar == 1) {
    for (int player = 0; player < 2; ++player)
      for (int r = 0; r < m; ++r)
        for (int c = 0; c < m; ++c) {
          if (r == 0 && c == 0) {
            payoffs[player][0] = 1.0;
            continue;
          }
          payoffs[player][static_cast<std::size_t>(r) * m + c] =
              -static_cast<double>(rng.next_below(2));
        }
    Game game({m, m}, std::move(payoffs),
              "hard_m" + std::to_string(m) + "_mbar1_s" +
                  std::to_string(spec.seed));
    const int joint[2] = {0, 0};
    return {game, pure_profile(game, joint)};
  }

  const int block = 2 * spec.mbar;
  const Game core = gen_block(spec.mbar);
  for (int player = 0; player < 2; ++player)
    for (int r = 0; r < m; ++r)
      for (int c = 0; c < m; ++c) {
        double value;
        if (r < block && c < block) {
          value = core.at2(player, r, c);
        } else {
          value = -static_cast<double>(
              rng.next_below(static_cast<std::uint64_t>(spec.mbar) + 1));
        }
        payoffs[player][static_cast<std::size_t>(r) * m + c] = value;
      }
  Game game({m, m}, std::move(payoffs),
            "hard_m" + std::to_string(m) + "_mbar" + std::to_string(spec.mbar) +
                "_s" + std::to_string(spec.seed));
  return {game, uniform_over_first(game, spec.mbar)};
}

}  // namespace sne
