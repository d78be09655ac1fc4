#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "common/test_games.hpp"
#include "sne/equilibrium.hpp"
#include "sne/hard_instances.hpp"
#include "sne/pareto.hpp"

using namespace sne;

TEST_CASE("even block game reproduces the reference 8x8 table") {
  const Game g = gen_block_even(4);
  REQUIRE(g.num_actions(0) == 8);
  REQUIRE(g.num_actions(1) == 8);
  // spot checks against the reference table (0-based rows/cols)
  CHECK(g.at2(0, 0, 0) == 1.0);   // (a1,a9) = 1,0
  CHECK(g.at2(1, 0, 0) == 0.0);
  CHECK(g.at2(0, 0, 1) == 0.0);   // (a1,a10) = 0,1
  CHECK(g.at2(1, 0, 1) == 1.0);
  CHECK(g.at2(0, 0, 4) == -4.0);  // (a1,a13) = -m,-m
  CHECK(g.at2(1, 0, 4) == -4.0);
  CHECK(g.at2(0, 0, 5) == -4.0);  // (a1,a14) = -m,1
  CHECK(g.at2(1, 0, 5) == 1.0);
  CHECK(g.at2(0, 4, 0) == -4.0);  // (a5,a9) = -m,-m
  CHECK(g.at2(1, 4, 0) == -4.0);
  CHECK(g.at2(0, 4, 1) == 1.0);   // (a5,a10) = 1,-m
  CHECK(g.at2(1, 4, 1) == -4.0);
  CHECK(g.at2(0, 4, 4) == 0.0);   // (a5,a13) = 0,0
  CHECK(g.at2(1, 4, 4) == 0.0);
  CHECK(g.at2(0, 7, 3) == -4.0);  // (a8,a12) diagonal of lower-left block
  CHECK(g.at2(1, 7, 3) == -4.0);
}

TEST_CASE("block games have the uniform-over-block profile as SNE") {
  for (int mbar : {2, 3, 4, 5}) {
    CAPTURE(mbar);
    const Game g = gen_block(mbar);
    const MixedProfile uniform = uniform_over_first(g, mbar);
    const auto [status, evidence] = verify_sne(g, uniform);
    CHECK(status == SneStatus::Sne);
    const auto v = expected_utility(g, uniform);
    CHECK(v[0] == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(v[1] == doctest::Approx(0.5).epsilon(1e-9));
  }
}

TEST_CASE("block game parameter validation") {
  CHECK_THROWS_AS(gen_block_even(3), GameError);
  CHECK_THROWS_AS(gen_block_even(0), GameError);
  CHECK_THROWS_AS(gen_block_odd(4), GameError);
  CHECK_THROWS_AS(gen_block_odd(1), GameError);
}

TEST_CASE("gen_hard embeds the block and pads within range") {
  const HardSpec spec{10, 3, 42};
  const auto [g, known] = gen_hard(spec);
  CHECK(g.num_actions(0) == 10);
  CHECK(g.num_actions(1) == 10);
  // leading 6x6 corner equals the block game
  const Game block = gen_block(3);
  for (int p = 0; p < 2; ++p)
    for (int r = 0; r < 6; ++r)
      for (int c = 0; c < 6; ++c)
        CHECK(g.at2(p, r, c) == block.at2(p, r, c));
  // padding cells drawn from {-mbar, ..., 0}
  for (int p = 0; p < 2; ++p)
    for (int r = 0; r < 10; ++r)
      for (int c = 0; c < 10; ++c) {
        if (r < 6 && c < 6) continue;
        const double v = g.at2(p, r, c);
        CHECK(v <= 0.0);
        CHECK(v >= -3.0);
        CHECK(v == static_cast<int>(v));
      }
  // known profile is uniform over the first mbar actions
  CHECK(known.probs[0] ==
        std::vector<double>{1. / 3, 1. / 3, 1. / 3, 0, 0, 0, 0, 0, 0, 0});
  CHECK(known.probs[1] == known.probs[0]);
}

TEST_CASE("gen_hard known profile verifies as SNE") {
  for (auto [m, mbar] : {std::pair{4, 2}, {7, 3}, {8, 4}, {5, 1}}) {
    CAPTURE(m);
    CAPTURE(mbar);
    const HardSpec spec{m, mbar, 7};
    const auto [g, known] = gen_hard(spec);
    CHECK(verify_sne(g, known).first == SneStatus::Sne);
  }
}

TEST_CASE("gen_hard is deterministic in the seed and varies with it") {
  const HardSpec a{9, 2, 123}, b{9, 2, 123}, c{9, 2, 124};
  CHECK(gen_hard(a).first == gen_hard(b).first);
  CHECK_FALSE(gen_hard(a).first == gen_hard(c).first);
}

TEST_CASE("gen_hard validates its parameters") {
  CHECK_THROWS_AS(gen_hard(HardSpec{3, 2, 0}), GameError);  // 2*mbar > m
  CHECK_THROWS_AS(gen_hard(HardSpec{4, 0, 0}), GameError);
  CHECK_THROWS_AS(gen_hard(HardSpec{0, 1, 0}), GameError);
  CHECK_NOTHROW(gen_hard(HardSpec{4, 2, 0}));
  CHECK_NOTHROW(gen_hard(HardSpec{1, 1, 0}));
}

TEST_CASE("mbar=1 instance has the unique pure SNE at the corner") {
  const auto [g, known] = gen_hard(HardSpec{6, 1, 5});
  CHECK(g.at2(0, 0, 0) == 1.0);
  CHECK(g.at2(1, 0, 0) == 1.0);
  CHECK(support_of(known).supports[0] == std::vector<int>{0});
  CHECK(verify_sne(g, known).first == SneStatus::Sne);
}
