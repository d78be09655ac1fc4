#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "common/test_games.hpp"
#include "sne/pareto.hpp"
#include "sne/rng.hpp"

using namespace sne;

TEST_CASE("coalition enumeration is size-ascending then lexicographic") {
  const auto cs = enumerate_coalitions(3, 2);
  REQUIRE(cs.size() == 4);
  CHECK(cs[0] == std::vector<int>{0, 1});
  CHECK(cs[1] == std::vector<int>{0, 2});
  CHECK(cs[2] == std::vector<int>{1, 2});
  CHECK(cs[3] == std::vector<int>{0, 1, 2});
  CHECK(enumerate_coalitions(2, 1).size() == 3);  // {0}, {1}, {0,1}
  CHECK(enumerate_coalitions(4, 2).size() == 11);
}

TEST_CASE("correlated frontier: hull vertices are efficient, interior is not") {
  // points on u1 + u2 = 3
  const std::vector<PayoffPoint> pts{{3, 0}, {0, 3}, {1, 2}, {2, 1}};
  CHECK(correlated_frontier_check(pts, {1.5, 1.5}).status ==
        FrontierStatus::Efficient);
  CHECK(correlated_frontier_check(pts, {3, 0}).status ==
        FrontierStatus::Efficient);
  const auto bad = correlated_frontier_check(pts, {1.0, 1.0});
  CHECK(bad.status == FrontierStatus::Dominated);
  CHECK(bad.margin >= 0.5 - 1e-9);  // (1.5,1.5) improves both by 0.5
}

TEST_CASE("correlated frontier check is sound on random clouds") {
  SplitMix64 rng(31);
  for (int rep = 0; rep < 40; ++rep) {
    std::vector<PayoffPoint> pts;
    for (int k = 0; k < 6; ++k)
      pts.push_back({rng.next_double() * 4, rng.next_double() * 4});
    // The coordinatewise max over the cloud plus a margin is never dominated.
    PayoffPoint top{0, 0};
    for (const auto& p : pts) {
      top[0] = std::max(top[0], p[0]);
      top[1] = std::max(top[1], p[1]);
    }
    CHECK(correlated_frontier_check(pts, {top[0] + 0.1, top[1] + 0.1}).status ==
          FrontierStatus::Efficient);
    // The centroid shifted strictly below every coordinate of some point is
    // dominated whenever a single point beats it in both coordinates.
    PayoffPoint low{pts[0][0] - 0.2, pts[0][1] - 0.2};
    const auto v = correlated_frontier_check(pts, low);
    CHECK(v.status == FrontierStatus::Dominated);
    CHECK(v.margin >= 0.2 - 1e-9);
  }
}

TEST_CASE("frontier verdict carries a dominating witness point") {
  const std::vector<PayoffPoint> pts{{2, 2}, {0, 0}};
  const auto v = correlated_frontier_check(pts, {1, 1});
  REQUIRE(v.status == FrontierStatus::Dominated);
  REQUIRE(v.witness_point.has_value());
  CHECK((*v.witness_point)[0] > 1.0 + 1e-9);
  CHECK((*v.witness_point)[1] > 1.0 + 1e-9);
}

TEST_CASE("mixed falsifier finds the dominating deviation in the PD") {
  const Game g = fixtures::prisoners_dilemma();
  const MixedProfile defect = pure_profile(g, {1, 1});
  const auto v = mixed_deviation_falsifier(g, defect, {0, 1});
  CHECK(v.status == FrontierStatus::Dominated);
  REQUIRE(v.witness_profile.has_value());
  // witness must genuinely dominate (1,1) for the grand coalition
  const auto w = expected_utility(g, *v.witness_profile);
  CHECK(w[0] > 1.0 + 1e-9);
  CHECK(w[1] > 1.0 + 1e-9);
}

TEST_CASE("mixed falsifier never contradicts the correlated relaxation") {
  // If the correlated frontier says Efficient, no mixed deviation exists; the
  // falsifier must agree (mixed outcomes are a subset of correlated ones).
  const Game g = fixtures::aligned_2x2();
  const MixedProfile x{{{0.25, 0.75}, {0.5, 0.5}}};
  for (const auto& c : enumerate_coalitions(2, 1)) {
    const auto cor = correlated_frontier_check(
        coalition_outcome_points(g, x, c),
        [&] {
          const auto eu = expected_utility(g, x);
          PayoffPoint u;
          for (int p : c) u.push_back(eu[static_cast<std::size_t>(p)]);
          return u;
        }());
    if (cor.status == FrontierStatus::Efficient)
      CHECK(mixed_deviation_falsifier(g, x, c).status !=
            FrontierStatus::Dominated);
  }
}

TEST_CASE("verify_sne certifies the 2x2 mixed SNE") {
  const Game g = fixtures::aligned_2x2();
  const MixedProfile x{{{0.25, 0.75}, {0.5, 0.5}}};
  const auto [status, evidence] = verify_sne(g, x);
  CHECK(status == SneStatus::Sne);
  CHECK(evidence.ne.is_ne);
  for (const auto& [coalition, verdict] : evidence.coalition_verdicts)
    CHECK(verdict.status == FrontierStatus::Efficient);
}

TEST_CASE("verify_sne rejects the prisoner's dilemma equilibrium") {
  const Game g = fixtures::prisoners_dilemma();
  const auto [status, evidence] = verify_sne(g, pure_profile(g, {1, 1}));
  CHECK(status == SneStatus::NotSne);
  // the grand-coalition verdict is the dominated one
  bool grand_dominated = false;
  for (const auto& [coalition, verdict] : evidence.coalition_verdicts)
    if (coalition.size() == 2 && verdict.status == FrontierStatus::Dominated)
      grand_dominated = true;
  CHECK(grand_dominated);
}

TEST_CASE("verify_sne distinguishes the two coordination equilibria") {
  const Game g = fixtures::coordination();
  CHECK(verify_sne(g, pure_profile(g, {0, 0})).first == SneStatus::Sne);
  CHECK(verify_sne(g, pure_profile(g, {1, 1})).first == SneStatus::NotSne);
}

TEST_CASE("verify_sne rejects non-NE profiles outright") {
  const Game g = fixtures::coordination();
  const MixedProfile x{{{0.5, 0.5}, {0.5, 0.5}}};
  CHECK(verify_sne(g, x).first == SneStatus::NotSne);
}

TEST_CASE("verify_sne accepts the uniform profile of the 3-player game") {
  const Game g = fixtures::cyclic_3x3x3();
  const MixedProfile uniform{{{1. / 3, 1. / 3, 1. / 3},
                              {1. / 3, 1. / 3, 1. / 3},
                              {1. / 3, 1. / 3, 1. / 3}}};
  // all 27 outcome points lie on u1+u2+u3 = 1, and (1/3,1/3,1/3) is on it
  const auto [status, evidence] = verify_sne(g, uniform);
  CHECK(status == SneStatus::Sne);
}

TEST_CASE("dominated interior NE is falsified, not left indeterminate") {
  const Game g = fixtures::battle_dominated();
  const MixedProfile x{{{2. / 3, 1. / 3}, {1. / 3, 2. / 3}}};
  REQUIRE(verify_ne(g, x).is_ne);
  const auto [status, evidence] = verify_sne(g, x);
  CHECK(status == SneStatus::NotSne);
}

TEST_CASE("simplex grid covers all compositions") {
  // k=2 over 3 coordinates -> C(4,2) = 6 points, each summing to 1
  detail::SimplexGrid grid(3, 2);
  int count = 0;
  do {
    ++count;
    double s = 0;
    for (double v : grid.probs()) s += v;
    CHECK(s == doctest::Approx(1.0).epsilon(1e-12));
  } while (grid.advance());
  CHECK(count == 6);
}
