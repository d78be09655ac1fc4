#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "sne/characterization.hpp"
#include "sne/game.hpp"
#include "sne/rng.hpp"
#include "sne/solver.hpp"

namespace sne {

enum class PerturbModel { Uniform, Gaussian };

inline const char* to_string(PerturbModel m) {
  return m == PerturbModel::Uniform ? "uniform" : "gaussian";
}

// Perturbation D_sigma: independent additive noise on every payoff entry.
struct PerturbationSpec {
  PerturbModel model = PerturbModel::Uniform;
  double sigma = 0.05;
  std::uint64_t seed = 0;

  void validate() const {
    if (sigma <= 0) throw GameError("perturbation: sigma must be > 0");
  }
  // The smoothed-runtime definition ranges over 0 < sigma < 1; larger values
  // are allowed but flagged.
  bool in_definition_range() const { return sigma > 0 && sigma < 1; }
};

// Applies the additive perturbation, uniform on [-sigma, +sigma] or normal
// with standard deviation sigma (Box-Muller over the splitmix stream, so the
// output is bit-reproducible from the seed alone). Draw order: player by
// player, entries in flat tensor order.
inline Game perturb(const Game& game, const PerturbationSpec& spec) {
  spec.validate();
  SplitMix64 rng(spec.seed);
  std::vector<std::vector<double>> payoffs;
  payoffs.reserve(game.num_players());
  for (int i = 0; i < game.num_players(); ++i) {
    std::vector<double> u = game.payoff_tensor(i);
    for (double& v : u) {
      if (spec.model == PerturbModel::Uniform) {
        v += spec.sigma * (2.0 * rng.next_double() - 1.0);
      } else {
        // Box-Muller; 1 - u keeps the log argument strictly positive.
        const double r = std::sqrt(-2.0 * std::log(1.0 - rng.next_double()));
        const double theta = 6.283185307179586476925287 * rng.next_double();
        v += spec.sigma * r * std::cos(theta);
      }
    }
    payoffs.push_back(std::move(u));
  }
  std::vector<int> actions = game.actions();
  return Game(std::move(actions), std::move(payoffs), game.name());
}

struct TrialRow {
  int trial = 0;
  int phase = 0;
  std::int64_t supports_enumerated = 0;
  double wall_time = 0.0;
  SolveStatus status = SolveStatus::Indeterminate;
  bool alignment_hit = false;
};

struct ExperimentReport {
  int trials = 0;
  std::map<int, int> phase_histogram;  // terminating phase -> count
  int aborted = 0;
  double mean_time = 0.0;
  double max_time = 0.0;
  double alignment_hit_rate = 0.0;     // fraction with a 2x2 scan witness
  double smoothed_time_estimate = 0.0; // empirical analog of smoothed-t_A
};

// Perturbs `base` once per trial (child seed = mix(seed, trial)), solves,
// and aggregates. Trials are independent; merging is order-insensitive.
inline ExperimentReport run_experiment(const Game& base,
                                       const PerturbationSpec& spec_template,
                                       int trials,
                                       const SolveOptions& opts = {},
                                       std::vector<TrialRow>* rows = nullptr) {
  if (trials < 1) throw GameError("run_experiment: trials must be >= 1");
  spec_template.validate();
  ExperimentReport report;
  report.trials = trials;
  double total_time = 0.0;
  int hits = 0;
  for (int t = 0; t < trials; ++t) {
    PerturbationSpec spec = spec_template;
    spec.seed = mix_seed(spec_template.seed, static_cast<std::uint64_t>(t));
    const Game perturbed = perturb(base, spec);
    const SolveResult result = sne_find(perturbed, opts);
    const bool hit = aligned_2x2_witness_scan(perturbed);
    ++report.phase_histogram[result.phase];
    if (result.status == SolveStatus::Aborted) ++report.aborted;
    total_time += result.stats.wall_time;
    report.max_time = std::max(report.max_time, result.stats.wall_time);
    if (hit) ++hits;
    if (rows)
      rows->push_back({t, result.phase, result.stats.supports_enumerated,
                       result.stats.wall_time, result.status, hit});
  }
  report.mean_time = total_time / trials;
  report.smoothed_time_estimate = report.mean_time;
  report.alignment_hit_rate = static_cast<double>(hits) / trials;
  return report;
}

}  // namespace sne
