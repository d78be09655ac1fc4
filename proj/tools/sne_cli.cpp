// Command-line front end: solve, verify, gen-hard, perturb, bench.

#include <atomic>
#include <cstdint>
#include <fstream>
#include <map>
#include <iostream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "sne/game.hpp"
#include "sne/game_io.hpp"
#include "sne/hard_instances.hpp"
#include "sne/pareto.hpp"
#include "sne/smoothed.hpp"
#include "sne/solver.hpp"

namespace {

constexpr const char* kVersion = "sne-toolkit 1.0.0 (game format 1)";

// Exit codes: 0 found/SNE, 1 usage, 2 I/O, 3 non-existence, 4 indeterminate,
// 5 aborted.
int exit_code(sne::SolveStatus status) {
  switch (status) {
    case sne::SolveStatus::Found: return 0;
    case sne::SolveStatus::NonExistence: return 3;
    case sne::SolveStatus::Indeterminate: return 4;
    case sne::SolveStatus::Aborted: return 5;
  }
  return 1;
}

nlohmann::json profile_json(const sne::MixedProfile& p) {
  return sne::profile_to_json(p);
}

// Stable JSON for a solve result; wall time is excluded so that identical
// invocations stay byte-identical.
nlohmann::json result_json(const sne::SolveResult& r) {
  nlohmann::json j;
  j["status"] = sne::to_string(r.status);
  j["phase"] = r.phase;
  j["stats"] = {{"pure_profiles_checked", r.stats.pure_profiles_checked},
                {"subbimatrices_scanned", r.stats.subbimatrices_scanned},
                {"supports_enumerated", r.stats.supports_enumerated}};
  if (r.profile) j["profile"] = profile_json(*r.profile);
  if (r.mixed_sne_excluded) j["mixed_sne_excluded"] = *r.mixed_sne_excluded;
  j["indeterminate_candidates"] = nlohmann::json::array();
  for (const auto& p : r.indeterminate_candidates)
    j["indeterminate_candidates"].push_back(profile_json(p));
  return j;
}

void print_profile(const sne::MixedProfile& p) {
  for (std::size_t i = 0; i < p.probs.size(); ++i) {
    std::cout << "  player " << i + 1 << ": [";
    for (std::size_t a = 0; a < p.probs[i].size(); ++a)
      std::cout << (a ? ", " : "") << p.probs[i][a];
    std::cout << "]\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Strong Nash equilibrium toolkit"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  double eps = 1e-9;
  int grid_k = 20;
  int threads = 1;
  bool json_out = false;
  app.add_option("--eps", eps, "verification tolerance")->capture_default_str();
  app.add_option("--grid-k", grid_k, "falsifier simplex grid denominator")
      ->capture_default_str();
  app.add_option("--threads", threads, "parallelism cap (output-independent)")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_flag("--json", json_out, "machine-readable output");

  // solve
  auto* solve_cmd = app.add_subcommand("solve", "find an SNE of a game file");
  std::string solve_path;
  std::int64_t budget = 10000000;
  bool solve_all = false;
  solve_cmd->add_option("game", solve_path, "game file")->required();
  solve_cmd->add_option("--budget", budget, "phase-3 support budget")
      ->capture_default_str();
  solve_cmd->add_flag("--all", solve_all, "enumerate all SNEs exhaustively");

  // verify
  auto* verify_cmd = app.add_subcommand("verify", "verify a profile as SNE");
  std::string verify_game_path, verify_profile_path;
  verify_cmd->add_option("game", verify_game_path, "game file")->required();
  verify_cmd->add_option("profile", verify_profile_path, "profile file")->required();

  // gen-hard
  auto* gen_cmd = app.add_subcommand("gen-hard", "generate a hard instance");
  int gen_m = 4, gen_mbar = 2;
  std::uint64_t gen_seed = 0;
  std::string gen_out;
  gen_cmd->add_option("--m", gen_m, "actions per agent")->required();
  gen_cmd->add_option("--mbar", gen_mbar, "SNE support size")->required();
  gen_cmd->add_option("--seed", gen_seed, "padding seed")->capture_default_str();
  gen_cmd->add_option("--out", gen_out, "output game file")->required();

  // perturb
  auto* pert_cmd = app.add_subcommand("perturb", "perturb a game's payoffs");
  std::string pert_in, pert_out, pert_model = "uniform";
  double pert_sigma = 0.05;
  std::uint64_t pert_seed = 0;
  pert_cmd->add_option("game", pert_in, "game file")->required();
  pert_cmd->add_option("--model", pert_model, "uniform|gaussian")
      ->check(CLI::IsMember({"uniform", "gaussian"}))
      ->capture_default_str();
  pert_cmd->add_option("--sigma", pert_sigma, "perturbation magnitude")->required();
  pert_cmd->add_option("--seed", pert_seed, "seed")->capture_default_str();
  pert_cmd->add_option("--out", pert_out, "output game file")->required();

  // bench
  auto* bench_cmd = app.add_subcommand("bench", "smoothed-runtime experiment");
  int bench_m = 8, bench_mbar = 4, bench_trials = 100;
  double bench_sigma = 0.05;
  std::uint64_t bench_seed = 0;
  std::string bench_csv, bench_model = "uniform";
  bench_cmd->add_option("--m", bench_m, "actions per agent")->required();
  bench_cmd->add_option("--mbar", bench_mbar, "SNE support size")->required();
  bench_cmd->add_option("--sigma", bench_sigma, "perturbation magnitude")->required();
  bench_cmd->add_option("--trials", bench_trials, "number of trials")->required();
  bench_cmd->add_option("--seed", bench_seed, "master seed")->capture_default_str();
  bench_cmd->add_option("--model", bench_model, "uniform|gaussian")
      ->check(CLI::IsMember({"uniform", "gaussian"}))
      ->capture_default_str();
  bench_cmd->add_option("--csv", bench_csv, "per-trial CSV output")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  sne::SolveOptions opts;
  opts.eps = eps;
  opts.grid_k = grid_k;
  opts.threads = threads;

  try {
    if (*solve_cmd) {
      const sne::Game game = sne::load_game(solve_path);
      opts.support_budget = budget;
      if (game.num_players() == 2) {
        if (solve_all) {
          const auto all = sne::find_all_sne_2p(game, opts);
          if (json_out) {
            nlohmann::json j;
            j["status"] = all.empty() ? "non-existence" : "found";
            j["count"] = all.size();
            j["profiles"] = nlohmann::json::array();
            for (const auto& p : all) j["profiles"].push_back(profile_json(p));
            std::cout << j.dump(2) << '\n';
          } else {
            std::cout << all.size() << " SNE(s) found\n";
            for (const auto& p : all) print_profile(p);
          }
          return all.empty() ? 3 : 0;
        }
        const sne::SolveResult result = sne::sne_find(game, opts);
        if (json_out) {
          std::cout << result_json(result).dump(2) << '\n';
        } else {
          std::cout << "status: " << sne::to_string(result.status)
                    << " (phase " << result.phase << ")\n";
          if (result.profile) {
            print_profile(*result.profile);
            const auto v = sne::expected_utility(game, *result.profile);
            std::cout << "  values: [";
            for (std::size_t i = 0; i < v.size(); ++i)
              std::cout << (i ? ", " : "") << v[i];
            std::cout << "]\n";
          }
        }
        return exit_code(result.status);
      }
      const sne::SolveResult result = sne::sne_find_pure_n(game, opts);
      if (json_out)
        std::cout << result_json(result).dump(2) << '\n';
      else
        std::cout << "status: " << sne::to_string(result.status)
                  << " (pure search; mixed "
                  << (result.mixed_sne_excluded && *result.mixed_sne_excluded
                          ? "excluded"
                          : "undetermined")
                  << ")\n";
      return exit_code(result.status);
    }

    if (*verify_cmd) {
      const sne::Game game = sne::load_game(verify_game_path);
      const sne::MixedProfile profile = sne::load_profile(verify_profile_path);
      auto [status, evidence] =
          sne::verify_sne(game, profile, eps, grid_k);
      const char* name = status == sne::SneStatus::Sne ? "SNE"
                         : status == sne::SneStatus::NotSne ? "not-SNE"
                                                            : "indeterminate";
      if (json_out) {
        nlohmann::json j;
        j["status"] = name;
        j["is_ne"] = evidence.ne.is_ne;
        j["max_violation"] = evidence.ne.certificate.max_violation;
        j["values"] = evidence.ne.certificate.values;
        std::cout << j.dump(2) << '\n';
      } else {
        std::cout << name << '\n';
      }
      return status == sne::SneStatus::Sne ? 0
             : status == sne::SneStatus::NotSne ? 3 : 4;
    }

    if (*gen_cmd) {
      sne::HardSpec spec{gen_m, gen_mbar, gen_seed};
      auto [game, known] = sne::gen_hard(spec);
      sne::save_game(game, gen_out);
      sne::save_profile(known, gen_out + ".sne.json");
      if (!json_out)
        std::cout << "wrote " << gen_out << " and " << gen_out << ".sne.json\n";
      return 0;
    }

    if (*pert_cmd) {
      const sne::Game game = sne::load_game(pert_in);
      sne::PerturbationSpec spec;
      spec.model = pert_model == "uniform" ? sne::PerturbModel::Uniform
                                           : sne::PerturbModel::Gaussian;
      spec.sigma = pert_sigma;
      spec.seed = pert_seed;
      sne::save_game(sne::perturb(game, spec), pert_out);
      if (!json_out) std::cout << "wrote " << pert_out << '\n';
      return 0;
    }

    if (*bench_cmd) {
      sne::HardSpec hard{bench_m, bench_mbar, bench_seed};
      auto [base, known] = sne::gen_hard(hard);
      sne::PerturbationSpec spec;
      spec.model = bench_model == "uniform" ? sne::PerturbModel::Uniform
                                            : sne::PerturbModel::Gaussian;
      spec.sigma = bench_sigma;
      spec.seed = bench_seed;

      // Trials are independent; run them on up to `threads` workers and emit
      // rows in trial order so the CSV is identical for any thread count.
      std::vector<sne::TrialRow> rows(bench_trials);
      const int workers = std::min(threads, bench_trials);
      std::vector<std::thread> pool;
      std::atomic<int> cursor{0};
      auto work = [&]() {
        for (;;) {
          const int t = cursor.fetch_add(1);
          if (t >= bench_trials) break;
          sne::PerturbationSpec trial_spec = spec;
          trial_spec.seed = sne::mix_seed(spec.seed, static_cast<std::uint64_t>(t));
          const sne::Game perturbed = sne::perturb(base, trial_spec);
          const sne::SolveResult r = sne::sne_find(perturbed, opts);
          rows[t] = {t, r.phase, r.stats.supports_enumerated, r.stats.wall_time,
                     r.status, sne::aligned_2x2_witness_scan(perturbed)};
        }
      };
      for (int w = 0; w < workers; ++w) pool.emplace_back(work);
      for (auto& th : pool) th.join();

      std::ofstream csv(bench_csv);
      if (!csv) throw sne::GameError("cannot open for writing: " + bench_csv);
      csv << "trial,phase,supports_enumerated,wall_time,status\n";
      for (const auto& r : rows)
        csv << r.trial << ',' << r.phase << ',' << r.supports_enumerated << ','
            << r.wall_time << ',' << sne::to_string(r.status) << '\n';
      int hits = 0;
      std::map<int, int> histogram;
      for (const auto& r : rows) {
        ++histogram[r.phase];
        if (r.alignment_hit) ++hits;
      }
      if (json_out) {
        nlohmann::json j;
        j["trials"] = bench_trials;
        j["alignment_hit_rate"] = static_cast<double>(hits) / bench_trials;
        for (const auto& [phase, count] : histogram)
          j["phase_histogram"][std::to_string(phase)] = count;
        std::cout << j.dump(2) << '\n';
      } else {
        std::cout << "trials: " << bench_trials
                  << ", alignment hits: " << hits << '\n';
        for (const auto& [phase, count] : histogram)
          std::cout << "  phase " << phase << ": " << count << '\n';
      }
      return 0;
    }
  } catch (const sne::GameError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 1;
}
