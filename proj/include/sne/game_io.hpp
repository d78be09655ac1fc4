#pragma once

#include <fstream>
#include <string>

#include <json.hpp>

#include "sne/game.hpp"

namespace sne {

// Canonical game file:
//   { "name": string?, "players": n, "actions": [m_1,...,m_n],
//     "payoffs": [flat array player 1, ...] }
// Flat arrays are row-major with the last player's action index fastest.

inline nlohmann::json game_to_json(const Game& game) {
  nlohmann::json j;
  if (!game.name().empty()) j["name"] = game.name();
  j["players"] = game.num_players();
  j["actions"] = game.actions();
  j["payoffs"] = nlohmann::json::array();
  for (int i = 0; i < game.num_players(); ++i)
    j["payoffs"].push_back(game.payoff_tensor(i));
  return j;
}

inline Game game_from_json(const nlohmann::json& j) {
  if (!j.contains("players") || !j.contains("actions") || !j.contains("payoffs"))
    throw GameError("game file: missing players/actions/payoffs field");
  const int n = j.at("players").get<int>();
  auto actions = j.at("actions").get<std::vector<int>>();
  if (static_cast<int>(actions.size()) != n)
    throw GameError("game file: actions length disagrees with players");
  auto payoffs = j.at("payoffs").get<std::vector<std::vector<double>>>();
  std::string name = j.value("name", std::string{});
  return Game(std::move(actions), std::move(payoffs), std::move(name));
}

inline void save_game(const Game& game, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw GameError("cannot open for writing: " + path);
  out << game_to_json(game).dump(2) << '\n';
}

inline Game load_game(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw GameError("cannot open: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw GameError("parse error in " + path + ": " + e.what());
  }
  try {
    return game_from_json(j);
  } catch (const nlohmann::json::exception& e) {
    throw GameError("malformed game file " + path + ": " + e.what());
  }
}

// Profiles serialize as { "probs": [[...], ...] }.
inline nlohmann::json profile_to_json(const MixedProfile& profile) {
  return nlohmann::json{{"probs", profile.probs}};
}

inline MixedProfile profile_from_json(const nlohmann::json& j) {
  MixedProfile p;
  p.probs = j.at("probs").get<std::vector<std::vector<double>>>();
  return p;
}

inline void save_profile(const MixedProfile& profile, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw GameError("cannot open for writing: " + path);
  out << profile_to_json(profile).dump(2) << '\n';
}

inline MixedProfile load_profile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw GameError("cannot open: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw GameError("parse error in " + path + ": " + e.what());
  }
  try {
    return profile_from_json(j);
  } catch (const nlohmann::json::exception& e) {
    throw GameError("malformed profile file " + path + ": " + e.what());
  }
}

}  // namespace sne
