#pragma once

#include <iosfwd>
#include <string>
#include <string_view>

#include "memdyn/dynamics.hpp"
#include "memdyn/game.hpp"
#include "memdyn/metagame.hpp"
#include "memdyn/verification.hpp"

namespace memdyn {

inline constexpr std::string_view kTrajectoryHeader = "t,x1,x2,a1,a2,p1,p2";

// One row per round: the average at t, the actions decided there and their payoff.
void write_trajectory_csv(std::ostream& os, const Trajectory& traj);
// Inverse of write_trajectory_csv; throws Parse with the offending line number.
Trajectory read_trajectory_csv(std::istream& is);

// {"actions1": [...], "actions2": [...], "payoffs": [[[u1, u2], ...], ...]}.
// Non-total tables are InvalidParameter; payoff vectors of length != 2 are Unsupported.
Game parse_game_json(std::string_view text);
std::string game_to_json(const Game& g);
// "pd" or a path to a game file.
Game load_game(const std::string& name_or_path);

// Pretty-printed JSON documents with stable field names.
std::string to_json(const BetaCoreImage& core);
std::string to_json(const LimitPrediction& p);
std::string to_json(const RunSummary& s);
std::string to_json(const SetCheckReport& r);
std::string to_json(const SafetyReport& r);
std::string to_json(const MetagameMatrix& m, const std::vector<CellIndex>& nash);

// i,j,a1,a2,b1,b2,u1,u2,case,flagged
void write_metagame_csv(std::ostream& os, const MetagameMatrix& m);

}  // namespace memdyn
