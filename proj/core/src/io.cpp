#include "memdyn/io.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "memdyn/error.hpp"
#include "memdyn/format.hpp"
#include "memdyn/strategy_spec.hpp"

namespace memdyn {

using nlohmann::json;

namespace {

json point_json(Point2 p) { return json::array({p.x1, p.x2}); }

std::string dump(const json& j) { return j.dump(2) + "\n"; }

[[noreturn]] void csv_fail(std::size_t line, const std::string& what) {
  throw Error(ErrorKind::Parse, "trajectory CSV line " + std::to_string(line) + ": " + what);
}

Action parse_action(std::string_view s, std::size_t line) {
  if (s == "C") return Action::C;
  if (s == "D") return Action::D;
  csv_fail(line, "expected action C or D, got \"" + std::string(s) + "\"");
}

std::vector<std::string_view> split_commas(std::string_view row) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= row.size(); ++i) {
    if (i == row.size() || row[i] == ',') {
      out.push_back(row.substr(start, i - start));
      start = i + 1;
    }
  }
  return out;
}

}  // namespace

void write_trajectory_csv(std::ostream& os, const Trajectory& traj) {
  os << kTrajectoryHeader << '\n';
  for (std::size_t k = 0; k < traj.size(); ++k) {
    const Point2 x = traj.points[k];
    const Point2 p = traj.payoffs[k];
    os << traj.t_at(k) << ',' << format_number(x.x1) << ',' << format_number(x.x2) << ','
       << to_char(traj.actions[k][0]) << ',' << to_char(traj.actions[k][1]) << ','
       << format_number(p.x1) << ',' << format_number(p.x2) << '\n';
  }
}

Trajectory read_trajectory_csv(std::istream& is) {
  std::string row;
  std::size_t line = 1;
  if (!std::getline(is, row)) csv_fail(line, "missing header");
  if (!row.empty() && row.back() == '\r') row.pop_back();
  if (row != kTrajectoryHeader) csv_fail(line, "expected header " + std::string(kTrajectoryHeader));
  Trajectory traj;
  while (std::getline(is, row)) {
    ++line;
    if (!row.empty() && row.back() == '\r') row.pop_back();
    if (row.empty()) continue;
    const auto cells = split_commas(row);
    if (cells.size() != 7) csv_fail(line, "expected 7 fields, got " + std::to_string(cells.size()));
    double t = 0.0;
    try {
      t = parse_number(cells[0]);
      const Point2 x{parse_number(cells[1]), parse_number(cells[2])};
      const Point2 p{parse_number(cells[5]), parse_number(cells[6])};
      traj.points.push_back(x);
      traj.payoffs.push_back(p);
    } catch (const Error& e) {
      csv_fail(line, e.what());
    }
    traj.actions.push_back({parse_action(cells[3], line), parse_action(cells[4], line)});
    const auto ti = static_cast<std::int64_t>(t);
    if (static_cast<double>(ti) != t) csv_fail(line, "round index must be an integer");
    if (traj.points.size() == 1) {
      if (ti < 1) csv_fail(line, "round index must be at least 1");
      traj.t0 = ti;
    } else if (ti != traj.t_at(traj.points.size() - 1)) {
      csv_fail(line, "round indices must be consecutive");
    }
  }
  if (traj.points.empty()) csv_fail(line, "no data rows");
  return traj;
}

Game parse_game_json(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::Parse, std::string("game file: ") + e.what());
  }
  if (j.contains("players") && j["players"] != 2) {
    throw Error(ErrorKind::Unsupported, "only two-player games are supported");
  }
  try {
    const auto a1 = j.at("actions1").get<std::vector<std::string>>();
    const auto a2 = j.at("actions2").get<std::vector<std::string>>();
    const json& table = j.at("payoffs");
    if (!table.is_array() || table.size() != a1.size()) {
      throw Error(ErrorKind::InvalidParameter, "payoff table needs one row per action of player 1");
    }
    std::vector<Point2> payoffs;
    for (const json& r : table) {
      if (!r.is_array() || r.size() != a2.size()) {
        throw Error(ErrorKind::InvalidParameter, "payoff table is not total over actions1 x actions2");
      }
      for (const json& cell : r) {
        if (!cell.is_array()) throw Error(ErrorKind::Parse, "payoff entries must be arrays");
        if (cell.size() != 2) {
          throw Error(ErrorKind::Unsupported, "payoff vectors must have two components");
        }
        payoffs.push_back({cell[0].get<double>(), cell[1].get<double>()});
      }
    }
    return Game(a1, a2, std::move(payoffs));
  } catch (const json::exception& e) {
    throw Error(ErrorKind::Parse, std::string("game file: ") + e.what());
  }
}

std::string game_to_json(const Game& g) {
  json table = json::array();
  for (std::size_t i = 0; i < g.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < g.cols(); ++j) row.push_back(point_json(g.payoff(i, j)));
    table.push_back(row);
  }
  return dump({{"actions1", g.actions1()}, {"actions2", g.actions2()}, {"payoffs", table}});
}

Game load_game(const std::string& name_or_path) {
  if (name_or_path == "pd") return make_pd();
  std::ifstream in(name_or_path);
  if (!in) throw Error(ErrorKind::InvalidParameter, "cannot open game file " + name_or_path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_game_json(buf.str());
}

std::string to_json(const BetaCoreImage& core) {
  json segs = json::array();
  for (const Segment& s : core.segments) segs.push_back({point_json(s.a), point_json(s.b)});
  json excl = json::array();
  for (Point2 p : core.excluded_endpoints) excl.push_back(point_json(p));
  return dump({{"segments", segs}, {"excluded_endpoints", excl}});
}

namespace {

json prediction_json(const LimitPrediction& p) {
  json j{{"case", std::string(to_string(p.kind))}, {"limit", point_json(p.limit)}};
  if (p.y_distance) j["y_distance"] = *p.y_distance;
  return j;
}

json report_json(const SetCheckReport& r) {
  json w = json::array();
  for (const Witness& x : r.witnesses) {
    w.push_back({{"t", x.t}, {"x", point_json(x.x)}, {"next", point_json(x.next)}});
  }
  return {{"verdict", std::string(to_string(r.verdict))},
          {"analytic", r.analytic},
          {"passed", r.passed()},
          {"t_threshold", r.t_threshold},
          {"horizon", r.horizon},
          {"seed", r.seed},
          {"samples", r.samples},
          {"witnesses", w},
          {"detail", r.detail}};
}

}  // namespace

std::string to_json(const LimitPrediction& p) { return dump(prediction_json(p)); }

std::string to_json(const RunSummary& s) {
  return dump({{"x0", point_json(s.x0)},
               {"final", point_json(s.final)},
               {"steps", s.steps},
               {"tail",
                {{"t_begin", s.tail.t_begin},
                 {"t_end", s.tail.t_end},
                 {"min", point_json(s.tail.min)},
                 {"max", point_json(s.tail.max)},
                 {"spread", s.tail.spread}}},
               {"action_counts",
                {{"CC", s.action_counts[0]},
                 {"CD", s.action_counts[1]},
                 {"DC", s.action_counts[2]},
                 {"DD", s.action_counts[3]}}}});
}

std::string to_json(const SetCheckReport& r) { return dump(report_json(r)); }

std::string to_json(const SafetyReport& r) {
  json runs = json::array();
  for (const SafetyRun& s : r.runs) {
    runs.push_back({{"opponent", s.opponent},
                    {"x0", point_json(s.x0)},
                    {"liminf1", s.p1.liminf_hat},
                    {"limsup1", s.p1.limsup_hat},
                    {"liminf2", s.p2.liminf_hat},
                    {"limsup2", s.p2.limsup_hat},
                    {"margin", s.margin},
                    {"floor_ok", s.floor_ok},
                    {"ceiling_ok", s.ceiling_ok},
                    {"margin_ok", s.margin_ok}});
  }
  return dump({{"player1", r.player1},
               {"eps", r.eps},
               {"cap", r.cap},
               {"worst_margin", r.worst_margin},
               {"all_ok", r.all_ok()},
               {"runs", runs}});
}

std::string to_json(const MetagameMatrix& m, const std::vector<CellIndex>& nash) {
  json cells = json::array();
  for (std::size_t i = 0; i < m.n; ++i) {
    for (std::size_t j = 0; j < m.n; ++j) {
      const MetagameEntry& e = m.entries[i][j];
      cells.push_back({{"i", i},
                       {"j", j},
                       {"payoff", point_json(e.payoff)},
                       {"predicted", prediction_json(e.predicted)},
                       {"spread", e.spread},
                       {"flagged", e.flagged}});
    }
  }
  json grid = json::array();
  for (std::size_t k = 0; k < m.n; ++k) grid.push_back({{"s", m.params[k]}, {"point", point_json(m.grid[k])}});
  json eq = json::array();
  for (const auto& [i, j] : nash) eq.push_back({i, j});
  return dump({{"mode", std::string(to_string(m.mode))},
               {"n", m.n},
               {"eps1", m.eps1},
               {"eps2", m.eps2},
               {"T", m.T},
               {"x0", point_json(m.x0)},
               {"grid", grid},
               {"cells", cells},
               {"pure_nash", eq}});
}

void write_metagame_csv(std::ostream& os, const MetagameMatrix& m) {
  os << "i,j,a1,a2,b1,b2,u1,u2,case,flagged\n";
  for (std::size_t i = 0; i < m.n; ++i) {
    for (std::size_t j = 0; j < m.n; ++j) {
      const MetagameEntry& e = m.entries[i][j];
      os << i << ',' << j << ',' << format_point(m.grid[i]) << ',' << format_point(m.grid[j]) << ','
         << format_point(e.payoff) << ',' << to_string(e.predicted.kind) << ','
         << (e.flagged ? 1 : 0) << '\n';
    }
  }
}

}  // namespace memdyn
