#include "cli.hpp"

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <functional>
#include <istream>
#include <iterator>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "memdyn/acceptance.hpp"
#include "memdyn/error.hpp"
#include "memdyn/format.hpp"
#include "memdyn/io.hpp"
#include "memdyn/metagame.hpp"
#include "memdyn/strategy_spec.hpp"
#include "memdyn/verification.hpp"
#include "svg.hpp"

namespace memdyn::cli {
namespace {

using nlohmann::json;
namespace fs = std::filesystem;

// Bad flag values found after CLI11 has accepted the command line.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Context {
  std::istream& in;
  std::ostream& out;
  std::ostream& err;
  std::string out_dir;
};

json point_json(Point2 p) { return json::array({p.x1, p.x2}); }

Point2 json_point(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw Error(ErrorKind::Parse, "expected a [x1, x2] pair, got " + j.dump());
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

std::string pretty(const json& j) { return j.dump(2) + "\n"; }

// Writes through `body` to `path`; "-" is standard output and relative paths
// are placed under the output directory when one is set.
void emit(const Context& ctx, const std::string& path, const std::function<void(std::ostream&)>& body) {
  if (path == "-") {
    body(ctx.out);
    return;
  }
  fs::path p(path);
  if (p.is_relative() && !ctx.out_dir.empty()) p = fs::path(ctx.out_dir) / p;
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  std::ofstream f(p, std::ios::binary);
  if (!f) throw Error(ErrorKind::InvalidParameter, "cannot write " + p.string());
  body(f);
  if (!f) throw Error(ErrorKind::InvalidParameter, "write failed for " + p.string());
}

void emit_text(const Context& ctx, const std::string& path, const std::string& text) {
  emit(ctx, path, [&](std::ostream& os) { os << text; });
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorKind::InvalidParameter, "cannot read " + path);
  return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

// Library errors in flag values are reported against the flag.
template <typename F>
auto flag_value(const std::string& flag, F&& parse) {
  try {
    return parse();
  } catch (const Error& e) {
    throw UsageError(flag + ": " + e.what());
  }
}

MemoryStrategy strategy_flag(const std::string& flag, const std::string& spec, Player player) {
  return flag_value(flag, [&] { return parse_strategy_spec(spec, player); });
}

Point2 point_flag(const std::string& flag, const std::string& text) {
  return flag_value(flag, [&] { return parse_point(text); });
}

bool is_semicoop(const MemoryStrategy& s) {
  return std::holds_alternative<MemoryStrategy::SemiCooperative>(s.kind());
}
bool is_good(const MemoryStrategy& s) { return std::holds_alternative<MemoryStrategy::Good>(s.kind()); }

json warnings_json(const MemoryStrategy& s1, const MemoryStrategy& s2) {
  json w = json::array();
  for (const auto& m : s1.warnings()) w.push_back("p1: " + m);
  for (const auto& m : s2.warnings()) w.push_back("p2: " + m);
  return w;
}

// ---- simulate ---------------------------------------------------------------

struct SimulateOptions {
  std::string game = "pd";
  std::string p1;
  std::string p2;
  std::string x0 = "1.5,1.5";
  std::int64_t t0 = 1;
  std::int64_t T = 1'000'000;
  double tail = kDefaultTailFraction;
  double tol = kDefaultSpreadTol;
  std::string csv;
  std::string summary = "-";
};

int cmd_simulate(const Context& ctx, const SimulateOptions& o) {
  const Game game = flag_value("--game", [&] { return load_game(o.game); });
  const MemoryStrategy s1 = strategy_flag("--p1", o.p1, Player::One);
  const MemoryStrategy s2 = strategy_flag("--p2", o.p2, Player::Two);
  const Point2 x0 = point_flag("--x0", o.x0);
  if (o.t0 < 1) throw UsageError("--t0 must be at least 1");
  if (o.T <= o.t0) throw UsageError("--steps must exceed --t0");
  if (!(o.tail > 0.0 && o.tail <= 1.0)) throw UsageError("--tail must lie in (0, 1]");
  const Profile profile(s1, s2, game);

  if (!o.csv.empty()) {
    const Trajectory traj = simulate(profile, x0, o.t0, o.T);
    emit(ctx, o.csv, [&](std::ostream& os) { write_trajectory_csv(os, traj); });
  }
  // The summary always comes from the streaming run, so it does not depend on --csv.
  const RunSummary rs = run(profile, x0, o.t0, o.T, o.tail);

  json j;
  j["game"] = o.game;
  j["p1"] = s1.describe();
  j["p2"] = s2.describe();
  j["t0"] = o.t0;
  j["T"] = o.T;
  j["run"] = json::parse(to_json(rs));
  j["estimate"] = {{"limit", point_json(rs.final)},
                   {"spread", rs.tail.spread},
                   {"converged", rs.tail.spread <= o.tol},
                   {"tol", o.tol}};
  json warnings = warnings_json(s1, s2);
  if (is_semicoop(s1) && is_semicoop(s2)) {
    try {
      const LimitPrediction p = predicted_limit(*s1.anchor(), *s2.anchor(), *s1.eps(), *s2.eps());
      j["predicted"] = json::parse(to_json(p));
      j["distance_to_predicted"] = distance(p.limit, rs.final);
    } catch (const Error& e) {
      j["predicted"] = nullptr;
      warnings.push_back(std::string("no prediction: ") + e.what());
    }
  }
  j["warnings"] = warnings;
  emit_text(ctx, o.summary, pretty(j));
  return kExitOk;
}

// ---- betacore / predict -----------------------------------------------------

struct BetacoreOptions {
  std::string game = "pd";
  std::string out = "-";
};

int cmd_betacore(const Context& ctx, const BetacoreOptions& o) {
  const Game game = flag_value("--game", [&] { return load_game(o.game); });
  emit_text(ctx, o.out, to_json(beta_core_image(game)) + "\n");
  return kExitOk;
}

struct PredictOptions {
  std::string a;
  std::string b;
  double eps1 = 0.1;
  double eps2 = 0.1;
  std::string out = "-";
};

int cmd_predict(const Context& ctx, const PredictOptions& o) {
  const Point2 a = point_flag("--a", o.a);
  const Point2 b = point_flag("--b", o.b);
  emit_text(ctx, o.out, to_json(predicted_limit(a, b, o.eps1, o.eps2)) + "\n");
  return kExitOk;
}

// ---- verify -----------------------------------------------------------------

struct VerifyOptions {
  std::int64_t T = 1'000'000;
  std::uint64_t seed = AcceptanceOptions{}.seed;
  std::vector<int> only;
  std::string report;
};

int cmd_verify(const Context& ctx, const VerifyOptions& o) {
  AcceptanceOptions opts;
  opts.T = o.T;
  opts.seed = o.seed;
  opts.only = o.only;
  const auto results = run_acceptance(opts, &ctx.out);
  const auto passed = std::count_if(results.begin(), results.end(), [](const auto& r) { return r.passed; });
  ctx.out << passed << "/" << results.size() << " criteria passed\n";
  if (!o.report.empty()) {
    json rows = json::array();
    for (const CriterionResult& r : results) {
      rows.push_back({{"id", r.id}, {"name", r.name}, {"passed", r.passed}, {"detail", r.detail}});
    }
    emit_text(ctx, o.report, pretty({{"T", o.T}, {"seed", o.seed}, {"criteria", rows}}));
  }
  return passed == static_cast<std::ptrdiff_t>(results.size()) ? kExitOk : kExitVerification;
}

// ---- metagame ---------------------------------------------------------------

struct MetagameOptions {
  std::size_t n = 5;
  double eps1 = 0.1;
  double eps2 = 0.1;
  std::string mode = "predicted";
  std::int64_t T = kDefaultHorizon;
  std::string x0 = "1.5,1.5";
  std::string json_out = "-";
  std::string csv;
};

int cmd_metagame(const Context& ctx, const MetagameOptions& o) {
  const MetagameMode mode = o.mode == "simulated" ? MetagameMode::Simulated : MetagameMode::Predicted;
  const MetagameMatrix m = build_matrix(o.n, o.eps1, o.eps2, mode, o.T, point_flag("--x0", o.x0));
  emit_text(ctx, o.json_out, to_json(m, pure_nash(m)) + "\n");
  if (!o.csv.empty()) emit(ctx, o.csv, [&](std::ostream& os) { write_metagame_csv(os, m); });
  return kExitOk;
}

// ---- play -------------------------------------------------------------------

struct PlayOptions {
  std::string machine = "good:eps=0.1";
  std::string x0 = "1.5,1.5";
  std::int64_t t0 = 1;
  std::int64_t max_rounds = kMaxPlayRounds;
  double tol = kDefaultSpreadTol;
  std::string transcript;
  std::string replay;
};

constexpr std::size_t kMinReportRounds = 100;

struct Round {
  std::int64_t t;
  Point2 x;
  Action a1;
  Action a2;
  Point2 payoff;
};

Point2 pd_payoff(Action a1, Action a2) {
  static const Game pd = make_pd();
  return pd.payoff(static_cast<std::size_t>(a1), static_cast<std::size_t>(a2));
}

// Cesaro bounds of the session averages against the machine's guarantees:
// liminf of its own average at least 1, limsup of the human's at most the cap
// (2 for good strategies, v2 for semi-cooperative ones), and for good
// strategies a limsup gap of at most eps.
json session_report(const MemoryStrategy& machine, const std::vector<Point2>& averages, double tol) {
  json r;
  r["rounds"] = averages.size();
  r["tol"] = tol;
  if (averages.size() < kMinReportRounds) {
    r["status"] = "insufficient_rounds";
    r["min_rounds"] = kMinReportRounds;
    return r;
  }
  std::vector<double> x1;
  std::vector<double> x2;
  for (const Point2& p : averages) {
    x1.push_back(p.x1);
    x2.push_back(p.x2);
  }
  const CesaroBounds b1 = cesaro_bounds(x1);
  const CesaroBounds b2 = cesaro_bounds(x2);
  const double cap = is_good(machine) ? 2.0 : machine.anchor()->x2;
  r["liminf_x1"] = b1.liminf_hat;
  r["limsup_x1"] = b1.limsup_hat;
  r["liminf_x2"] = b2.liminf_hat;
  r["limsup_x2"] = b2.limsup_hat;
  r["cap"] = cap;
  const bool floor_ok = b1.liminf_hat >= 1.0 - tol;
  const bool ceiling_ok = b2.limsup_hat <= cap + tol;
  r["floor_ok"] = floor_ok;
  r["ceiling_ok"] = ceiling_ok;
  bool ok = floor_ok && ceiling_ok;
  if (is_good(machine)) {
    const double margin = b2.limsup_hat - b1.limsup_hat;
    r["margin"] = margin;
    r["margin_ok"] = margin <= *machine.eps() + tol;
    ok = ok && margin <= *machine.eps() + tol;
  }
  r["status"] = ok ? "ok" : "violated";
  return r;
}

json transcript_json(const MemoryStrategy& machine, Point2 x0, std::int64_t t0, const std::vector<Round>& rounds,
                     const json& report) {
  json rows = json::array();
  for (const Round& r : rounds) {
    rows.push_back({{"t", r.t},
                    {"x", point_json(r.x)},
                    {"a1", std::string(1, to_char(r.a1))},
                    {"a2", std::string(1, to_char(r.a2))},
                    {"payoff", point_json(r.payoff)}});
  }
  json j;
  j["machine"] = machine.describe();
  j["human_player"] = 2;
  j["x0"] = point_json(x0);
  j["t0"] = t0;
  j["rounds"] = rows;
  if (rounds.empty()) {
    j["final"] = nullptr;
  } else {
    const Round& last = rounds.back();
    j["final"] = point_json(beta_step(last.t, last.x, last.payoff));
  }
  j["report"] = report;
  return j;
}

void print_report(std::ostream& os, const json& report) {
  os << "session: " << report["rounds"].get<std::size_t>() << " rounds";
  if (report["status"] == "insufficient_rounds") {
    os << ", too few for Cesaro bounds (need " << kMinReportRounds << ")\n";
    return;
  }
  os << "\n  liminf x1 = " << format_number(report["liminf_x1"].get<double>())
     << (report["floor_ok"].get<bool>() ? "  >= 1 ok" : "  < 1 VIOLATED") << "\n";
  os << "  limsup x2 = " << format_number(report["limsup_x2"].get<double>())
     << (report["ceiling_ok"].get<bool>() ? "  <= cap ok" : "  > cap VIOLATED") << " (cap "
     << format_number(report["cap"].get<double>()) << ")\n";
  if (report.contains("margin")) {
    os << "  limsup gap = " << format_number(report["margin"].get<double>())
       << (report["margin_ok"].get<bool>() ? "  <= eps ok" : "  > eps VIOLATED") << "\n";
  }
}

std::string trimmed_lower(const std::string& s) {
  std::string t;
  for (char ch : s) {
    if (!std::isspace(static_cast<unsigned char>(ch))) t += static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  }
  return t;
}

MemoryStrategy machine_flag(const std::string& spec) {
  MemoryStrategy m = strategy_flag("--machine", spec, Player::One);
  if (!is_good(m) && !is_semicoop(m)) throw UsageError("--machine must be a good or semicoop strategy");
  return m;
}

int cmd_replay(const Context& ctx, const PlayOptions& o) {
  const json j = flag_value("--replay", [&] {
    try {
      return json::parse(read_file(o.replay));
    } catch (const json::exception& e) {
      throw Error(ErrorKind::Parse, e.what());
    }
  });
  json mismatches = json::array();
  std::vector<Point2> averages;
  try {
    const MemoryStrategy machine = machine_flag(j.at("machine").get<std::string>());
    const Point2 x0 = json_point(j.at("x0"));
    std::int64_t t = j.at("t0").get<std::int64_t>();
    Point2 x = x0;
    for (const json& r : j.at("rounds")) {
      const auto note = [&](const std::string& what) {
        if (mismatches.size() < kMaxWitnesses) mismatches.push_back({{"t", t}, {"what", what}});
      };
      if (r.at("t").get<std::int64_t>() != t) note("round index");
      if (json_point(r.at("x")) != x) note("average");
      const std::string a1 = r.at("a1").get<std::string>();
      const std::string a2 = r.at("a2").get<std::string>();
      if ((a1 != "C" && a1 != "D") || (a2 != "C" && a2 != "D")) throw Error(ErrorKind::Parse, "bad action");
      const Action act1 = a1 == "C" ? Action::C : Action::D;
      const Action act2 = a2 == "C" ? Action::C : Action::D;
      if (machine(x) != act1) note("machine action");
      const Point2 pay = pd_payoff(act1, act2);
      if (json_point(r.at("payoff")) != pay) note("payoff");
      x = beta_step(t, x, pay);
      averages.push_back(x);
      ++t;
    }
    if (!averages.empty() && json_point(j.at("final")) != x) {
      mismatches.push_back({{"t", t}, {"what", "final average"}});
    }
    const json report = session_report(machine, averages, o.tol);
    const bool consistent = mismatches.empty();
    emit_text(ctx, "-", pretty({{"transcript", o.replay},
                                {"rounds", averages.size()},
                                {"consistent", consistent},
                                {"mismatches", mismatches},
                                {"report", report}}));
    return consistent && report["status"] != "violated" ? kExitOk : kExitVerification;
  } catch (const json::exception& e) {
    throw UsageError("--replay: malformed transcript: " + std::string(e.what()));
  }
}

int cmd_play(const Context& ctx, const PlayOptions& o) {
  if (!o.replay.empty()) return cmd_replay(ctx, o);
  const MemoryStrategy machine = machine_flag(o.machine);
  const Point2 x0 = point_flag("--x0", o.x0);
  if (!pd_polytope().contains(x0)) throw UsageError("--x0 must lie in the payoff polytope");
  if (o.t0 < 1) throw UsageError("--t0 must be at least 1");
  if (o.max_rounds < 0 || o.max_rounds > kMaxPlayRounds) {
    throw UsageError("--max-rounds must lie in [0, " + std::to_string(kMaxPlayRounds) + "]");
  }

  std::ostream& out = ctx.out;
  out << "machine (player 1): " << machine.describe() << "\nyou are player 2; enter c, d or q\n";
  std::vector<Round> rounds;
  std::vector<Point2> averages;
  Point2 x = x0;
  std::int64_t t = o.t0;
  std::string line;
  while (static_cast<std::int64_t>(rounds.size()) < o.max_rounds) {
    out << "round " << t << "  averages (" << format_number(x.x1) << ", " << format_number(x.x2)
        << ")  [c/d/q]> " << std::flush;
    if (!std::getline(ctx.in, line)) {
      out << "\n";
      break;
    }
    const std::string key = trimmed_lower(line);
    if (key == "q") break;
    if (key != "c" && key != "d") {
      out << "invalid input '" << line << "'; enter c, d or q\n";
      continue;
    }
    const Action a2 = key == "c" ? Action::C : Action::D;
    const Action a1 = machine(x);
    const Point2 pay = pd_payoff(a1, a2);
    rounds.push_back({t, x, a1, a2, pay});
    x = beta_step(t, x, pay);
    averages.push_back(x);
    ++t;
    out << "  machine " << to_char(a1) << ", you " << to_char(a2) << ", payoffs (" << format_number(pay.x1)
        << ", " << format_number(pay.x2) << ")\n";
  }
  if (static_cast<std::int64_t>(rounds.size()) == o.max_rounds && o.max_rounds > 0) {
    out << "round cap reached\n";
  }
  const json report = session_report(machine, averages, o.tol);
  print_report(out, report);
  if (!o.transcript.empty()) emit_text(ctx, o.transcript, pretty(transcript_json(machine, x0, o.t0, rounds, report)));
  return kExitOk;
}

// ---- plot -------------------------------------------------------------------

struct PlotOptions {
  std::string csv;
  std::string p1;
  std::string p2;
  std::string out = "-";
  int size = 640;
};

int cmd_plot(const Context& ctx, const PlotOptions& o) {
  std::istringstream is(read_file(o.csv));
  const Trajectory traj = read_trajectory_csv(is);
  PlotOverlay overlay;
  std::optional<MemoryStrategy> s1;
  std::optional<MemoryStrategy> s2;
  if (!o.p1.empty()) s1 = strategy_flag("--p1", o.p1, Player::One);
  if (!o.p2.empty()) s2 = strategy_flag("--p2", o.p2, Player::Two);
  if (s1) {
    if (auto poly = cooperation_polygon(*s1, pd_polytope())) overlay.regions.push_back({"region-p1", "#1f77b4", *poly});
  }
  if (s2) {
    if (auto poly = cooperation_polygon(*s2, pd_polytope())) overlay.regions.push_back({"region-p2", "#d62728", *poly});
  }
  if (s1 && s2 && is_good(*s1) && is_good(*s2)) {
    overlay.limit = kMutualCooperation;
    overlay.limit_label = "(2,2)";
  } else if (s1 && s2 && is_semicoop(*s1) && is_semicoop(*s2)) {
    try {
      const LimitPrediction p = predicted_limit(*s1->anchor(), *s2->anchor(), *s1->eps(), *s2->eps());
      overlay.limit = p.limit;
      overlay.limit_label = p.kind == LimitCase::YPoint ? "y" : std::string(to_string(p.kind));
    } catch (const Error& e) {
      ctx.err << "warning: no predicted limit: " << e.what() << "\n";
    }
  }
  emit_text(ctx, o.out, render_svg(traj, pd_polytope(), overlay, o.size));
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Memory-strategy dynamics of the repeated prisoner's dilemma", "memdyn"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string out_dir;
  app.add_option("--out-dir", out_dir, "Directory for relative output paths")->envname(kOutDirEnv);

  SimulateOptions sim;
  auto* simulate_cmd = app.add_subcommand("simulate", "Run the averaged dynamics for a strategy pair");
  simulate_cmd->add_option("--game", sim.game, "Builtin 'pd' or a game JSON file")->capture_default_str();
  simulate_cmd->add_option("--p1", sim.p1, "Strategy spec of player 1")->required();
  simulate_cmd->add_option("--p2", sim.p2, "Strategy spec of player 2")->required();
  simulate_cmd->add_option("--x0", sim.x0, "Average at round t0, as x1,x2")->capture_default_str();
  simulate_cmd->add_option("--t0", sim.t0, "First round index")->capture_default_str();
  simulate_cmd->add_option("--steps", sim.T, "Last round T")->capture_default_str();
  simulate_cmd->add_option("--tail", sim.tail, "Trailing window fraction")->capture_default_str();
  simulate_cmd->add_option("--tol", sim.tol, "Tail spread tolerance")->capture_default_str();
  simulate_cmd->add_option("--csv", sim.csv, "Trajectory CSV path ('-' for stdout)");
  simulate_cmd->add_option("--summary", sim.summary, "Summary JSON path")->capture_default_str();

  BetacoreOptions bc;
  auto* betacore_cmd = app.add_subcommand("betacore", "Print the beta-core image of a game");
  betacore_cmd->add_option("--game", bc.game, "Builtin 'pd' or a game JSON file")->capture_default_str();
  betacore_cmd->add_option("--out", bc.out, "Output path")->capture_default_str();

  PredictOptions pr;
  auto* predict_cmd = app.add_subcommand("predict", "Predicted limit of two semi-cooperative players");
  predict_cmd->add_option("--a", pr.a, "Anchor of player 1")->required();
  predict_cmd->add_option("--b", pr.b, "Anchor of player 2")->required();
  predict_cmd->add_option("--eps1", pr.eps1)->capture_default_str();
  predict_cmd->add_option("--eps2", pr.eps2)->capture_default_str();
  predict_cmd->add_option("--out", pr.out, "Output path")->capture_default_str();

  VerifyOptions ver;
  auto* verify_cmd = app.add_subcommand("verify", "Run the acceptance criteria");
  verify_cmd->add_option("--steps", ver.T, "Horizon of the simulations")->capture_default_str();
  verify_cmd->add_option("--seed", ver.seed)->capture_default_str();
  verify_cmd->add_option("--only", ver.only, "Criterion ids to run")
      ->check(CLI::Range(1, kCriterionCount));
  verify_cmd->add_option("--report", ver.report, "JSON report path");

  MetagameOptions mg;
  auto* metagame_cmd = app.add_subcommand("metagame", "Build the induced game over beta-core anchors");
  metagame_cmd->add_option("--n", mg.n, "Anchors per player")->capture_default_str();
  metagame_cmd->add_option("--eps1", mg.eps1)->capture_default_str();
  metagame_cmd->add_option("--eps2", mg.eps2)->capture_default_str();
  metagame_cmd->add_option("--mode", mg.mode)
      ->check(CLI::IsMember({"predicted", "simulated"}))
      ->capture_default_str();
  metagame_cmd->add_option("--steps", mg.T, "Horizon in simulated mode")->capture_default_str();
  metagame_cmd->add_option("--x0", mg.x0, "Start of simulated runs")->capture_default_str();
  metagame_cmd->add_option("--json", mg.json_out, "Matrix JSON path")->capture_default_str();
  metagame_cmd->add_option("--csv", mg.csv, "Matrix CSV path");

  PlayOptions pl;
  auto* play_cmd = app.add_subcommand("play", "Play against a memory strategy from the terminal");
  play_cmd->add_option("--machine", pl.machine, "Good or semicoop spec of player 1")->capture_default_str();
  play_cmd->add_option("--x0", pl.x0)->capture_default_str();
  play_cmd->add_option("--t0", pl.t0)->capture_default_str();
  play_cmd->add_option("--max-rounds", pl.max_rounds)->capture_default_str();
  play_cmd->add_option("--tol", pl.tol)->capture_default_str();
  play_cmd->add_option("--transcript", pl.transcript, "Write the session as JSON");
  play_cmd->add_option("--replay", pl.replay, "Re-check a saved transcript instead of playing");

  PlotOptions pt;
  auto* plot_cmd = app.add_subcommand("plot", "Render a trajectory CSV as SVG");
  plot_cmd->add_option("csv", pt.csv, "Trajectory CSV")->required();
  plot_cmd->add_option("--p1", pt.p1, "Strategy of player 1, for region overlays");
  plot_cmd->add_option("--p2", pt.p2, "Strategy of player 2, for region overlays");
  plot_cmd->add_option("--out", pt.out, "SVG path")->capture_default_str();
  plot_cmd->add_option("--size", pt.size, "Width and height in pixels")->capture_default_str();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitUsage;
  }

  const Context ctx{in, out, err, out_dir};
  try {
    if (*simulate_cmd) return cmd_simulate(ctx, sim);
    if (*betacore_cmd) return cmd_betacore(ctx, bc);
    if (*predict_cmd) return cmd_predict(ctx, pr);
    if (*verify_cmd) return cmd_verify(ctx, ver);
    if (*metagame_cmd) return cmd_metagame(ctx, mg);
    if (*play_cmd) return cmd_play(ctx, pl);
    if (*plot_cmd) return cmd_plot(ctx, pt);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace memdyn::cli
