// evcg: analysis CLI for the EV charging game library.
//
// Subcommands: cost, nash, herding, price-region, cev. Scenarios and
// profiles are JSON files; outputs are JSON or plot-oriented CSV.
// Exit codes: 0 success, 2 input error, 3 enumeration cap exceeded,
// 4 degenerate continuous model.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "evcg/cevgame.hpp"
#include "evcg/equilibrium.hpp"
#include "evcg/herding.hpp"
#include "evcg/io.hpp"
#include "evcg/model.hpp"
#include "evcg/pricing.hpp"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitCap = 3;
constexpr int kExitDegenerate = 4;

struct CommonOpts {
  std::string scenario_path;
  std::string profile_path;
  std::string out_path;
  std::string format = "json";
  double tie_epsilon = 1e-12;
  std::uint64_t cap = 10'000'000;
};

void write_output(const std::string& out_path, const std::string& text) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw evcg::io::ParseError("cannot write to " + out_path);
  out << text;
}

void write_json(const std::string& out_path, const json& j) {
  write_output(out_path, j.dump(2) + "\n");
}

evcg::GameInstance require_discrete(const evcg::io::Scenario& s) {
  if (!s.discrete)
    throw evcg::io::ParseError("this command needs a discrete scenario");
  return *s.discrete;
}

evcg::ContinuousGame require_continuous(const evcg::io::Scenario& s) {
  if (!s.continuous)
    throw evcg::io::ParseError("this command needs a continuous scenario");
  return *s.continuous;
}

// Hard validation failures abort with the diagnostics; warnings go to the
// error stream only.
void check_instance(const evcg::GameInstance& game) {
  const auto violations = evcg::validate(game);
  bool fatal = false;
  for (const auto& v : violations) {
    std::cerr << (v.warning ? "warning: " : "error: ") << v.field << ": "
              << v.rule << "\n";
    if (!v.warning) fatal = true;
  }
  if (fatal) throw evcg::io::ParseError("scenario failed validation");
}

void check_profile(const evcg::GameInstance& game,
                   const evcg::StrategyProfile& profile) {
  const auto violations = evcg::validate_profile(game, profile);
  for (const auto& v : violations)
    std::cerr << "error: " << v.field << ": " << v.rule << "\n";
  if (!violations.empty())
    throw evcg::io::ParseError("profile failed validation");
}

evcg::EquilibriumOptions make_options(const CommonOpts& c) {
  evcg::EquilibriumOptions opts;
  opts.tie_epsilon = c.tie_epsilon;
  opts.enumeration_cap = c.cap;
  return opts;
}

int run_cost(const CommonOpts& c) {
  const auto scenario = evcg::io::load_scenario(c.scenario_path);
  const evcg::GameInstance game = require_discrete(scenario);
  check_instance(game);
  const evcg::StrategyProfile profile =
      evcg::io::load_profile(c.profile_path);
  check_profile(game, profile);
  if (c.format == "csv")
    write_output(c.out_path, evcg::io::cost_table_csv(game, profile));
  else
    write_json(c.out_path, evcg::io::cost_table_json(game, profile));
  return kExitOk;
}

int run_nash(const CommonOpts& c, const std::string& mode, int player) {
  const auto scenario = evcg::io::load_scenario(c.scenario_path);
  const evcg::GameInstance game = require_discrete(scenario);
  check_instance(game);
  const auto opts = make_options(c);

  if (mode == "enumerate") {
    const evcg::EquilibriumSet set = evcg::enumerate_nash(game, opts);
    write_json(c.out_path, evcg::io::equilibrium_set_to_json(set));
    return kExitOk;
  }

  const evcg::StrategyProfile profile =
      evcg::io::load_profile(c.profile_path);
  check_profile(game, profile);
  if (mode == "check") {
    evcg::DeviationReport witness;
    const bool nash = evcg::is_nash(game, profile, &witness, opts);
    json out{{"is_nash", nash}};
    out["witness"] =
        nash ? json(nullptr) : evcg::io::deviation_report_to_json(witness);
    write_json(c.out_path, out);
    return kExitOk;
  }
  if (mode == "best-response") {
    if (player < 0 || player >= game.n())
      throw evcg::io::ParseError("--player out of range");
    write_json(c.out_path, evcg::io::deviation_report_to_json(
                               evcg::best_response(game, profile, player,
                                                   opts)));
    return kExitOk;
  }
  throw evcg::io::ParseError("unknown nash mode: " + mode);
}

evcg::ThresholdResult scenario_threshold(const evcg::GameInstance& game) {
  const evcg::Player& p = game.players.front();
  const evcg::DissatisfactionFn& f = p.f_offpeak;
  switch (f.kind) {
    case evcg::DissatKind::Linear:
      return evcg::linear_threshold(f.alpha, f.beta, p.price_peak,
                                    p.price_offpeak);
    case evcg::DissatKind::Logistic:
      return evcg::logistic_threshold(f.alpha, f.beta, p.price_peak,
                                      p.price_offpeak);
    case evcg::DissatKind::None: {
      evcg::ThresholdResult r;
      r.kind = evcg::ThresholdKind::AlwaysStable;
      r.rhs_at_0 = p.price_peak;
      r.rhs_at_1 = p.price_peak - p.price_offpeak;
      return r;
    }
    case evcg::DissatKind::Custom:
      break;
  }
  throw evcg::io::ParseError("threshold needs a linear or logistic curve");
}

int run_herding(const CommonOpts& c, const std::string& mode, int n_from,
                int n_to, const std::string& curve_path) {
  const auto scenario = evcg::io::load_scenario(c.scenario_path);
  const evcg::GameInstance game = require_discrete(scenario);
  check_instance(game);
  const evcg::Player& p = game.players.front();

  if (!curve_path.empty())
    write_output(curve_path,
                 evcg::io::threshold_curve_csv(p.f_offpeak, p.price_peak,
                                               p.price_offpeak));

  if (mode == "threshold") {
    write_json(c.out_path, evcg::io::threshold_to_json(
                               scenario_threshold(game)));
    return kExitOk;
  }
  if (mode == "sweep") {
    for (const evcg::Player& other : game.players)
      if (other.demand != p.demand || other.price_peak != p.price_peak ||
          other.price_offpeak != p.price_offpeak)
        throw evcg::io::ParseError(
            "sweep needs a homogeneous scenario (identical players)");
    for (double cap : game.capacities)
      if (cap != game.capacities.front())
        throw evcg::io::ParseError(
            "sweep needs a homogeneous scenario (uniform capacity)");
    evcg::HerdingTemplate tpl;
    tpl.periods = game.periods;
    tpl.offpeak_periods = game.offpeak_periods;
    tpl.capacity = game.capacities.front();
    tpl.player = p;
    const auto rows =
        evcg::herding_sweep(tpl, n_from, n_to, make_options(c));
    write_output(c.out_path, evcg::io::sweep_csv(rows));
    return kExitOk;
  }
  throw evcg::io::ParseError("unknown herding mode: " + mode);
}

int run_price_region(const CommonOpts& c, const std::string& grid_path,
                     int grid_player, int grid_res, double grid_min,
                     double grid_max) {
  const auto scenario = evcg::io::load_scenario(c.scenario_path);
  const evcg::GameInstance game = require_discrete(scenario);
  check_instance(game);
  std::cerr << "note: prices in the scenario file are ignored by "
               "price-region\n";
  const evcg::StrategyProfile profile =
      evcg::io::load_profile(c.profile_path);
  check_profile(game, profile);
  const auto opts = make_options(c);

  const evcg::InducedPrices result =
      evcg::induce_prices(game, profile, opts);
  write_json(c.out_path, evcg::io::induced_prices_to_json(result));

  if (!grid_path.empty()) {
    if (grid_player < 0 || grid_player >= game.n())
      throw evcg::io::ParseError("--player out of range");
    const evcg::PriceRegion& region = result.regions[grid_player];
    std::ostringstream csv;
    csv << "bD,bN,feasible\n";
    for (int i = 0; i <= grid_res; ++i) {
      const double bD =
          grid_min + (grid_max - grid_min) * i / grid_res;
      for (int j = 0; j <= grid_res; ++j) {
        const double bN =
            grid_min + (grid_max - grid_min) * j / grid_res;
        csv << evcg::io::format_double(bD) << ','
            << evcg::io::format_double(bN) << ','
            << (region.contains(bD, bN) ? 1 : 0) << '\n';
      }
    }
    write_output(grid_path, csv.str());
  }
  return kExitOk;
}

int run_cev(const CommonOpts& c, const std::string& mode, int grid_res) {
  const auto scenario = evcg::io::load_scenario(c.scenario_path);
  const evcg::ContinuousGame game = require_continuous(scenario);
  if (!game.convex())
    std::cerr << "warning: costs are not convex (needs aD > bD and "
                 "aN > bN)\n";

  if (mode == "nash") {
    json out = evcg::io::continuous_summary_json(game);
    out["q_star"] = evcg::nash_quantity(game);
    write_json(c.out_path, out);
    return kExitOk;
  }
  if (mode == "gap") {
    std::ostringstream csv;
    csv << "g1,gap\n";
    for (int i = 0; i <= grid_res; ++i) {
      const double g1 = game.M * i / grid_res;
      csv << evcg::io::format_double(g1) << ','
          << evcg::io::format_double(evcg::cce_gap(game, g1)) << '\n';
    }
    write_output(c.out_path, csv.str());
    return kExitOk;
  }
  if (mode == "scan") {
    write_json(c.out_path, evcg::io::cce_scan_to_json(
                               evcg::cce_scan(game, grid_res)));
    return kExitOk;
  }
  throw evcg::io::ParseError("unknown cev mode: " + mode);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"EV charging game analysis"};
  app.require_subcommand(1);

  CommonOpts common;
  std::string mode;
  int player = 0;
  int n_from = 1, n_to = 10;
  int grid_res = 200;
  double grid_min = -1.0, grid_max = 2.0;
  std::string curve_path, grid_path;

  auto add_common = [&common](CLI::App* cmd, bool with_profile) {
    cmd->add_option("--scenario", common.scenario_path, "scenario JSON file")
        ->required();
    if (with_profile)
      cmd->add_option("--profile", common.profile_path, "profile JSON file");
    cmd->add_option("--out", common.out_path, "output file (default stdout)");
    cmd->add_option("--tol", common.tie_epsilon, "tie-breaking epsilon");
    cmd->add_option("--cap", common.cap, "joint enumeration cap");
  };

  CLI::App* cost = app.add_subcommand("cost", "per-player cost breakdown");
  add_common(cost, true);
  cost->add_option("--format", common.format, "json or csv");

  CLI::App* nash = app.add_subcommand("nash", "equilibrium analysis");
  add_common(nash, true);
  nash->add_option("mode", mode, "check | enumerate | best-response")
      ->required();
  nash->add_option("--player", player, "player for best-response");

  CLI::App* herding = app.add_subcommand("herding", "herding analysis");
  add_common(herding, false);
  herding->add_option("mode", mode, "threshold | sweep")->required();
  herding->add_option("--n-from", n_from, "sweep start");
  herding->add_option("--n-to", n_to, "sweep end");
  herding->add_option("--curve", curve_path, "write f(x) vs bD-bN*x CSV");

  CLI::App* price =
      app.add_subcommand("price-region", "prices inducing a target profile");
  add_common(price, true);
  price->add_option("--grid", grid_path, "write bD,bN,feasible CSV");
  price->add_option("--player", player, "player for the grid sample");
  price->add_option("--grid-res", grid_res, "grid resolution");
  price->add_option("--grid-min", grid_min, "grid lower bound");
  price->add_option("--grid-max", grid_max, "grid upper bound");

  CLI::App* cev = app.add_subcommand("cev", "continuous symmetric game");
  add_common(cev, false);
  cev->add_option("mode", mode, "nash | gap | scan")->required();
  cev->add_option("--grid-res", grid_res, "gap curve / scan resolution");

  CLI11_PARSE(app, argc, argv);

  try {
    if (cost->parsed()) return run_cost(common);
    if (nash->parsed()) return run_nash(common, mode, player);
    if (herding->parsed())
      return run_herding(common, mode, n_from, n_to, curve_path);
    if (price->parsed())
      return run_price_region(common, grid_path, player, grid_res, grid_min,
                              grid_max);
    if (cev->parsed()) return run_cev(common, mode, grid_res);
  } catch (const evcg::CapExceededError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitCap;
  } catch (const evcg::DegenerateError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDegenerate;
  } catch (const evcg::io::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return kExitOk;
}
