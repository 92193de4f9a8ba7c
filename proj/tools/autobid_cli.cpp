// autobid: command-line front end for the equilibrium solver and audits.
//
// Exit codes: 0 = ran and the checked property holds, 1 = property violated,
// 2 = usage or input error.

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "autobid/autobid.hpp"

namespace {

using namespace autobid;
using nlohmann::json;

constexpr int kExitPass = 0;
constexpr int kExitViolation = 1;
constexpr int kExitUsage = 2;

struct RunConfig {
  std::vector<std::string> instance_paths;
  std::string targets;
  std::string true_target;
  std::string grid;
  std::size_t grid_points = 10;
  int tie_break = 1;
  std::size_t cap = kDefaultEnumerationCap;
  std::uint64_t seed = 0;
  std::string out;
  std::string format = "json";

  // gen
  std::size_t bidders = 2;
  std::size_t queries = 4;
  std::int64_t max_value = 20;

  // check / construct / feasible-region
  std::string bids_path;
  std::optional<std::size_t> k;
  std::string multipliers;
  std::string new_target;
  std::string direction = "lower";

  // oracle-verify batch
  std::size_t random_instances = 0;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::vector<Rational> parse_list(const std::string& text) {
  std::vector<Rational> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    if (!item.empty()) out.push_back(parse_rational(item));
  }
  return out;
}

TieBreak tie_of(const RunConfig& cfg) { return cfg.tie_break == 2 ? TieBreak::Bidder2Wins : TieBreak::Bidder1Wins; }

Targets load_targets(const RunConfig& cfg) {
  if (cfg.targets.empty()) throw UsageError("--targets is required");
  if (std::filesystem::is_regular_file(cfg.targets)) return io::targets_from_json(io::read_json_file(cfg.targets));
  return Targets(parse_list(cfg.targets));
}

ValueMatrix load_values(const std::string& path) { return io::values_from_json(io::read_json_file(path)); }

const std::string& single_instance(const RunConfig& cfg) {
  if (cfg.instance_paths.size() != 1) throw UsageError("exactly one --instance is required");
  return cfg.instance_paths.front();
}

// Two-bidder instance in normalized order, or exit 2 for anything else.
NormalizedInstance load_pair(const RunConfig& cfg) {
  NormalizedInstance ni = normalize_instance(load_values(single_instance(cfg)));
  if (ni.instance.bidders() != 2)
    throw UnsupportedError("uniform-bidding commands need exactly two bidders (got " +
                           std::to_string(ni.instance.bidders()) +
                           "); use 'check --bids' or 'construct' for non-uniform bid profiles");
  return ni;
}

json origin_json(const NormalizedInstance& ni) {
  json out = json::array();
  for (const auto& group : ni.origin) {
    json g = json::array();
    for (auto j : group) g.push_back(j + 1);
    out.push_back(g);
  }
  return out;
}

void emit(const RunConfig& cfg, const std::string& text) {
  if (cfg.out.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream f(cfg.out, std::ios::binary);
  if (!f) throw InputError("cannot write " + cfg.out);
  f << text;
  if (!text.empty() && text.back() != '\n') f << '\n';
}

int cmd_gen(const RunConfig& cfg) {
  if (cfg.bidders < 2) throw UsageError("--bidders must be at least 2");
  if (cfg.queries < 1) throw UsageError("--queries must be at least 1");
  if (cfg.max_value < 1) throw UsageError("--max-value must be at least 1");
  const Instance instance(generate_values(cfg.seed, cfg.bidders, cfg.queries, cfg.max_value));
  emit(cfg, io::to_json(instance).dump(2));
  return kExitPass;
}

int cmd_equilibria(const RunConfig& cfg) {
  const auto ni = load_pair(cfg);
  const Targets targets = load_targets(cfg);
  const auto ks = enumerate_equilibria(ni.instance, targets);
  json witnesses = json::array();
  for (auto k : ks) {
    json w = io::to_json(witness_multipliers(ni.instance, targets, k, tie_of(cfg)));
    w["k"] = k;
    witnesses.push_back(w);
  }
  json out{{"instance", io::to_json(ni.instance)},
           {"origin", origin_json(ni)},
           {"targets", io::to_json(targets)["targets"]},
           {"tie_break", cfg.tie_break},
           {"ks", io::to_json(ks)},
           {"witnesses", witnesses}};
  emit(cfg, out.dump(2));
  return kExitPass;
}

int cmd_check(const RunConfig& cfg) {
  const Targets targets = load_targets(cfg);
  if (!cfg.bids_path.empty()) {
    const Instance instance(load_values(single_instance(cfg)));
    const BidProfile bids = io::bids_from_json(io::read_json_file(cfg.bids_path));
    const auto verdict = verify_equilibrium(instance, targets, bids, tie_of(cfg), cfg.cap);
    emit(cfg, io::to_json(verdict).dump(2));
    return verdict.equilibrium ? kExitPass : kExitViolation;
  }
  if (!cfg.k || cfg.multipliers.empty()) throw UsageError("check needs --bids, or --k together with --multipliers");
  const auto mus = parse_list(cfg.multipliers);
  if (mus.size() != 2) throw UsageError("--multipliers takes \"mu1,mu2\"");
  const auto ni = load_pair(cfg);
  const auto ledger = check_condition_nk(ni.instance, targets, {mus[0], mus[1]}, *cfg.k, tie_of(cfg));
  json out = io::to_json(ledger);
  out["allocation_k"] = allocation_from_multipliers(ni.instance, targets, {mus[0], mus[1]}, tie_of(cfg));
  emit(cfg, out.dump(2));
  return ledger.all_hold() ? kExitPass : kExitViolation;
}

int cmd_feasible_region(const RunConfig& cfg) {
  const auto ni = load_pair(cfg);
  const Targets targets = load_targets(cfg);
  json rows = json::array();
  const std::size_t first = cfg.k.value_or(0);
  const std::size_t last = cfg.k.value_or(ni.instance.queries());
  for (std::size_t k = first; k <= last; ++k) {
    const auto cert = equilibrium_exists(ni.instance, targets, k);
    const auto raw = raw_condition_feasible(ni.instance, targets, k, tie_of(cfg));
    json row{{"certificate", io::to_json(cert)}, {"mu1_range", io::to_json(raw.mu1_range)}, {"raw_feasible", raw.feasible}};
    if (raw.witness) row["raw_witness"] = io::to_json(*raw.witness);
    if (cert.exists) row["witness"] = io::to_json(witness_multipliers(ni.instance, targets, k, tie_of(cfg)));
    rows.push_back(row);
  }
  emit(cfg, json{{"origin", origin_json(ni)}, {"rows", rows}}.dump(2));
  return kExitPass;
}

int cmd_audit(const RunConfig& cfg, IcProperty property) {
  const auto ni = load_pair(cfg);
  const auto other = parse_list(cfg.targets);
  if (other.empty()) throw UsageError("--targets must give T2 (\"T2\" or \"T1,T2\")");
  const Rational t2 = other.back();
  Rational true_t1;
  if (!cfg.true_target.empty())
    true_t1 = parse_rational(cfg.true_target);
  else if (other.size() == 2)
    true_t1 = other.front();
  else
    throw UsageError("--true-target is required");

  std::vector<Rational> grid = cfg.grid.empty() ? uniform_grid(true_t1, cfg.grid_points) : parse_list(cfg.grid);
  const auto report = ic_audit(ni.instance, true_t1, t2, grid);
  if (cfg.format == "csv")
    emit(cfg, io::to_csv(report));
  else
    emit(cfg, io::to_json(report).dump(2));

  const Verdict v = report.verdict(property);
  if (v == Verdict::Inconclusive)
    std::cerr << "note: " << report.empty_reports.size() << " report(s) have no equilibrium; verdict inconclusive\n";
  return v == Verdict::Fail ? kExitViolation : kExitPass;
}

int cmd_oracle_verify(const RunConfig& cfg) {
  std::vector<std::pair<NormalizedInstance, Targets>> jobs;
  if (cfg.random_instances > 0) {
    SeededRng rng(cfg.seed);
    for (std::size_t r = 0; r < cfg.random_instances; ++r) {
      const auto n = static_cast<std::size_t>(rng.uniform(1, 8));
      auto values = generate_values(rng.engine()(), 2, n, cfg.max_value);
      Targets t(rng.rational_in(Rational(1, 4), Rational(4)), rng.rational_in(Rational(1, 4), Rational(4)));
      jobs.emplace_back(normalize_instance(values), std::move(t));
    }
  } else {
    if (cfg.instance_paths.empty()) throw UsageError("oracle-verify needs --instance or --random N");
    const Targets targets = load_targets(cfg);
    for (const auto& path : cfg.instance_paths) {
      auto ni = normalize_instance(load_values(path));
      if (ni.instance.bidders() != 2) throw UnsupportedError(path + ": oracle verification needs two bidders");
      jobs.emplace_back(std::move(ni), targets);
    }
  }

  bool all_agree = true;
  std::string text;
  for (const auto& [ni, targets] : jobs) {
    const auto report = crosscheck_uniform(ni.instance, targets);
    all_agree = all_agree && report.agree;
    json out = io::to_json(report);
    if (jobs.size() > 1) {
      out["instance"] = io::to_json(ni.instance);
      out["targets"] = io::to_json(targets)["targets"];
      text += out.dump() + "\n";
    } else {
      text += out.dump(2);
    }
  }
  emit(cfg, text);
  return all_agree ? kExitPass : kExitViolation;
}

int cmd_construct(const RunConfig& cfg) {
  const Instance instance(load_values(single_instance(cfg)));
  const Targets targets = load_targets(cfg);
  if (cfg.bids_path.empty()) throw UsageError("construct needs --bids");
  if (cfg.new_target.empty()) throw UsageError("construct needs --new-target");
  const BidProfile bids = io::bids_from_json(io::read_json_file(cfg.bids_path));
  const Rational new_target = parse_rational(cfg.new_target);
  const TieBreak tie = tie_of(cfg);

  const auto before = spa_outcome(instance, bids, tie).allocation.won_by(0);
  Construction built;
  bool lower = cfg.direction == "lower";
  if (lower)
    built = construct_lower_report(instance, targets, bids, new_target, tie, cfg.cap);
  else if (cfg.direction == "higher")
    built = construct_higher_report(instance, targets, bids, new_target, tie, cfg.cap);
  else
    throw UsageError("--direction must be 'lower' or 'higher'");

  const Targets new_targets = targets.with(0, new_target);
  const auto verdict = verify_equilibrium(instance, new_targets, built.profile, tie, cfg.cap);
  const auto after = built.outcome.allocation.won_by(0);
  const bool nested = lower ? std::includes(before.begin(), before.end(), after.begin(), after.end())
                            : std::includes(after.begin(), after.end(), before.begin(), before.end());

  json out = io::to_json(built.profile);
  out["outcome"] = io::to_json(built.outcome);
  out["verdict"] = io::to_json(verdict);
  out["bidder1_sets_nested"] = nested;
  emit(cfg, out.dump(2));
  return verdict.equilibrium && nested ? kExitPass : kExitViolation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact equilibrium solver and incentive-compatibility audits for tCPA auto-bidders in second-price auctions"};
  app.require_subcommand(1, 1);
  RunConfig cfg;
  if (const char* env = std::getenv("AUTOBID_EQ_CAP")) {
    try {
      cfg.cap = static_cast<std::size_t>(std::stoul(env));
    } catch (const std::exception&) {
      std::cerr << "error: AUTOBID_EQ_CAP must be a non-negative integer\n";
      return kExitUsage;
    }
  }

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--out", cfg.out, "Write output here instead of stdout");
    sub->add_option("--tie-break", cfg.tie_break, "Tie winner: 1 (lowest index) or 2 (highest index)")
        ->check(CLI::IsMember({1, 2}));
  };
  auto add_instance = [&](CLI::App* sub) {
    sub->add_option("--instance", cfg.instance_paths, "Instance JSON file");
    sub->add_option("--targets", cfg.targets, "Targets \"T1,T2,...\" or a targets JSON file");
  };

  auto* gen = app.add_subcommand("gen", "Generate a random integer instance");
  gen->add_option("--seed", cfg.seed, "Random seed");
  gen->add_option("--bidders", cfg.bidders, "Number of bidders (m >= 2)");
  gen->add_option("--queries", cfg.queries, "Number of queries (n >= 1)");
  gen->add_option("--max-value", cfg.max_value, "Values are uniform in [1, max]");
  gen->add_option("--out", cfg.out, "Output path");

  auto* equilibria = app.add_subcommand("equilibria", "Enumerate uniform equilibria N_k with witness multipliers");
  add_instance(equilibria);
  add_common(equilibria);

  auto* check = app.add_subcommand("check", "Check N_k conditions for given multipliers, or verify a bid profile");
  add_instance(check);
  add_common(check);
  check->add_option("--k", cfg.k, "Allocation index");
  check->add_option("--multipliers", cfg.multipliers, "\"mu1,mu2\"");
  check->add_option("--bids", cfg.bids_path, "Bid profile JSON (non-uniform verification)");
  check->add_option("--cap", cfg.cap, "Subset enumeration cap on n");

  auto* region = app.add_subcommand("feasible-region", "Existence certificates and multiplier ranges per k");
  add_instance(region);
  add_common(region);
  region->add_option("--k", cfg.k, "Only this allocation index");

  auto add_audit = [&](CLI::App* sub) {
    add_instance(sub);
    add_common(sub);
    sub->add_option("--true-target", cfg.true_target, "Bidder 1's true target");
    auto* grid = sub->add_option("--grid", cfg.grid, "Reported targets \"a,b,c\" (ascending)");
    sub->add_option("--grid-points", cfg.grid_points, "Uniform grid over [T/10, T]")->excludes(grid);
    sub->add_option("--format", cfg.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  };
  auto* raic = app.add_subcommand("audit-raic", "Risk-averse IC audit over a report grid");
  add_audit(raic);
  auto* oaic = app.add_subcommand("audit-oaic", "Optimistic IC audit over a report grid");
  add_audit(oaic);

  auto* oracle = app.add_subcommand("oracle-verify", "Cross-check closed-form existence against raw feasibility");
  add_instance(oracle);
  add_common(oracle);
  oracle->add_option("--random", cfg.random_instances, "Check N seeded random instances (one JSON line each)");
  oracle->add_option("--seed", cfg.seed, "Seed for --random");
  oracle->add_option("--max-value", cfg.max_value, "Values are uniform in [1, max] for --random");

  auto* construct = app.add_subcommand("construct", "Move an equilibrium to a lower/higher report of bidder 1's target");
  add_instance(construct);
  add_common(construct);
  construct->add_option("--bids", cfg.bids_path, "Starting equilibrium bid profile JSON");
  construct->add_option("--new-target", cfg.new_target, "Bidder 1's new target");
  construct->add_option("--direction", cfg.direction, "lower or higher")->check(CLI::IsMember({"lower", "higher"}));
  construct->add_option("--cap", cfg.cap, "Subset enumeration cap on n");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (gen->parsed()) return cmd_gen(cfg);
    if (equilibria->parsed()) return cmd_equilibria(cfg);
    if (check->parsed()) return cmd_check(cfg);
    if (region->parsed()) return cmd_feasible_region(cfg);
    if (raic->parsed()) return cmd_audit(cfg, IcProperty::RiskAverse);
    if (oaic->parsed()) return cmd_audit(cfg, IcProperty::Optimistic);
    if (oracle->parsed()) return cmd_oracle_verify(cfg);
    if (construct->parsed()) return cmd_construct(cfg);
  } catch (const InvariantViolation& e) {
    std::cerr << "invariant violation: " << e.what() << '\n';
    return kExitViolation;
  } catch (const UsageError& e) {
    std::cerr << "usage: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
