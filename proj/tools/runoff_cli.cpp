// Command-line front end: winner, axioms, manipulate, approx, gen, experiment.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "runoff/runoff.hpp"

namespace {

using namespace runoff;

// Exit codes.
constexpr int kOk = 0;
constexpr int kNegative = 1;  // infeasible / counterexample found / max-k exceeded
constexpr int kUsage = 2;
constexpr int kBudget = 3;

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(item);
  return out;
}

std::vector<Weight> parse_weights(const std::string& s, const char* what) {
  std::vector<Weight> out;
  for (const auto& item : split_list(s)) {
    try {
      std::size_t used = 0;
      const long long v = std::stoll(item, &used);
      if (used != item.size()) throw Error("");
      out.push_back(v);
    } catch (const std::exception&) {
      throw Error(std::string("invalid integer in ") + what + ": '" + item + "'");
    }
  }
  return out;
}

TieBreakOrder parse_tiebreak(const std::string& s, int m) {
  if (s.empty()) return TieBreakOrder::ascending(m);
  std::vector<Candidate> order;
  for (Weight v : parse_weights(s, "--tiebreak")) order.push_back(static_cast<Candidate>(v));
  Ranking check(order);  // validates the permutation
  if (check.size() != m) throw Error("tie-break order must list all " + std::to_string(m) + " candidates");
  return TieBreakOrder(std::move(order));
}

Profile load_profile(const std::string& path) {
  if (path == "-") return read_profile(std::cin);
  std::ifstream in(path);
  if (!in) throw Error("cannot open profile file '" + path + "'");
  return read_profile(in);
}

// Output sink: a file when --out is given, stdout otherwise.
class Sink {
 public:
  explicit Sink(const std::string& path) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw Error("cannot write '" + path + "'");
    }
  }
  std::ostream& os() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

std::string join(const std::vector<Candidate>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s;
}

std::string ballot_line(const Ranking& r) {
  std::string s;
  for (int p = 0; p < r.size(); ++p) s += (p ? " > " : "") + std::to_string(r.at(p));
  return s;
}

Candidate check_candidate(int c, int m) {
  if (c < 0 || c >= m) throw Error("candidate " + std::to_string(c) + " out of range 0.." + std::to_string(m - 1));
  return c;
}

// ---------------------------------------------------------------------------

struct WinnerArgs {
  std::string rule, profile, tiebreak, out;
};

int run_winner(const WinnerArgs& a) {
  const Profile p = load_profile(a.profile);
  const CombinedRule rule(parse_rule_expr(a.rule), parse_tiebreak(a.tiebreak, p.candidates()));
  const auto result = combined_winner(rule, p);
  Sink sink(a.out);
  sink.os() << "rule: " << rule.name() << '\n';
  for (std::size_t i = 0; i < result.trace.size(); ++i) sink.os() << "round " << i + 1 << ": {" << join(result.trace[i]) << "}\n";
  sink.os() << "winner: " << result.winner << '\n';
  return kOk;
}

struct AxiomArgs {
  std::string rule, property, tiebreak, witness, out;
  int m = 3, n = 3;
  bool exhaustive = false;
  std::uint64_t samples = 0, seed = 0;
  Weight max_weight = 1;
};

int run_axioms(const AxiomArgs& a) {
  const PropertyKind kind = parse_property(a.property);
  if (a.m < 1 || a.n < 1) throw Error("--m and --n must be positive");
  ProfileSpace space;
  space.m = a.m;
  space.max_ballots = a.n;
  space.exhaustive = a.samples == 0 || a.exhaustive;
  space.samples = a.samples == 0 ? 1000 : a.samples;
  space.seed = a.seed;
  space.max_weight = a.max_weight;
  const CombinedRule rule(parse_rule_expr(a.rule), parse_tiebreak(a.tiebreak, a.m));

  const auto w = search_counterexample(rule, kind, space);
  Sink sink(a.out);
  const bool enumerated = kind == PropertyKind::Consistency ? space.exhaustive : space.enumerable();
  sink.os() << "rule: " << rule.name() << "\nproperty: " << to_string(kind) << "\nsearch: "
            << (enumerated ? "exhaustive where enumerable" : "sampled") << ", m=" << a.m << ", up to " << a.n
            << " ballots\n";
  if (!w) {
    sink.os() << "result: no counterexample found\n";
    return kOk;
  }
  sink.os() << "result: counterexample\n" << w->detail << '\n';
  for (std::size_t i = 0; i < w->profiles.size(); ++i) {
    sink.os() << "profile " << i + 1 << " (winner " << w->winners[i] << "):\n";
    write_profile(sink.os(), w->profiles[i]);
  }
  if (w->union_winner >= 0) sink.os() << "union winner: " << w->union_winner << '\n';
  if (!a.witness.empty()) {
    std::ofstream f(a.witness);
    if (!f) throw Error("cannot write '" + a.witness + "'");
    f << "# " << to_string(kind) << " counterexample for " << rule.name() << '\n';
    for (const auto& p : w->profiles) write_profile(f, p);
  }
  return kNegative;
}

struct ManipulateArgs {
  std::string rule, profile, manipulators, solver = "auto", out;
  int prefer = 0;
  double budget = kDefaultBruteForceBudget;
};

int run_manipulate(const ManipulateArgs& a) {
  const Profile p = load_profile(a.profile);
  const Candidate c = check_candidate(a.prefer, p.candidates());
  ManipulationInstance inst{CombinedRule(parse_rule_expr(a.rule), c_favoring_tiebreak(c, p.candidates())), p, c,
                            a.manipulators.empty() ? std::vector<Weight>{}
                                                   : parse_weights(a.manipulators, "--manipulators")};
  for (Weight w : inst.manip_weights)
    if (w < 1) throw Error("manipulator weights must be positive");
  SolverChoice choice = SolverChoice::Auto;
  if (a.solver == "brute") choice = SolverChoice::Brute;
  else if (a.solver == "p6") choice = SolverChoice::PluralityVeto;
  else if (a.solver == "p7") choice = SolverChoice::ScoringPair;
  else if (a.solver == "w3") choice = SolverChoice::Weighted3;
  else if (a.solver != "auto") throw Error("unknown solver '" + a.solver + "'");

  ManipulationOutcome out;
  try {
    out = manipulate(inst, choice, a.budget);
  } catch (const BudgetExceeded& e) {
    Sink sink(a.out);
    sink.os() << "result: budget exceeded\n";
    std::cerr << e.what() << '\n';
    return kBudget;
  }
  Sink sink(a.out);
  sink.os() << "rule: " << inst.rule.name() << "\npreferred: " << c << "\nsolver path: " << to_string(out.path)
            << "\nresult: " << (out.feasible ? "feasible" : "infeasible") << '\n';
  for (std::size_t i = 0; i < out.ballots.size(); ++i)
    sink.os() << inst.manip_weights[i] << ": " << ballot_line(out.ballots[i]) << '\n';
  return out.feasible ? kOk : kNegative;
}

struct ApproxArgs {
  std::string alg, rule = "plurality+borda", profile, out;
  int prefer = 0, max_k = 64;
};

int run_approx(const ApproxArgs& a) {
  const Profile p = load_profile(a.profile);
  const Candidate c = check_candidate(a.prefer, p.candidates());
  const CombinedRule rule(parse_rule_expr(a.rule), c_favoring_tiebreak(c, p.candidates()));
  const ApproxAlgorithm alg = parse_algorithm(a.alg);
  Sink sink(a.out);
  try {
    const ApproxReport r = min_manipulators(alg, rule, p, c, a.max_k);
    sink.os() << "algorithm: " << to_string(alg) << "\nrule: " << rule.name() << "\npreferred: " << c
              << "\nmanipulators: " << r.manipulators_used << "\nwinner check: " << (r.winner_check ? "ok" : "FAILED")
              << '\n';
    for (const auto& b : r.ballots) sink.os() << "1: " << ballot_line(b) << '\n';
    return r.winner_check ? kOk : kNegative;
  } catch (const MaxKExceeded& e) {
    sink.os() << "algorithm: " << to_string(alg) << "\nresult: " << e.what() << '\n';
    return kNegative;
  } catch (const BudgetExceeded& e) {
    sink.os() << "algorithm: " << to_string(alg) << "\nresult: budget exceeded\n";
    return kBudget;
  }
}

struct GenArgs {
  std::string model, fixture, ints, out;
  int n = 0, m = 0;
  std::uint64_t seed = 0;
  std::int64_t replacements = -1;
};

int run_gen(const GenArgs& a) {
  Sink sink(a.out);
  if (!a.fixture.empty()) {
    const FixtureKind kind = parse_fixture_kind(a.fixture);
    if (kind == FixtureKind::GreedyHardFamily) {
      const auto f = greedy_hard_family(a.n);
      sink.os() << "# rule: veto+borda\n# prefer: 0\n# tiebreak: "
                << join(std::vector<Candidate>(f.tiebreak.order().begin(), f.tiebreak.order().end())) << '\n';
      write_profile(sink.os(), f.profile);
      return kOk;
    }
    if (kind == FixtureKind::Monotonicity) {
      const auto tb = monotonicity_tiebreak();
      sink.os() << "# rule: plurality+borda\n# tiebreak: "
                << join(std::vector<Candidate>(tb.order().begin(), tb.order().end())) << '\n';
      write_profile(sink.os(), monotonicity_profile());
      return kOk;
    }
    const auto inst = partition_fixture(kind, parse_weights(a.ints, "--ints"));
    std::string weights;
    for (std::size_t i = 0; i < inst.manip_weights.size(); ++i)
      weights += (i ? "," : "") + std::to_string(inst.manip_weights[i]);
    sink.os() << "# rule: " << inst.rule.name() << "\n# prefer: " << inst.preferred << "\n# tiebreak: "
              << join(std::vector<Candidate>(inst.rule.tiebreak.order().begin(), inst.rule.tiebreak.order().end()))
              << "\n# manipulators: " << weights << '\n';
    write_profile(sink.os(), inst.nm_profile);
    return kOk;
  }
  if (a.n < 1 || a.m < 1) throw Error("gen needs --n (voters) and --m (candidates), both positive");
  Profile p(a.m);
  if (a.model == "uniform") {
    p = uniform_profile(a.n, a.m, a.seed);
  } else if (a.model == "urn") {
    UrnParams params;
    params.seed = a.seed;
    if (a.replacements >= 0) params.replacements = static_cast<std::uint64_t>(a.replacements);
    p = urn_profile(a.n, a.m, params);
  } else {
    throw Error("gen needs --model uniform|urn or --fixture <kind>");
  }
  write_profile(sink.os(), p);
  return kOk;
}

struct ExperimentArgs {
  std::string config, out;
  std::uint64_t seed = 0;
  bool seed_given = false;
};

int run_experiment_cmd(const ExperimentArgs& a) {
  ExperimentConfig cfg;
  if (!a.config.empty()) {
    std::ifstream in(a.config);
    if (!in) throw Error("cannot open config '" + a.config + "'");
    cfg = parse_experiment_config(in, default_seed());
  } else {
    cfg.master_seed = default_seed();
  }
  if (a.seed_given) cfg.master_seed = a.seed;
  const auto rows = run_experiment(cfg);
  Sink sink(a.out);
  write_csv(sink.os(), rows);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Voting rule combinations: winners, axioms, manipulation and experiments"};
  app.require_subcommand(1);
  int status = kOk;

  WinnerArgs wa;
  auto* winner = app.add_subcommand("winner", "Winner of a rule expression on a profile");
  winner->add_option("--rule", wa.rule, "Rule expression, e.g. plurality+borda")->required();
  winner->add_option("--profile", wa.profile, "Profile file ('-' for stdin)")->required();
  winner->add_option("--tiebreak", wa.tiebreak, "Tie-break order, e.g. 2,0,1 (default ascending ids)");
  winner->add_option("--out", wa.out, "Output file (default stdout)");
  winner->callback([&] { status = run_winner(wa); });

  AxiomArgs xa;
  xa.seed = default_seed();
  auto* axioms = app.add_subcommand("axioms", "Search small profiles for a property violation");
  axioms->add_option("--rule", xa.rule)->required();
  axioms->add_option("--property", xa.property,
                     "unanimity, majority, condorcet, condorcet-loser, monotonicity, consistency")
      ->required();
  axioms->add_option("--m", xa.m, "Number of candidates")->required();
  axioms->add_option("--n", xa.n, "Maximum number of ballots")->required();
  auto* exh = axioms->add_flag("--exhaustive", xa.exhaustive, "Enumerate every profile (default)");
  axioms->add_option("--samples", xa.samples, "Sample this many profiles instead")->excludes(exh);
  axioms->add_option("--seed", xa.seed, "Sampling seed");
  axioms->add_option("--max-weight", xa.max_weight, "Largest ballot weight when sampling");
  axioms->add_option("--tiebreak", xa.tiebreak);
  axioms->add_option("--witness", xa.witness, "Write the counterexample profile(s) here");
  axioms->add_option("--out", xa.out);
  axioms->callback([&] { status = run_axioms(xa); });

  ManipulateArgs ma;
  auto* manip = app.add_subcommand("manipulate", "Decide coalitional manipulation");
  manip->add_option("--rule", ma.rule)->required();
  manip->add_option("--profile", ma.profile, "Non-manipulator profile")->required();
  manip->add_option("--prefer", ma.prefer, "Preferred candidate")->required();
  manip->add_option("--manipulators", ma.manipulators, "Manipulator weights, e.g. 1,1,2")->required();
  manip->add_option("--solver", ma.solver, "auto|brute|p6|p7|w3");
  manip->add_option("--budget", ma.budget, "Brute-force tuple budget");
  manip->add_option("--out", ma.out);
  manip->callback([&] { status = run_manipulate(ma); });

  ApproxArgs aa;
  auto* approx = app.add_subcommand("approx", "Minimum number of unit manipulators found by an algorithm");
  approx->add_option("--alg", aa.alg, "greedy|plur|adapt|opt")->required();
  approx->add_option("--rule", aa.rule);
  approx->add_option("--profile", aa.profile)->required();
  approx->add_option("--prefer", aa.prefer)->required();
  approx->add_option("--max-k", aa.max_k);
  approx->add_option("--out", aa.out);
  approx->callback([&] { status = run_approx(aa); });

  GenArgs ga;
  ga.seed = default_seed();
  auto* gen = app.add_subcommand("gen", "Generate a random profile or a fixture");
  gen->add_option("--model", ga.model, "uniform|urn");
  gen->add_option("--n", ga.n, "Voters (or size of the greedy-hard fixture)");
  gen->add_option("--m", ga.m, "Candidates");
  gen->add_option("--seed", ga.seed);
  gen->add_option("--replacements", ga.replacements, "Urn copies returned per draw (default m!)");
  gen->add_option("--fixture", ga.fixture,
                  "plurality-cup, copeland-plurality, maximin-plurality, greedy-hard, monotonicity");
  gen->add_option("--ints", ga.ints, "Integers of a partition fixture, e.g. 1,1,2");
  gen->add_option("--out", ga.out);
  gen->callback([&] { status = run_gen(ga); });

  ExperimentArgs ea;
  auto* exp = app.add_subcommand("experiment", "Run the approximation experiment and write CSV");
  exp->add_option("--config", ea.config, "key=value config file");
  auto* seed_opt = exp->add_option("--seed", ea.seed, "Master seed (overrides config and RUNOFF_SEED)");
  exp->add_option("--out", ea.out, "CSV file (default stdout)");
  exp->callback([&] {
    ea.seed_given = seed_opt->count() > 0;
    status = run_experiment_cmd(ea);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kUsage;
  } catch (const runoff::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return status;
}
