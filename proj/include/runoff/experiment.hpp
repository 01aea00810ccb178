#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <iomanip>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "runoff/approximation.hpp"
#include "runoff/generators.hpp"

namespace runoff {

enum class ProfileModel { Uniform, Urn };

inline const char* to_string(ProfileModel m) { return m == ProfileModel::Uniform ? "uniform" : "urn"; }

inline ProfileModel parse_model(const std::string& s) {
  if (s == "uniform") return ProfileModel::Uniform;
  if (s == "urn") return ProfileModel::Urn;
  throw Error("unknown model '" + s + "' (uniform, urn)");
}

// How the preferred candidate of a trial is chosen.
struct PreferPolicy {
  enum class Kind { Worst, Random, Fixed } kind = Kind::Worst;
  Candidate id = 0;

  static PreferPolicy parse(const std::string& s) {
    if (s == "worst") return {Kind::Worst, 0};
    if (s == "random") return {Kind::Random, 0};
    try {
      std::size_t used = 0;
      const int id = std::stoi(s, &used);
      if (used == s.size() && id >= 0) return {Kind::Fixed, id};
    } catch (const std::exception&) {
    }
    throw Error("prefer must be worst, random or a candidate id, got '" + s + "'");
  }

  std::string name() const {
    switch (kind) {
      case Kind::Worst: return "worst";
      case Kind::Random: return "random";
      case Kind::Fixed: return std::to_string(id);
    }
    return "?";
  }
};

inline constexpr std::uint64_t kDefaultSeed = 1;
inline constexpr const char* kSeedEnvVar = "RUNOFF_SEED";

inline std::uint64_t parse_seed(const std::string& s) {
  try {
    std::size_t used = 0;
    const unsigned long long v = std::stoull(s, &used, 0);
    if (used == s.size() && !s.empty() && s[0] != '-') return v;
  } catch (const std::exception&) {
  }
  throw Error("invalid seed '" + s + "'");
}

// RUNOFF_SEED if set, otherwise the built-in default.
inline std::uint64_t default_seed() {
  const char* env = std::getenv(kSeedEnvVar);
  return env && *env ? parse_seed(env) : kDefaultSeed;
}

struct ExperimentSize {
  int candidates = 0;
  int voters = 0;
  bool operator==(const ExperimentSize&) const = default;
};

struct ExperimentConfig {
  std::vector<ProfileModel> models{ProfileModel::Uniform, ProfileModel::Urn};
  std::vector<ExperimentSize> sizes{{4, 4}, {4, 8}, {4, 16}};
  int trials = 200;
  std::vector<ApproxAlgorithm> algorithms{ApproxAlgorithm::Opt, ApproxAlgorithm::Greedy, ApproxAlgorithm::Plur,
                                          ApproxAlgorithm::AdaptGreedy};
  std::uint64_t master_seed = kDefaultSeed;
  int max_k = 64;
  PreferPolicy prefer;

  void validate() const {
    if (trials < 1) throw Error("trials must be at least 1");
    if (max_k < 0) throw Error("max_k must be non-negative");
    if (models.empty() || sizes.empty() || algorithms.empty()) throw Error("models, sizes and algorithms must be non-empty");
    for (const auto& s : sizes) {
      if (s.candidates < 2) throw Error("experiments need at least 2 candidates");
      if (s.candidates > s.voters) throw Error("sizes need candidates <= voters");
    }
  }
};

namespace detail {

inline std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(trim(item));
  return out;
}

inline int parse_int(const std::string& s, const std::string& what) {
  try {
    std::size_t used = 0;
    const int v = std::stoi(s, &used);
    if (used == s.size()) return v;
  } catch (const std::exception&) {
  }
  throw Error("invalid integer for " + what + ": '" + s + "'");
}

}  // namespace detail

// key=value lines; '#' starts a comment. Keys: models, sizes (CxV, e.g.
// 4x8 = 4 candidates, 8 voters), trials, algorithms, seed, max_k, prefer.
// A missing seed key leaves `fallback_seed` in place.
inline ExperimentConfig parse_experiment_config(std::istream& in, std::uint64_t fallback_seed = default_seed()) {
  ExperimentConfig cfg;
  cfg.master_seed = fallback_seed;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = detail::trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw Error("config line " + std::to_string(lineno) + ": expected key=value");
    const std::string key = detail::trim(line.substr(0, eq));
    const std::string value = detail::trim(line.substr(eq + 1));
    try {
      if (key == "models") {
        cfg.models.clear();
        for (const auto& v : detail::split(value, ',')) cfg.models.push_back(parse_model(v));
      } else if (key == "sizes") {
        cfg.sizes.clear();
        for (const auto& v : detail::split(value, ',')) {
          const auto x = v.find('x');
          if (x == std::string::npos) throw Error("size '" + v + "' must look like 4x8");
          cfg.sizes.push_back({detail::parse_int(v.substr(0, x), "candidates"),
                               detail::parse_int(v.substr(x + 1), "voters")});
        }
      } else if (key == "trials") {
        cfg.trials = detail::parse_int(value, key);
      } else if (key == "algorithms") {
        cfg.algorithms.clear();
        for (const auto& v : detail::split(value, ',')) cfg.algorithms.push_back(parse_algorithm(v));
      } else if (key == "seed") {
        cfg.master_seed = parse_seed(value);
      } else if (key == "max_k") {
        cfg.max_k = detail::parse_int(value, key);
      } else if (key == "prefer") {
        cfg.prefer = PreferPolicy::parse(value);
      } else {
        throw Error("unknown key '" + key + "'");
      }
    } catch (const Error& e) {
      throw Error("config line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  cfg.validate();
  return cfg;
}

// One output line. The mean is total / (trials - failures); an unavailable
// row is a cell the exact search could not finish.
struct ResultRow {
  ProfileModel model{};
  int candidates = 0;
  int voters = 0;
  ApproxAlgorithm algorithm{};
  std::int64_t total_manipulators = 0;
  int failures = 0;
  int trials = 0;
  std::uint64_t seed = 0;
  bool available = true;

  int successes() const { return trials - failures; }
  double mean() const { return successes() > 0 ? static_cast<double>(total_manipulators) / successes() : 0.0; }
  bool operator==(const ResultRow&) const = default;
};

// Seed of trial `t` in cell (model, size): the master seed is refined by the
// model, the candidate count and the voter count, then by the trial index.
inline std::uint64_t trial_seed(std::uint64_t master, ProfileModel model, ExperimentSize size, int trial) {
  std::uint64_t s = derive_seed(master, static_cast<std::uint64_t>(model));
  s = derive_seed(s, static_cast<std::uint64_t>(size.candidates));
  s = derive_seed(s, static_cast<std::uint64_t>(size.voters));
  return derive_seed(s, static_cast<std::uint64_t>(trial));
}

inline Profile experiment_profile(ProfileModel model, ExperimentSize size, std::uint64_t seed) {
  return model == ProfileModel::Uniform ? uniform_profile(size.voters, size.candidates, seed)
                                        : urn_profile(size.voters, size.candidates, UrnParams{std::nullopt, seed});
}

// Lowest Borda score, ties to the lowest id.
inline Candidate borda_loser(const Profile& p) {
  const auto s = scoring_scores(p, ScoringVector::borda(p.candidates()));
  return static_cast<Candidate>(std::min_element(s.begin(), s.end()) - s.begin());
}

inline Candidate choose_preferred(const PreferPolicy& policy, const Profile& p, std::uint64_t trial_seed) {
  switch (policy.kind) {
    case PreferPolicy::Kind::Worst: return borda_loser(p);
    case PreferPolicy::Kind::Random: return Rng(derive_seed(trial_seed, 1)).below_int(p.candidates());
    case PreferPolicy::Kind::Fixed:
      if (policy.id >= p.candidates()) throw Error("preferred candidate " + std::to_string(policy.id) + " out of range");
      return policy.id;
  }
  return 0;
}

// Every trial draws one profile, picks c, and asks each algorithm for its
// minimum coalition under plurality+borda with ties favouring c. Rows come
// out sorted by model, candidates, voters, then algorithm.
inline std::vector<ResultRow> run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  std::vector<ResultRow> rows;
  for (ProfileModel model : cfg.models) {
    for (const ExperimentSize& size : cfg.sizes) {
      std::vector<ResultRow> cell;
      for (ApproxAlgorithm alg : cfg.algorithms)
        cell.push_back({model, size.candidates, size.voters, alg, 0, 0, cfg.trials, cfg.master_seed, true});
      for (int t = 0; t < cfg.trials; ++t) {
        const std::uint64_t seed = trial_seed(cfg.master_seed, model, size, t);
        const Profile p = experiment_profile(model, size, seed);
        const Candidate c = choose_preferred(cfg.prefer, p, seed);
        const CombinedRule rule({RuleSpec::plurality(), RuleSpec::borda()}, c_favoring_tiebreak(c, size.candidates));
        for (ResultRow& row : cell) {
          if (!row.available) continue;
          try {
            const ApproxReport r = min_manipulators(row.algorithm, rule, p, c, cfg.max_k);
            if (!r.winner_check) throw Error("internal error: ballots failed the winner check");
            row.total_manipulators += r.manipulators_used;
          } catch (const MaxKExceeded&) {
            ++row.failures;
          } catch (const BudgetExceeded&) {
            row.available = false;
          }
        }
      }
      for (ResultRow& row : cell) {
        if (!row.available) row.total_manipulators = 0, row.failures = 0;
        rows.push_back(row);
      }
    }
  }
  std::stable_sort(rows.begin(), rows.end(), [](const ResultRow& a, const ResultRow& b) {
    return std::tuple(a.model, a.candidates, a.voters, a.algorithm) <
           std::tuple(b.model, b.candidates, b.voters, b.algorithm);
  });
  return rows;
}

inline constexpr const char* kCsvHeader = "model,candidates,voters,algorithm,mean_manipulators,failures,trials,seed";

// Means are printed with 6 decimals; with fewer than 10^5 successes per row
// total = round(mean * successes) recovers the exact sum on reading.
inline void write_csv(std::ostream& out, const std::vector<ResultRow>& rows) {
  out << kCsvHeader << '\n';
  for (const auto& r : rows) {
    out << to_string(r.model) << ',' << r.candidates << ',' << r.voters << ',' << to_string(r.algorithm) << ',';
    if (!r.available) {
      out << "--";
    } else if (r.successes() == 0) {
      out << "nan";
    } else {
      out << std::fixed << std::setprecision(6) << r.mean();
    }
    out << ',' << r.failures << ',' << r.trials << ',' << r.seed << '\n';
  }
}

inline std::vector<ResultRow> read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || detail::trim(line) != kCsvHeader) throw Error("CSV header mismatch");
  std::vector<ResultRow> rows;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (detail::trim(line).empty()) continue;
    const auto f = detail::split(line, ',');
    if (f.size() != 8) throw Error("CSV line " + std::to_string(lineno) + ": expected 8 fields");
    ResultRow r;
    r.model = parse_model(f[0]);
    r.candidates = detail::parse_int(f[1], "candidates");
    r.voters = detail::parse_int(f[2], "voters");
    r.algorithm = parse_algorithm(f[3]);
    r.failures = detail::parse_int(f[5], "failures");
    r.trials = detail::parse_int(f[6], "trials");
    r.seed = parse_seed(f[7]);
    if (f[4] == "--") {
      r.available = false;
    } else if (f[4] != "nan") {
      r.total_manipulators = std::llround(std::stod(f[4]) * r.successes());
    }
    rows.push_back(r);
  }
  return rows;
}

}  // namespace runoff
