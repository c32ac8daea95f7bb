#pragma once

#include <optional>
#include <string>
#include <vector>

#include "preflog/logic.hpp"
#include "preflog/persistence.hpp"

namespace preflog {

enum class Route {
  ConservativeReduction,
  DownwardPersistentAdd,
  UpwardPersistentKeep,
  LocalSplit,
  Direct,
};
const char* to_string(Route r);

// One preferential query alpha_1 & ... & alpha_n [& phi] |=~ beta.
struct Query {
  LogicHandle logic;
  std::vector<Formula> premise;
  std::optional<Formula> phi;
  Formula conclusion;
  // LocalSplit hint: try to derive beta from the first `split` premise
  // parts, treating the rest (and phi) as the added formulas.
  std::optional<size_t> split;
};

struct RunOptions {
  bool timings = false;
  // Route gates, mainly for the route-equivalence fuzz suites.
  bool allow_conservative = true;
  bool allow_dp_add = true;
  bool allow_up_keep = true;
};

struct QueryReport {
  Verdict verdict = Verdict::Unknown;
  Route route = Route::Direct;
  std::optional<std::string> classifier;  // syntactic class that fired
  // MTEL certification detail; trivially complete for the other logics.
  size_t certified = 0, uncertified = 0, divergent = 0;
  bool fully_certified = true;
  std::vector<std::string> witnesses;  // serialized countermodels, if any
  std::vector<std::string> notes;
  std::vector<std::pair<std::string, double>> stage_ms;

  std::string to_text(bool with_timings = false) const;
  std::string to_json(bool with_timings = false) const;
};

// The §5 prover strategy: cheap syntactic classification first, the
// conservative classical reduction where Cor 37 licenses it, then the
// preferential engine. Routed verdicts agree with Direct wherever Direct
// is decidable.
QueryReport run_query(const Query& q, const RunOptions& opt = {});

}  // namespace preflog
