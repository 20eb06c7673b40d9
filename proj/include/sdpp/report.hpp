#pragma once
// JSON and one-line views of solver results. Everything here is
// deterministic: wall-clock timing belongs on stderr, never in a report.

#include <string>
#include <vector>

#include "sdpp/ab.hpp"
#include "sdpp/checks.hpp"
#include "sdpp/io.hpp"
#include "sdpp/solver.hpp"

namespace sdpp {

inline const char* outcome_name(Outcome o) {
  switch (o) {
    case Outcome::Optimal: return "optimal";
    case Outcome::Infeasible: return "infeasible";
    default: return "failed";
  }
}

inline json work_json(const WorkCounters& w) {
  json j;
  j["permanents"] = w.permanents;
  j["transitions"] = w.transitions;
  j["trials"] = w.trials;
  return j;
}

inline json paths_json(const std::vector<std::vector<int>>& paths) {
  json j = json::array();
  for (auto& p : paths) j.push_back(p);
  return j;
}

inline json intmat_json(const IntMat& m) {
  json j = json::array();
  for (auto& row : m) j.push_back(row);
  return j;
}

inline json solve_report_json(const SolveReport& r) {
  json j;
  j["outcome"] = outcome_name(r.outcome);
  j["certain"] = r.certain;
  j["dimension"] = r.dim;
  j["det"] = r.det;
  j["modulusBits"] = r.c;
  j["target"] = r.target;
  if (r.outcome == Outcome::Optimal) {
    j["weight"] = r.weight;
    j["tieBreak"] = r.rvalue;
    j["coefficient"] = r.coeff;
    j["paths"] = paths_json(r.paths);
  }
  j["trialsUsed"] = r.trials_used;
  j["work"] = work_json(r.work);
  return j;
}

inline json ab_report_json(const ABReport& r) {
  json j;
  j["outcome"] = outcome_name(r.outcome);
  j["certain"] = r.certain;
  j["modulusBits"] = r.c;
  if (r.outcome == Outcome::Optimal) {
    j["weight"] = r.weight;
    j["tieBreak"] = r.rvalue;
    j["coefficient"] = r.coeff;
    j["paths"] = paths_json(r.paths);
  }
  j["trialsUsed"] = r.trials_used;
  j["work"] = work_json(r.work);
  return j;
}

inline json checks_json(const SystemChecks& c) {
  json j;
  j["dimension"] = c.dim;
  j["ok"] = c.ok();
  j["triangular"] = c.order.ok;
  j["order"] = c.order.order;
  j["diagonalViolations"] = c.diag_bad;
  j["cancellationViolations"] = c.cancel_bad;
  j["equivalenceViolations"] = c.equiv_bad;
  j["chainViolations"] = c.chain_bad;
  j["cancellationChecked"] = c.cancel_checked;
  j["equivalenceChecked"] = c.equiv_checked;
  j["samples"] = c.samples;
  return j;
}

inline std::string human_summary(Outcome outcome, bool certain, u64 weight,
                                 std::size_t paths, int trials_used) {
  if (outcome == Outcome::Optimal)
    return "optimal weight " + std::to_string(weight) + " with " +
           std::to_string(paths) + " paths after " +
           std::to_string(trials_used) + " trial(s)";
  if (outcome == Outcome::Infeasible)
    return certain ? "infeasible: the demand pattern cannot be routed"
                   : "infeasible: no routing found in any trial (probabilistic)";
  return "failed: no verified solution within the trial budget";
}

}  // namespace sdpp
