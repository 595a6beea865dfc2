#pragma once

#include <functional>
#include <string>
#include <vector>

#include "tightmaps/insertion.hpp"

namespace tightmaps {

struct VerifyOptions {
  int order = 6;  // N for the identity criteria
  int mmax = 5;
};

struct CriterionResult {
  int id = 0;
  std::string title;
  CheckReport report;
  std::string error;  // set when the check threw
  double seconds = 0;
  bool pass() const { return error.empty() && report.ok() && report.checked > 0; }
  nlohmann::json to_json() const;
};

CheckReport criterion_disk(const VerifyOptions& o);
CheckReport criterion_census_cf(const VerifyOptions& o);
CheckReport criterion_trumpet(const VerifyOptions& o);
CheckReport criterion_recursion(const VerifyOptions& o);
CheckReport criterion_genus1(const VerifyOptions& o);
CheckReport criterion_quasipoly(const VerifyOptions& o);
CheckReport criterion_auxiliary(const VerifyOptions& o);
CheckReport criterion_operators(const VerifyOptions& o);

// pieces of criterion 7
CheckReport suite_moments(const VerifyOptions& o);
CheckReport suite_trees(const VerifyOptions& o);
CheckReport suite_discrete(const VerifyOptions& o);

struct Criterion {
  int id;
  std::string title;
  std::function<CheckReport(const VerifyOptions&)> run;
};
const std::vector<Criterion>& criteria();
CriterionResult run_criterion(const Criterion& c, const VerifyOptions& o);

}  // namespace tightmaps
