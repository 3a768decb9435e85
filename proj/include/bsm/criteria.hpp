// The ten acceptance criteria as callable checks, shared by the acceptance
// binary and `bsm paper-check`.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace bsm {

struct CriterionResult {
  int id = 0;
  std::string title;
  bool ok = false;
  double seconds = 0;
  double limit = 0;  // seconds, 0 = none
  std::string detail;
};

struct CheckConfig {
  std::uint64_t seed = 20240601;
  int workers = 1;
  int fuzz_cases = 1000;
};

CriterionResult run_criterion(int id, const CheckConfig& cfg);
std::vector<CriterionResult> run_all(const CheckConfig& cfg);
// "PASS 3 ... (0.01s)"
std::string result_line(const CriterionResult& r);

void to_json(nlohmann::json& j, const CriterionResult& r);

}  // namespace bsm
