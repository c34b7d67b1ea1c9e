#pragma once

#include <string>
#include <vector>

namespace mielab {

struct CriterionResult {
  int id = 0;
  bool pass = false;
  std::string detail;
};

// The numbered verification suite; ids 1..9.
CriterionResult run_criterion(int id);
std::vector<CriterionResult> run_all_criteria();

}  // namespace mielab
