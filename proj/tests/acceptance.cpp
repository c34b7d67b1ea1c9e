#include <cstdio>
#include <cstdlib>
#include <exception>

#include "mielab/selfcheck.hpp"

int main(int argc, char** argv) {
  int only = argc > 1 ? std::atoi(argv[1]) : 0;
  bool all_pass = true;
  for (int id = 1; id <= 9; ++id) {
    if (only != 0 && id != only) continue;
    try {
      mielab::CriterionResult r = mielab::run_criterion(id);
      std::printf("criterion %d: %s - %s\n", r.id, r.pass ? "PASS" : "FAIL", r.detail.c_str());
      all_pass = all_pass && r.pass;
    } catch (const std::exception& e) {
      std::printf("criterion %d: FAIL - exception: %s\n", id, e.what());
      all_pass = false;
    }
  }
  return all_pass ? 0 : 1;
}
