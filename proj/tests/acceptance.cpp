// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.
#include <cstdlib>
#include <iostream>
#include <thread>

#include "bsm/criteria.hpp"

int main(int argc, char** argv) {
  bsm::CheckConfig cfg;
  cfg.workers = std::max(1u, std::thread::hardware_concurrency());
  if (argc > 1) cfg.seed = std::strtoull(argv[1], nullptr, 10);
  bool ok = true;
  for (int id = 1; id <= 10; ++id) {
    auto r = bsm::run_criterion(id, cfg);
    std::cout << bsm::result_line(r) << std::endl;
    ok = ok && r.ok;
  }
  return ok ? 0 : 1;
}
