#include <iostream>

#include "qflab/verify.hpp"

int main() {
  const auto results = qflab::verify::run_suite(qflab::verify::Suite::full, [](const qflab::verify::CheckResult& r) {
    std::cout << qflab::verify::format_line(r) << std::endl;
  });
  int failed = 0;
  for (const auto& r : results)
    if (!r.pass) ++failed;
  std::cout << (failed == 0 ? "all acceptance criteria passed" : std::to_string(failed) + " criterion(s) failed")
            << std::endl;
  return failed == 0 ? 0 : 1;
}
