// Lists class numbers of small fundamental discriminants, computed both by
// enumerating reduced forms and from L(1, chi).

#include <iostream>

#include "qflab/arith.hpp"
#include "qflab/forms.hpp"

int main() {
  std::cout << "   D   h(enum)  h(L)  forms\n";
  for (std::int64_t D = 3; D <= 100; ++D) {
    if (!qflab::is_fundamental(D)) continue;
    const auto set = qflab::enumerate_reduced_forms(D);
    std::cout << (D < 10 ? "   " : "  ") << D << "   " << set.class_number() << "        "
              << qflab::class_number_via_L(D) << "    ";
    for (const auto& f : set.forms) std::cout << f << ' ';
    std::cout << '\n';
  }
}
