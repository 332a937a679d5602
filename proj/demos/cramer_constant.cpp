// Evaluates the bandlimited function with coefficients {68, 5, 1} at
// lambda = 0.98644 and prints the functionals and the resulting gap constant.

#include <iomanip>
#include <iostream>

#include "qflab/fourier.hpp"

int main() {
  const auto fn = qflab::cramer_function();
  const auto rep = qflab::functional_report(fn, 28.0);
  std::cout << std::setprecision(8);
  std::cout << "F(0)            " << rep.f_at_zero << '\n';
  std::cout << "||F||_1         " << rep.l1_norm << " (+ " << rep.l1_tail_bound << " certified tail)\n";
  std::cout << "tail (F^)_+     " << rep.tail_pos << '\n';
  std::cout << "J_28^+(F)       " << rep.j_plus << '\n';
  std::cout << "ratio           " << rep.ratio() << '\n';
  for (std::int64_t h : {1, 2, 3}) {
    std::cout << "gap constant h=" << h << "  " << qflab::gap_constant(rep, 0.0, 0.5, h) << '\n';
  }
}
