#include <cstdlib>
#include <iostream>
#include <string>

#include "gpd/suite.hpp"

// One line per criterion, then the mutation-sensitivity check: widening the
// window of pradines-1 to 1/2 must break criterion 1.
int main(int argc, char** argv) {
  gpd::suite::Config cfg;
  if (argc > 1) cfg.seed = std::stoull(argv[1]);
  bool ok = true;
  for (const auto& r : gpd::suite::run_all(cfg)) {
    std::cout << "criterion " << r.id << ": " << (r.pass ? "PASS" : "FAIL") << "  " << r.title << "\n";
    if (!r.pass) std::cout << "  " << r.detail.dump() << "\n";
    ok = ok && r.pass;
  }

  gpd::suite::Config mutated = cfg;
  gpd::QuotientBundleModel m = gpd::build_pradines_1();
  m.upper = gpd::PLFunction::constant(gpd::Rational(1, 2));
  m.lower = -m.upper;
  mutated.pradines_1 = m;
  auto r1 = gpd::suite::run_criterion(1, mutated);
  bool detected = !r1.pass;
  std::cout << "mutation width=1/2: " << (detected ? "PASS" : "FAIL") << "  criterion 1 "
            << (detected ? "fails as expected" : "still passes") << "\n";
  ok = ok && detected;
  return ok ? EXIT_SUCCESS : EXIT_FAILURE;
}
