// Acceptance suite: runs every verification criterion at its pinned
// tolerance and prints one pass/fail line per criterion.  Exit status 0
// means all criteria passed.

#include <iostream>

#include "ctqw/verify.hpp"

int main() {
  const auto results = ctqw::verify::run_all();
  const int status = ctqw::verify::report(results, std::cout);
  std::cout << (status == 0 ? "all criteria passed\n" : "criteria FAILED\n");
  return status;
}
