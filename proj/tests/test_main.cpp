#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include <iostream>

#include "support.hpp"

int main(int argc, char** argv) {
  std::cout << "COVEXP_SEED=" << testing::seed() << "\n";
  doctest::Context ctx(argc, argv);
  return ctx.run();
}
