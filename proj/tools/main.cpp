#include <iostream>

#include "blowcycle/cli.hpp"

int main(int argc, char** argv) {
  return blowcycle::run_cli(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
