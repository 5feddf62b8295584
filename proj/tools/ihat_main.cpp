#include <iostream>

#include "ihat/cli.hpp"

int main(int argc, char** argv) {
  return ihat::run_cli(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
