#include <iostream>

#include "nmach/cli.hpp"

int main(int argc, char** argv) {
  return nmach::cli::run(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
