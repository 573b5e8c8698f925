/**
 * @file main.cpp
 * @brief Entry point of the rotwave command-line tool.
 */
#include <iostream>
#include <string>
#include <vector>

#include "rotwave/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return rotwave::cli::run(args, std::cout, std::cerr);
}
