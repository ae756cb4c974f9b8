#include <iostream>

#include "fewdist/cli.hpp"

int main(int argc, char** argv) {
  using namespace fewdist::cli;
  const ParseOutcome parsed = parse_command_line(argc, argv, std::cout, std::cerr);
  if (!parsed.config) return parsed.exit_code;
  return run(*parsed.config, std::cout, std::cerr);
}
