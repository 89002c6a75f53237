#include <iostream>
#include <string>
#include <vector>

#include "sigcorr/cli.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv + 1, argv + argc);
  return sigcorr::cli::run(args, std::cout, std::cerr, sigcorr::cli::Environment::from_process());
}
