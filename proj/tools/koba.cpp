#include <iostream>
#include <string>
#include <vector>

#include "koba/cli.hpp"

int main(int argc, char** argv) {
  if (!koba::cli::apply_thread_cap()) {
    std::cerr << "KOBA_THREADS must be a positive integer\n";
    return koba::cli::invalid_input;
  }
  const std::vector<std::string> args(argv + 1, argv + argc);
  const koba::cli::CommandResult r = koba::cli::dispatch(args);
  std::cout << r.out;
  if (!r.summary.empty()) std::cerr << r.summary << "\n";
  return r.exit_code;
}
