#include <string>
#include <vector>

#include "infalg/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return infalg::run_command(args);
}
