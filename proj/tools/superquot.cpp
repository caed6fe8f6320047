#include <cstdio>
#include <string>
#include <vector>

#include "superquot/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  sq::CommandResult r = sq::run_command(args);
  std::fputs(r.output.c_str(), stdout);
  return r.exit_code;
}
