#include <string>
#include <vector>

#include "latdiam/cli.hpp"

int main(int argc, char** argv) {
  return latdiam::run_cli(std::vector<std::string>(argv, argv + argc));
}
