#include <iostream>
#include <string>
#include <vector>

#include "entrobound/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return entrobound::dispatch(args, std::cout, std::cerr);
}
