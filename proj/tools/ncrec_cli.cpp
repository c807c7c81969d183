#include <string>
#include <vector>

#include "ncrec/experiment.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return ncrec::run_cli(args);
}
