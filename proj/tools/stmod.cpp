#include <iostream>

#include "stmod/io/cli.hpp"

int main(int argc, char** argv) {
  return stmod::io::run_command(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
