#include <iostream>

#include "cli.hpp"

int main(int argc, char** argv) {
  const auto out = baire::cli::run(std::vector<std::string>(argv, argv + argc));
  std::cout << out.text;
  return out.exit_code;
}
