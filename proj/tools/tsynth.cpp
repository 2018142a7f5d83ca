#include <iostream>

#include "tsynth/cli/commands.hpp"

int main(int argc, char** argv) { return tsynth::cli::run(argc, argv, std::cin, std::cout, std::cerr); }
