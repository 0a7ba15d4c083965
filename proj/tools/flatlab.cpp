#include <iostream>

#include "flatlab/cli/commands.hpp"

int main(int argc, char** argv) { return flatlab::cli::run(argc, argv, std::cout, std::cerr); }
