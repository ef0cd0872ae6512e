#include <iostream>

#include "majorant/cli/commands.hpp"

int main(int argc, char** argv) { return majorant::cli::run_cli(argc, argv, std::cout, std::cerr); }
