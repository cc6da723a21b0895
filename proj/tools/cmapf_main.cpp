#include <iostream>

#include "cmapf/cli.hpp"

int main(int argc, char** argv) { return cmapf::run_cli(argc, argv, std::cout, std::cerr); }
