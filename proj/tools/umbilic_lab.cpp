#include <iostream>

#include "umb/cli.hpp"

int main(int argc, char** argv) { return umb::run_cli(argc, argv, std::cout, std::cerr); }
