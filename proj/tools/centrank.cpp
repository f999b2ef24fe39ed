#include <iostream>

#include "centrank/cli.hpp"

int main(int argc, char** argv) { return centrank::cli::run(argc, argv, std::cout, std::cerr); }
