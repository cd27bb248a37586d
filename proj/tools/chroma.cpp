#include <iostream>

#include "chroma/cli.hpp"

int main(int argc, char** argv) { return chroma::run_cli(argc, argv, std::cout, std::cerr); }
