#include <iostream>

#include "lamespec_cli/cli.hpp"

int main(int argc, char** argv) { return lamespec::cli::dispatch(argc, argv, std::cout, std::cerr); }
