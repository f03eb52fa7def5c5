#include <iostream>

#include "chsys/cli.hpp"

int main(int argc, char** argv) { return chsys::cli_dispatch(argc, argv, std::cout, std::cerr); }
