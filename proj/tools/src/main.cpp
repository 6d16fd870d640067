#include <iostream>

#include "resha/cli.hpp"

int main(int argc, char** argv) { return resha::cli::run(argc, argv, {std::cout, std::cerr}); }
