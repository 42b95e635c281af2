#include <iostream>

#include "uniformize/cli.hpp"

int main(int argc, char** argv) { return uniformize::cli::run(argc, argv, std::cout, std::cerr); }
