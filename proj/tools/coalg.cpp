#include <iostream>

#include "coalg/cli.hpp"

int main(int argc, char** argv) { return coalg::cli_main(argc, argv, std::cout, std::cerr); }
