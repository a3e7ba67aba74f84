#include <iostream>

#include "cqnls/cli.hpp"

int main(int argc, char** argv) { return cqnls::cli_main(argc, argv, std::cout, std::cerr); }
