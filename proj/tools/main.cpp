#include <iostream>

#include "cli.hpp"

int main(int argc, char** argv) { return tdenoise::cli::cli_main(argc, argv, std::cout, std::cerr); }
