#include <iostream>

#include "fansy/cli.hpp"

int main(int argc, char** argv) { return fansy::cli::run(argc, argv, std::cout, std::cerr); }
