#include <iostream>

#include "delayspec/commands.hpp"

int main(int argc, char** argv) { return delayspec::run_cli(argc, argv, std::cout, std::cerr); }
