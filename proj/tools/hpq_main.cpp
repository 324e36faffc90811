#include "hpq/cli.hpp"

#include <iostream>

int main(int argc, char **argv) { return hpq::main_entry(argc, argv, std::cout, std::cerr); }
