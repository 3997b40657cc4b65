#include "helly/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return helly::cmd_dispatch(argc, argv, std::cout, std::cerr); }
