#include <iostream>

#include "arena/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return arena::run_cli(args, std::cout, std::cerr);
}
