#include <iostream>

#include "mhs/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return mhs::run_cli(args, std::cout, std::cerr);
}
