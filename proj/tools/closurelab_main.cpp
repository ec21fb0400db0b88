#include <iostream>
#include <string>
#include <vector>

#include "closurelab/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return closurelab::run_cli(args, std::cout, std::cerr);
}
