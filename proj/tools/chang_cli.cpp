#include <iostream>
#include <string>
#include <vector>

#include "chang/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return chang::run_cli(args, std::cout, std::cerr);
}
