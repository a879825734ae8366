#include <iostream>
#include <string>
#include <vector>

#include "fareyforge/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return fareyforge::run_invocation(args, std::cout, std::cerr);
}
