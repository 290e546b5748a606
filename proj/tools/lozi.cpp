#include <iostream>
#include <string>
#include <vector>

#include "lozi/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv, argv + argc);
    return lozi::cli::main_entry(args, std::cout, std::cerr);
}
