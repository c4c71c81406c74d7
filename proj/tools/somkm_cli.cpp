#include <iostream>
#include <string>
#include <vector>

#include "somkm/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return somkm::cli::dispatch(args, std::cout, std::cerr);
}
