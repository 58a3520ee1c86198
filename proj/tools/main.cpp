#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include <unistd.h>

#include "cellform/cli.hpp"

int main(int argc, char** argv) {
    const std::vector<std::string> args(argv + 1, argv + argc);
    const bool color = isatty(STDOUT_FILENO) && std::getenv("CELLFORM_NO_COLOR") == nullptr;
    return cellform::run_cli(args, std::cout, std::cerr, color);
}
