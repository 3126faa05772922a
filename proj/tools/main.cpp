#include <iostream>
#include <string>
#include <vector>

#include "linsolve/cli.hpp"

int main(int argc, char** argv) {
    return linsolve::run_cli(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
