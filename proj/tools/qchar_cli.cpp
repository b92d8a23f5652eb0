#include <iostream>

#include "qchar/cli.hpp"

int main(int argc, char** argv) {
    return qchar::run_cli(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
