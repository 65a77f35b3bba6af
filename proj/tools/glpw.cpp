#include <iostream>

#include "glpstar/cli.hpp"

int main(int argc, char** argv) {
    const auto result = glpstar::cli::run(std::vector<std::string>(argv + 1, argv + argc));
    std::cout << result.out;
    std::cerr << result.err;
    return result.status;
}
