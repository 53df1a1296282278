#include <string>
#include <vector>

#include "cheeger2d/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return cheeger2d::cli::run(args);
}
