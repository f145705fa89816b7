#include <string>
#include <vector>

#include "mixmarket/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return mixmarket::cli::run_command(args);
}
