#include <string>
#include <vector>

#include "maxcon/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return maxcon::run_cli(args);
}
