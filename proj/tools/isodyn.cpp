#include <string>
#include <vector>

#include "isodyn/cli/app.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return isodyn::cli::run_cli(std::move(args));
}
