#include <vector>

#include "windspc/cli.hpp"

int main(int argc, char** argv) {
    return windspc::cli::run(std::vector<std::string>(argv + 1, argv + argc));
}
