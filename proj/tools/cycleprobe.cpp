#include "cycleprobe/cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
    return cycleprobe::run_cli(argc, argv, std::cout, std::cerr);
}
