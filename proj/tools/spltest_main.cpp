#include "spltest/cli.hpp"

int main(int argc, char** argv) {
    return spltest::run_cli(argc, argv);
}
