#include "levysup/cli.hpp"

int main(int argc, char** argv) {
    return levysup::run_cli(argc, argv);
}
