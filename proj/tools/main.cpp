// main.cpp - dicke command-line entry point

#include "cli/commands.hpp"
#include "dicke/blas_check.hpp"

int main(int argc, char** argv) {
    dicke::relaunch_if_blas_broken(argv);
    return dicke::cli::cli_main(argc, argv);
}
