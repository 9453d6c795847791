#include "demonsim/cli.hpp"

int main(int argc, char** argv) {
    return demonsim::cli::run_main(argc, argv);
}
