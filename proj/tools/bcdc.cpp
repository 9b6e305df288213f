#include "bcdc/cli.hpp"

int main(int argc, char** argv) { return bcdc::cli::run_cli(argc, argv); }
