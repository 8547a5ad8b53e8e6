#include "coarseprox/cli.hpp"

int main(int argc, char** argv) { return coarseprox::run_cli(argc, argv); }
