#include "translab/cli.hpp"

int main(int argc, char** argv) { return translab::cli_main(argc, argv); }
