#include "sparsecol/cli.hpp"

int main(int argc, char** argv) { return sparsecol::cli::dispatch(argc, argv); }
