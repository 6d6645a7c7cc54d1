#include "btb/cli.hpp"

int main(int argc, char** argv) { return btb::cli::main(argc, argv); }
