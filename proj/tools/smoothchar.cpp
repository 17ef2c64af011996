#include "cli.hpp"

int main(int argc, char** argv) { return smoothchar::cli::main(argc, argv); }
