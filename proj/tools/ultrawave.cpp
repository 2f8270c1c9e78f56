#include "ultrawave/cli.hpp"

int main(int argc, char** argv) { return ultrawave::cli::main(argc, argv); }
