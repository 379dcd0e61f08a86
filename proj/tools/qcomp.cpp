#include "qcomp/cli/commands.hpp"

int main(int argc, char** argv) { return qcomp::cli::main(argc, argv); }
