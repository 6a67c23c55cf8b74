#include "tcm/cli.hpp"

int main(int argc, char** argv) { return tcm::cli::main(argc, argv); }
