#include "qclt/cli.hpp"

int main(int argc, char** argv) { return qclt::cli::main_entry(argc, argv); }
