#include "cpev/cli/run.hpp"

int main(int argc, char** argv) { return cpev::cli::main_entry(argc, argv); }
