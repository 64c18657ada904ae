#include "shpcli/commands.hpp"

int main(int argc, char** argv) { return shp::cli::main_entry(argc, argv); }
