#include "oddjac/cli.hpp"

int main(int argc, char** argv) { return oddjac::cli::run(argc, argv); }
