#include "spectra/cli/commands.hpp"

int main(int argc, char** argv) { return spectra::cli::run(argc, argv); }
