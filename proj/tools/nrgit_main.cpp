#include "nrgit/cli.hpp"

int main(int argc, char** argv) { return nrgit::cli::run(argc, argv); }
