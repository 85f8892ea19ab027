#include "stabgap/cli.hpp"

int main(int argc, char** argv) { return stabgap::cli::run(argc, argv); }
