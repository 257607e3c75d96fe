#include "cli.hpp"

int main(int argc, char** argv) { return nlsgraph::cli::run(argc, argv); }
