#include "pipestab/cli.hpp"

int main(int argc, char** argv) { return pipestab::cli::run(argc, argv); }
