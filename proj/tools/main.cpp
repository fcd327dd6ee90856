#include "cli.hpp"

int main(int argc, char** argv) { return knotlight::cli::run(argc, argv); }
