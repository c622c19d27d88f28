#include "cli.hpp"

int main(int argc, char** argv) { return pfake::cli::run(argc, argv); }
