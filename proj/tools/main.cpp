#include "cli.hpp"

int main(int argc, char** argv) { return twojet::cli::run(argc, argv); }
