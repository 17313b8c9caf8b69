#include "qoag/cli.hpp"

int main(int argc, char** argv) { return qoag::cli::run(argc, argv); }
