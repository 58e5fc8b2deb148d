#include "stylo/cli.hpp"

int main(int argc, char** argv) { return stylo::run_cli(argc, argv); }
