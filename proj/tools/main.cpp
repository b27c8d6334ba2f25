#include "sticky1d/harness.hpp"

int main(int argc, char** argv) { return sticky1d::run_cli(argc, argv); }
