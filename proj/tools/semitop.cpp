#include "semitop/cli.hpp"

int main(int argc, char** argv) { return semitop::run_main(argc, argv); }
