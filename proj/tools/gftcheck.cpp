#include "gftcheck/cli.hpp"

int main(int argc, char** argv) { return gftcheck::main_entry(argc, argv); }
