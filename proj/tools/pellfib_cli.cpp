#include "pellfib/cli.hpp"

int main(int argc, char** argv) { return pellfib::run_command(argc, argv); }
