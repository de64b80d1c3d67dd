#include "evsched/cli.hpp"

int main(int argc, char** argv) { return evsched::cli::run(argc, argv); }
