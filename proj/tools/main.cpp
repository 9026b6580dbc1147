#include "cli.hpp"

int main(int argc, char** argv) { return pmm::cli::run(argc, argv); }
