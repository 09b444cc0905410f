#include "commands.hpp"

int main(int argc, char** argv) { return tbdrive::cli::run(argc, argv); }
