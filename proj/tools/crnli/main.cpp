#include "app.hpp"

int main(int argc, char** argv) { return crnli::cli::run(argc, argv); }
