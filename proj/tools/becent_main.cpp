#include "becent/pipeline.hpp"

int main(int argc, char** argv) { return becent::run_cli(argc, argv); }
