#include "qsom/cli.hpp"

int main(int argc, char** argv) {
  return qsom::cli::dispatch(argc, argv);
}
