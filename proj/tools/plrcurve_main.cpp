#include <vector>

#include "plr/cli_app.hpp"

int main(int argc, char** argv) {
  return plr::cli::run(std::vector<std::string>(argv + 1, argv + argc));
}
