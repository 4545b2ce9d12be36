#include <twist/cli.hpp>

int main(int argc, char **argv)
{
  return twist::run_cli(argc, argv);
}
