#include <cstdio>

int main() {
  std::puts("stamstar: subcommands not wired up yet");
  return 0;
}
