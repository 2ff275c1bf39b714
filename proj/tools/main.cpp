// Command-line front end. Subcommands are wired in as the library grows;
// see the README for usage.
#include <cstdio>

int main() {
    std::puts("cps: subcommands not wired up yet");
    return 1;
}
