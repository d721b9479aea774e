#include <cstdio>

int main() {
    std::puts("qmux: placeholder");
    return 0;
}
