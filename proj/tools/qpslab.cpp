#include <cstdio>
int main() { std::puts("qpslab: under construction"); return 2; }
