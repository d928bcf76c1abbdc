#include <cstdio>
int main(){ std::puts("magweyl cli placeholder"); return 0; }
