#include <iostream>

int main() {
  std::cout << "aw: placeholder\n";
  return 0;
}
