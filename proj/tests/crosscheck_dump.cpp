// Helper binary for the cross-library check: prints reduced Groebner bases
// or gcds over Q[x,y,z] so an external system can compare results.

#include <iostream>
#include <string>

#include "ringstab/ideal.hpp"
#include "ringstab/parse.hpp"

using namespace ringstab;

int main(int argc, char** argv) {
  if (argc < 3) {
    std::cerr << "usage: crosscheck_dump gb|gcd <expr>...\n";
    return 2;
  }
  Ring ring = ring_polynomial({"x", "y", "z"});
  std::string mode = argv[1];
  try {
    if (mode == "gb") {
      std::vector<RingElement> gens;
      for (int i = 2; i < argc; ++i) gens.push_back(parse_element(ring, argv[i]));
      for (const auto& g : Ideal(ring, gens).canonical_generators())
        std::cout << g.to_string() << "\n";
      return 0;
    }
    if (mode == "gcd" && argc == 4) {
      RingElement a = parse_element(ring, argv[2]);
      RingElement b = parse_element(ring, argv[3]);
      std::cout << gcd(a, b).to_string() << "\n";
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return 1;
  }
  std::cerr << "bad arguments\n";
  return 2;
}
