#include "lcft/util/parallel.hpp"

#include <cstdlib>
#include <string>

namespace lcft {

int resolve_threads(int requested) {
  if (requested >= 1) return requested;
  if (const char* env = std::getenv("LCFT_THREADS")) {
    try {
      const int n = std::stoi(env);
      if (n >= 1) return n;
    } catch (...) {
    }
  }
  return 1;
}

}  // namespace lcft
