#include "monogamy/parallel.hpp"

#include <cstdlib>
#include <string>

namespace monogamy {

std::size_t worker_count() {
  if (const char* env = std::getenv("MONOGAMY_THREADS")) {
    try {
      const long v = std::stol(env);
      if (v > 0) return static_cast<std::size_t>(v);
    } catch (...) {
      // fall through to the hardware default
    }
  }
  return std::max<std::size_t>(1, std::thread::hardware_concurrency());
}

}  // namespace monogamy
