#include "hypharm/parallel.hpp"

#include <cstdlib>
#include <string>

namespace hypharm {

unsigned worker_count() {
  if (const char* env = std::getenv("HYPHARM_THREADS"); env != nullptr && *env != '\0') {
    try {
      const long v = std::stol(env);
      if (v >= 1) return static_cast<unsigned>(std::min(v, 256L));
    } catch (const std::exception&) {
      // fall through to the hardware default
    }
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

}  // namespace hypharm
