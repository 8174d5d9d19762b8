#include "ghostcs/parallel.hpp"

#include <cstdlib>
#include <string>

namespace ghostcs {

std::size_t thread_count() {
  if (const char* env = std::getenv("GHOSTCS_THREADS")) {
    try {
      const long requested = std::stol(env);
      if (requested > 0) return static_cast<std::size_t>(requested);
    } catch (const std::exception&) {
      // fall through to the hardware default
    }
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

}  // namespace ghostcs
