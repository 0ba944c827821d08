#include "coronalab/parallel.hpp"

#include <cstdlib>
#include <string>

namespace coronalab {

std::size_t worker_count() {
  if (const char* env = std::getenv("CORONA_LAB_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && v > 0) return static_cast<std::size_t>(v);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return std::clamp<std::size_t>(hw == 0 ? 1 : hw, 1, 8);
}

}  // namespace coronalab
