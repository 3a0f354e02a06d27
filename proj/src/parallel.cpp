#include "curvesig/parallel.hpp"

#include <charconv>
#include <cstdlib>
#include <cstring>

namespace curvesig {

int thread_budget() {
  static const int budget = [] {
    int hw = static_cast<int>(std::thread::hardware_concurrency());
    if (hw < 1) hw = 1;
    const char* env = std::getenv("CURVESIG_THREADS");
    if (env != nullptr && *env != '\0') {
      int value = 0;
      const auto res = std::from_chars(env, env + std::strlen(env), value);
      if (res.ec == std::errc{} && *res.ptr == '\0' && value >= 1) {
        return std::min(value, 256);
      }
    }
    return hw;
  }();
  return budget;
}

}  // namespace curvesig
