#include "qspf/parallel.hpp"

#include <cstdlib>
#include <string>
#include <thread>

namespace qspf {

int thread_count()
{
  static const int n = [] {
    if (const char* env = std::getenv("QSPF_THREADS")) {
      try {
        const int v = std::stoi(env);
        if (v > 0) return v;
      } catch (...) {
      }
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw ? static_cast<int>(hw) : 1;
  }();
  return n;
}

}  // namespace qspf
