#include "cmvspec/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <string>

namespace cmvspec {

namespace {

unsigned default_threads() {
  if (const char* env = std::getenv("CMV_SPECTRA_THREADS")) {
    try {
      const long v = std::stol(env);
      if (v > 0) return static_cast<unsigned>(v);
    } catch (...) {
    }
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

std::atomic<unsigned>& threads_setting() {
  static std::atomic<unsigned> value{default_threads()};
  return value;
}

}  // namespace

unsigned thread_count() { return threads_setting().load(); }

void set_thread_count(unsigned n) { threads_setting().store(n == 0 ? default_threads() : n); }

}  // namespace cmvspec
