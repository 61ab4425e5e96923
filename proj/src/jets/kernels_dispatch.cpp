#include <atomic>
#include <cstdlib>
#include <string_view>

#include "kv/jets/kernels.hpp"

namespace kv::jets::kernels {

namespace {

std::atomic<const Backend*> g_active{nullptr};

const Backend* pick_default() {
  if (const char* env = std::getenv("KV_KERNELS")) {
    const std::string_view want(env);
    if (want == "scalar") return &scalar_backend();
    if (want == "avx2" && avx2_available()) return &avx2_backend();
  }
  return avx2_available() ? &avx2_backend() : &scalar_backend();
}

}  // namespace

const Backend& active() {
  const Backend* b = g_active.load(std::memory_order_acquire);
  if (!b) {
    b = pick_default();
    g_active.store(b, std::memory_order_release);
  }
  return *b;
}

bool set_active(std::string_view name) {
  if (name == "scalar") {
    g_active.store(&scalar_backend(), std::memory_order_release);
    return true;
  }
  if (name == "avx2") {
    if (!avx2_available()) return false;
    g_active.store(&avx2_backend(), std::memory_order_release);
    return true;
  }
  return false;
}

}  // namespace kv::jets::kernels
