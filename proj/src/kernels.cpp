#include "dpt/kernels.hpp"

#include <atomic>

namespace dpt::kern {

namespace {

std::atomic<const Kernels*> g_active{nullptr};

const Kernels* default_kernels() {
  if (const Kernels* k = avx2_kernels()) return k;
  return &scalar_kernels();
}

}  // namespace

const Kernels& active() {
  const Kernels* k = g_active.load(std::memory_order_acquire);
  if (!k) {
    k = default_kernels();
    g_active.store(k, std::memory_order_release);
  }
  return *k;
}

bool select(const std::string& name) {
  const Kernels* k = nullptr;
  if (name == "scalar") {
    k = &scalar_kernels();
  } else if (name == "avx2") {
    k = avx2_kernels();
  }
  if (!k) return false;
  g_active.store(k, std::memory_order_release);
  return true;
}

}  // namespace dpt::kern
