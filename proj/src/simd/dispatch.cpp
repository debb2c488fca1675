#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "qwalk/simd/kernels.hpp"

namespace qwalk::simd {

#ifndef QWALK_HAVE_AVX2_KERNELS
const KernelTable* avx2_kernels() { return nullptr; }
#endif

bool cpu_supports(Isa isa) {
  switch (isa) {
    case Isa::kScalar:
      return true;
    case Isa::kAvx2:
#if defined(QWALK_HAVE_AVX2_KERNELS) && (defined(__GNUC__) || defined(__clang__))
      return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
      return false;
#endif
  }
  return false;
}

std::string_view isa_name(Isa isa) {
  return isa == Isa::kAvx2 ? "avx2" : "scalar";
}

namespace {

const KernelTable* table_for(Isa isa) {
  return isa == Isa::kAvx2 ? avx2_kernels() : &scalar_kernels();
}

const KernelTable* initial_table() {
  if (const char* env = std::getenv("QWALK_ISA")) {
    const std::string want(env);
    if (want == "scalar") return &scalar_kernels();
    if (want == "avx2" && cpu_supports(Isa::kAvx2)) return avx2_kernels();
  }
  if (cpu_supports(Isa::kAvx2)) return avx2_kernels();
  return &scalar_kernels();
}

std::atomic<const KernelTable*>& current() {
  static std::atomic<const KernelTable*> table{initial_table()};
  return table;
}

}  // namespace

const KernelTable& active() { return *current().load(std::memory_order_acquire); }

Isa active_isa() { return active().isa; }

void select_isa(Isa isa) {
  if (!cpu_supports(isa)) {
    throw std::runtime_error("instruction set '" + std::string(isa_name(isa)) +
                             "' is not available on this machine");
  }
  current().store(table_for(isa), std::memory_order_release);
}

}  // namespace qwalk::simd
