#include <atomic>
#include <optional>

#include "fudge/kernels.hpp"

namespace fudge::kernels {

namespace {
std::atomic<int> g_forced{-1};  // -1 auto, otherwise static_cast<int>(Isa)
}

bool cpu_has_avx2() {
#if defined(__x86_64__) || defined(_M_X64)
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

const char* isa_name(Isa isa) {
  switch (isa) {
    case Isa::avx2:
      return "avx2";
    case Isa::scalar:
      return "scalar";
  }
  return "scalar";
}

void force_isa(std::optional<Isa> isa) {
  g_forced.store(isa ? static_cast<int>(*isa) : -1);
}

Isa active_isa() {
  const int forced = g_forced.load();
  if (forced == static_cast<int>(Isa::scalar)) return Isa::scalar;
  const bool avx2_ok = avx2_ops_or_null() != nullptr && cpu_has_avx2();
  if (forced == static_cast<int>(Isa::avx2)) return avx2_ok ? Isa::avx2 : Isa::scalar;
  return avx2_ok ? Isa::avx2 : Isa::scalar;
}

const Ops& active() {
  if (active_isa() == Isa::avx2) return *avx2_ops_or_null();
  return scalar_ops();
}

}  // namespace fudge::kernels
