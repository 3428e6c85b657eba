#include <atomic>

#include "texshape/simd/kernels.hpp"

namespace texshape::simd {

std::string_view to_string(Level level) noexcept {
  switch (level) {
    case Level::scalar: return "scalar";
    case Level::avx2: return "avx2";
  }
  return "unknown";
}

Level detected_level() noexcept {
#if defined(TEXSHAPE_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  static const Level level = __builtin_cpu_supports("avx2") ? Level::avx2 : Level::scalar;
  return level;
#else
  return Level::scalar;
#endif
}

const Kernels& kernels_for(Level level) noexcept {
#if defined(TEXSHAPE_HAVE_AVX2)
  if (level == Level::avx2 && detected_level() == Level::avx2) return avx2_kernels();
#endif
  (void)level;
  return scalar_kernels();
}

namespace {

std::atomic<const Kernels*>& active_slot() noexcept {
  static std::atomic<const Kernels*> slot{&kernels_for(detected_level())};
  return slot;
}

}  // namespace

const Kernels& active() noexcept { return *active_slot().load(std::memory_order_acquire); }

Level active_level() noexcept { return active().level; }

Level set_active_level(Level level) noexcept {
  const Kernels& k = kernels_for(level);
  active_slot().store(&k, std::memory_order_release);
  return k.level;
}

}  // namespace texshape::simd
