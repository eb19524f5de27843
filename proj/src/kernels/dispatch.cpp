// Copyright 2026 The akira-kit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <atomic>
#include <cstdlib>
#include <string>
#include <string_view>

#include "akira/error.hpp"
#include "akira/kernels/kernels.hpp"

namespace akira::kernels {
namespace {

constexpr KernelTable kScalarTable{
    &scalar::remap_bilinear,
    &scalar::camera_map_row,
    &scalar::disc_blur,
    &scalar::flowsim_accumulate,
};

#if defined(AKIRA_KIT_HAVE_AVX2)
constexpr KernelTable kAvx2Table{
    &avx2::remap_bilinear,
    &avx2::camera_map_row,
    &avx2::disc_blur,
    &avx2::flowsim_accumulate,
};
#endif

bool cpu_has_avx2() noexcept {
#if defined(AKIRA_KIT_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

Isa initial_isa() noexcept {
  if (const char* env = std::getenv("AKIRA_KIT_SIMD")) {
    const std::string_view want(env);
    if (want == "scalar") return Isa::kScalar;
    if (want == "avx2" && isa_available(Isa::kAvx2)) return Isa::kAvx2;
  }
  return best_isa();
}

std::atomic<Isa>& current() {
  static std::atomic<Isa> isa{initial_isa()};
  return isa;
}

}  // namespace

const char* isa_name(Isa isa) noexcept {
  switch (isa) {
    case Isa::kScalar: return "scalar";
    case Isa::kAvx2: return "avx2";
  }
  return "unknown";
}

bool isa_available(Isa isa) noexcept {
  switch (isa) {
    case Isa::kScalar: return true;
    case Isa::kAvx2: {
      static const bool has = cpu_has_avx2();
      return has;
    }
  }
  return false;
}

Isa best_isa() noexcept { return isa_available(Isa::kAvx2) ? Isa::kAvx2 : Isa::kScalar; }

Isa active_isa() noexcept { return current().load(std::memory_order_relaxed); }

void set_active_isa(Isa isa) {
  if (!isa_available(isa)) {
    throw ConfigError(std::string("kernel ISA not available on this build/CPU: ") + isa_name(isa));
  }
  current().store(isa, std::memory_order_relaxed);
}

const KernelTable& kernels_for(Isa isa) {
#if defined(AKIRA_KIT_HAVE_AVX2)
  if (isa == Isa::kAvx2 && isa_available(Isa::kAvx2)) return kAvx2Table;
#endif
  (void)isa;
  return kScalarTable;
}

}  // namespace akira::kernels
