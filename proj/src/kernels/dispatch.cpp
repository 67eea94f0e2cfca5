#include <cstdlib>
#include <string_view>

#include "kernels_impl.hpp"

namespace kitten::simd {
namespace {

bool cpu_has_avx2_fma() {
#if defined(__x86_64__) || defined(__i386__)
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

const KernelTable& select() {
    const char* env = std::getenv("KITTEN_SIMD");
    const std::string_view want = env ? env : "auto";
    if (want == "scalar") return scalar_kernels();
    if (const KernelTable* v = avx2_kernels()) return *v;
    return scalar_kernels();
}

}  // namespace

const KernelTable* avx2_kernels() {
    static const KernelTable* table = cpu_has_avx2_fma() ? detail::avx2_table() : nullptr;
    return table;
}

const KernelTable& active() {
    static const KernelTable& table = select();
    return table;
}

}  // namespace kitten::simd
