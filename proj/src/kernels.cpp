#include "zenosim/kernels.hpp"

namespace zenosim::kernels {

namespace {

const KernelTable& select() {
#if defined(__x86_64__) || defined(_M_X64)
    if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma")) {
        return avx2_kernels();
    }
#endif
    return scalar_kernels();
}

} // namespace

const KernelTable& active_kernels() {
    static const KernelTable& table = select();
    return table;
}

} // namespace zenosim::kernels
