// Backend resolution and dispatch for the pattern kernels. The scalar
// reference is always available; AVX2 is picked at runtime when both the
// build and the CPU support it.

#include "rlnc/oracle_kernels.hpp"

namespace rlnc::kernels {

bool avx2_supported() {
#if defined(RLNC_KERNELS_AVX2) && (defined(__x86_64__) || defined(_M_X64))
    return __builtin_cpu_supports("avx2");
#else
    return false;
#endif
}

Backend resolve(Backend b) {
    if (b == Backend::Auto) return avx2_supported() ? Backend::Avx2 : Backend::Scalar;
    if (b == Backend::Avx2 && !avx2_supported())
        throw ConfigError("AVX2 backend requested but not available");
    return b;
}

const char* backend_name(Backend b) {
    switch (b) {
    case Backend::Auto: return "auto";
    case Backend::Scalar: return "scalar";
    case Backend::Avx2: return "avx2";
    }
    return "?";
}

namespace {

void check_geometry(unsigned k, unsigned n) {
    if (k == 0 || n == 0 || k * n > 24)
        throw BudgetExceededError("pattern kernels handle k*n <= 24");
}

} // namespace

std::uint64_t count_row_correctable(unsigned k, unsigned n, std::uint64_t begin,
                                    std::uint64_t end, Backend b) {
    check_geometry(k, n);
    if (end > (std::uint64_t(1) << (k * n))) throw BudgetExceededError("mask range out of bounds");
    if (begin >= end) return 0;
    switch (resolve(b)) {
#if defined(RLNC_KERNELS_AVX2) && (defined(__x86_64__) || defined(_M_X64))
    case Backend::Avx2:
        return detail::count_row_correctable_avx2(k, n, begin, end);
#endif
    default:
        return detail::count_row_correctable_scalar(k, n, begin, end);
    }
}

std::uint64_t count_cec_family(unsigned k, unsigned m, std::uint32_t nonzero_blocks,
                               std::uint64_t begin, std::uint64_t end, Backend b) {
    check_geometry(k, m * k);
    if (end > (std::uint64_t(1) << (k * m * k))) throw BudgetExceededError("mask range out of bounds");
    if (begin >= end) return 0;
    switch (resolve(b)) {
#if defined(RLNC_KERNELS_AVX2) && (defined(__x86_64__) || defined(_M_X64))
    case Backend::Avx2:
        return detail::count_cec_family_avx2(k, m, nonzero_blocks, begin, end);
#endif
    default:
        return detail::count_cec_family_scalar(k, m, nonzero_blocks, begin, end);
    }
}

} // namespace rlnc::kernels
