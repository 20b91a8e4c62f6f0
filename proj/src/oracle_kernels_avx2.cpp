// AVX2 variants of the pattern-classification kernels: eight 32-bit masks
// per iteration, consecutive integers generated in-register. Compiled with
// -mavx2 and reached only after a runtime CPU check.

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include "rlnc/oracle_kernels.hpp"

namespace rlnc::kernels::detail {

namespace {

inline std::uint64_t hits_in_lanes(__m256i flags) {
    // flags lanes are all-ones (hit) or zero
    return static_cast<unsigned>(__builtin_popcount(
        static_cast<unsigned>(_mm256_movemask_ps(_mm256_castsi256_ps(flags)))));
}

} // namespace

std::uint64_t count_row_correctable_avx2(unsigned k, unsigned n, std::uint64_t begin,
                                         std::uint64_t end) {
    const std::uint32_t row = (n >= 32) ? ~0u : ((1u << n) - 1);
    __m256i row_masks[32];
    for (unsigned r = 0; r < k; ++r) row_masks[r] = _mm256_set1_epi32(static_cast<int>(row << (r * n)));
    const __m256i zero = _mm256_setzero_si256();
    const __m256i step = _mm256_set1_epi32(8);

    std::uint64_t count = 0;
    std::uint64_t v = begin;
    if (end - v >= 8) {
        __m256i lanes = _mm256_add_epi32(_mm256_set1_epi32(static_cast<int>(v)),
                                         _mm256_setr_epi32(0, 1, 2, 3, 4, 5, 6, 7));
        for (; v + 8 <= end; v += 8) {
            __m256i hit = zero;
            for (unsigned r = 0; r < k; ++r) {
                __m256i masked = _mm256_and_si256(lanes, row_masks[r]);
                hit = _mm256_or_si256(hit, _mm256_cmpeq_epi32(masked, zero));
            }
            count += hits_in_lanes(hit);
            lanes = _mm256_add_epi32(lanes, step);
        }
    }
    if (v < end) count += count_row_correctable_scalar(k, n, v, end);
    return count;
}

std::uint64_t count_cec_family_avx2(unsigned k, unsigned m, std::uint32_t nonzero_blocks,
                                    std::uint64_t begin, std::uint64_t end) {
    const unsigned n = m * k;
    __m256i col_masks[32][32];
    __m256i block_masks[32];
    for (unsigned b = 0; b < m; ++b) {
        std::uint32_t block = 0;
        for (unsigned c = 0; c < k; ++c) {
            std::uint32_t col = 0;
            for (unsigned r = 0; r < k; ++r) col |= 1u << (r * n + b * k + c);
            col_masks[b][c] = _mm256_set1_epi32(static_cast<int>(col));
            block |= col;
        }
        block_masks[b] = _mm256_set1_epi32(static_cast<int>(block));
    }
    const __m256i zero = _mm256_setzero_si256();
    const __m256i ones = _mm256_set1_epi32(-1);
    const __m256i step = _mm256_set1_epi32(8);

    std::uint64_t count = 0;
    std::uint64_t v = begin;
    if (end - v >= 8) {
        __m256i lanes = _mm256_add_epi32(_mm256_set1_epi32(static_cast<int>(v)),
                                         _mm256_setr_epi32(0, 1, 2, 3, 4, 5, 6, 7));
        for (; v + 8 <= end; v += 8) {
            __m256i all_blocks_ok = ones;
            __m256i untouched_nonzero = zero;
            for (unsigned b = 0; b < m; ++b) {
                __m256i zero_col = zero;
                for (unsigned c = 0; c < k; ++c) {
                    __m256i masked = _mm256_and_si256(lanes, col_masks[b][c]);
                    zero_col = _mm256_or_si256(zero_col, _mm256_cmpeq_epi32(masked, zero));
                }
                all_blocks_ok = _mm256_and_si256(all_blocks_ok, zero_col);
                if (nonzero_blocks >> b & 1) {
                    __m256i blk = _mm256_and_si256(lanes, block_masks[b]);
                    untouched_nonzero =
                        _mm256_or_si256(untouched_nonzero, _mm256_cmpeq_epi32(blk, zero));
                }
            }
            count += hits_in_lanes(_mm256_and_si256(all_blocks_ok, untouched_nonzero));
            lanes = _mm256_add_epi32(lanes, step);
        }
    }
    if (v < end) count += count_cec_family_scalar(k, m, nonzero_blocks, v, end);
    return count;
}

} // namespace rlnc::kernels::detail

#endif // x86_64
