#include "rlnc/oracle_kernels.hpp"

namespace rlnc::kernels {

bool row_correctable(std::uint32_t mask, unsigned k, unsigned n) {
    const std::uint32_t row = (n >= 32) ? ~0u : ((1u << n) - 1);
    for (unsigned r = 0; r < k; ++r)
        if ((mask & (row << (r * n))) == 0) return true;
    return false;
}

bool cec_family_member(std::uint32_t mask, unsigned k, unsigned m, std::uint32_t nonzero_blocks) {
    // column c of block b occupies bits {r*(m*k) + b*k + c : r < k}
    const unsigned n = m * k;
    bool have_untouched_nonzero = false;
    for (unsigned b = 0; b < m; ++b) {
        std::uint32_t block_bits = 0;
        bool zero_col = false;
        for (unsigned c = 0; c < k; ++c) {
            std::uint32_t col = 0;
            for (unsigned r = 0; r < k; ++r) col |= 1u << (r * n + b * k + c);
            block_bits |= col;
            if ((mask & col) == 0) zero_col = true;
        }
        if (!zero_col) return false; // block exceeds the k-1 column budget
        if ((mask & block_bits) == 0 && (nonzero_blocks >> b & 1))
            have_untouched_nonzero = true;
    }
    return have_untouched_nonzero;
}

namespace detail {

std::uint64_t count_row_correctable_scalar(unsigned k, unsigned n, std::uint64_t begin,
                                           std::uint64_t end) {
    const std::uint32_t row = (n >= 32) ? ~0u : ((1u << n) - 1);
    std::uint32_t row_masks[32];
    for (unsigned r = 0; r < k; ++r) row_masks[r] = row << (r * n);
    std::uint64_t count = 0;
    for (std::uint64_t v = begin; v < end; ++v) {
        const std::uint32_t mask = static_cast<std::uint32_t>(v);
        for (unsigned r = 0; r < k; ++r) {
            if ((mask & row_masks[r]) == 0) {
                ++count;
                break;
            }
        }
    }
    return count;
}

std::uint64_t count_cec_family_scalar(unsigned k, unsigned m, std::uint32_t nonzero_blocks,
                                      std::uint64_t begin, std::uint64_t end) {
    const unsigned n = m * k;
    std::uint32_t col_masks[32][32];
    std::uint32_t block_masks[32];
    for (unsigned b = 0; b < m; ++b) {
        block_masks[b] = 0;
        for (unsigned c = 0; c < k; ++c) {
            std::uint32_t col = 0;
            for (unsigned r = 0; r < k; ++r) col |= 1u << (r * n + b * k + c);
            col_masks[b][c] = col;
            block_masks[b] |= col;
        }
    }
    std::uint64_t count = 0;
    for (std::uint64_t v = begin; v < end; ++v) {
        const std::uint32_t mask = static_cast<std::uint32_t>(v);
        bool every_block_ok = true;
        bool untouched_nonzero = false;
        for (unsigned b = 0; b < m && every_block_ok; ++b) {
            bool zero_col = false;
            for (unsigned c = 0; c < k; ++c)
                if ((mask & col_masks[b][c]) == 0) { zero_col = true; break; }
            every_block_ok = zero_col;
            if ((mask & block_masks[b]) == 0 && (nonzero_blocks >> b & 1))
                untouched_nonzero = true;
        }
        if (every_block_ok && untouched_nonzero) ++count;
    }
    return count;
}

} // namespace detail

} // namespace rlnc::kernels
