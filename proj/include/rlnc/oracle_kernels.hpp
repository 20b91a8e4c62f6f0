#pragma once

#include <cstdint>
#include <string>

#include "rlnc/errors.hpp"

namespace rlnc::kernels {

// Erasure patterns are enumerated as kn-bit integers, bit r*n + c marking an
// erased cell. The classification loops below are the hot path of the
// exhaustive oracle; each exists as a scalar reference kernel and an AVX2
// variant selected at runtime, with equivalence enforced by tests.

enum class Backend { Auto, Scalar, Avx2 };

bool avx2_supported();
Backend resolve(Backend b); // Auto -> best available
const char* backend_name(Backend b);

// Masks in [begin, end) with at least one all-zero row (k rows of n bits):
// exactly the REC-correctable patterns.
std::uint64_t count_row_correctable(unsigned k, unsigned n, std::uint64_t begin,
                                    std::uint64_t end, Backend b = Backend::Auto);

// Masks in [begin, end) where every k-wide block of the m blocks keeps at
// least one untouched column and at least one block listed in
// nonzero_blocks (bit i = block i) is fully untouched: the per-codeword
// CEC-decodable family, whose size is e_ell.
std::uint64_t count_cec_family(unsigned k, unsigned m, std::uint32_t nonzero_blocks,
                               std::uint64_t begin, std::uint64_t end,
                               Backend b = Backend::Auto);

// Single-mask reference predicates shared by the counting kernels and the
// exhaustive decoder-agreement sweeps.
bool row_correctable(std::uint32_t mask, unsigned k, unsigned n);
bool cec_family_member(std::uint32_t mask, unsigned k, unsigned m, std::uint32_t nonzero_blocks);

namespace detail {
std::uint64_t count_row_correctable_scalar(unsigned k, unsigned n, std::uint64_t begin,
                                           std::uint64_t end);
std::uint64_t count_cec_family_scalar(unsigned k, unsigned m, std::uint32_t nonzero_blocks,
                                      std::uint64_t begin, std::uint64_t end);
#if defined(__x86_64__) || defined(_M_X64)
std::uint64_t count_row_correctable_avx2(unsigned k, unsigned n, std::uint64_t begin,
                                         std::uint64_t end);
std::uint64_t count_cec_family_avx2(unsigned k, unsigned m, std::uint32_t nonzero_blocks,
                                    std::uint64_t begin, std::uint64_t end);
#endif
} // namespace detail

} // namespace rlnc::kernels
