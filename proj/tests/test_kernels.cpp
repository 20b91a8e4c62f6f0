#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "rlnc/count.hpp"
#include "rlnc/oracle_kernels.hpp"

using namespace rlnc;
using namespace rlnc::kernels;

namespace {

// mask-at-a-time reference, independent of the counting kernels
std::uint64_t brute_row_count(unsigned k, unsigned n, std::uint64_t begin, std::uint64_t end) {
    std::uint64_t c = 0;
    for (std::uint64_t v = begin; v < end; ++v) {
        bool hit = false;
        for (unsigned r = 0; r < k && !hit; ++r) {
            bool row_zero = true;
            for (unsigned j = 0; j < n; ++j)
                if (v >> (r * n + j) & 1) { row_zero = false; break; }
            hit = row_zero;
        }
        c += hit;
    }
    return c;
}

} // namespace

TEST_CASE("row predicate") {
    // k=2, n=3: bit layout row-major
    CHECK(row_correctable(0b000000, 2, 3));
    CHECK(row_correctable(0b000101, 2, 3));  // second row untouched
    CHECK(row_correctable(0b101000, 2, 3));  // first row untouched
    CHECK_FALSE(row_correctable(0b001001, 2, 3));
    CHECK_FALSE(row_correctable(0b111111, 2, 3));
}

TEST_CASE("scalar row kernel equals brute force") {
    for (auto [k, n] : {std::pair{1u, 4u}, {2u, 4u}, {2u, 6u}, {3u, 4u}, {4u, 5u}}) {
        std::uint64_t total = std::uint64_t(1) << (k * n);
        CHECK(detail::count_row_correctable_scalar(k, n, 0, total) == brute_row_count(k, n, 0, total));
    }
}

TEST_CASE("scalar row kernel equals the closed-form count") {
    for (auto [k, n] : {std::pair{1u, 4u}, {2u, 4u}, {2u, 6u}, {3u, 6u}, {2u, 8u}}) {
        std::uint64_t total = std::uint64_t(1) << (k * n);
        CHECK(BigInt(detail::count_row_correctable_scalar(k, n, 0, total)) == rec_count(k, n));
    }
}

TEST_CASE("avx2 row kernel matches scalar") {
    if (!avx2_supported()) {
        MESSAGE("AVX2 not available, dispatch covers scalar only");
        return;
    }
    for (auto [k, n] : {std::pair{1u, 4u}, {2u, 4u}, {2u, 6u}, {3u, 6u}, {2u, 8u}, {3u, 8u}}) {
        std::uint64_t total = std::uint64_t(1) << (k * n);
        CHECK(count_row_correctable(k, n, 0, total, Backend::Avx2) ==
              count_row_correctable(k, n, 0, total, Backend::Scalar));
        // unaligned subranges exercise the scalar tail
        for (std::uint64_t b : {std::uint64_t(1), total / 3, total / 2 + 5}) {
            std::uint64_t e = std::min(total, b + total / 3 + 7);
            CHECK(count_row_correctable(k, n, b, e, Backend::Avx2) ==
                  count_row_correctable(k, n, b, e, Backend::Scalar));
        }
    }
}

TEST_CASE("cec family predicate and kernel") {
    // k=2, m=2 (n=4): block 0 = cols {0,1}, block 1 = cols {2,3}
    // mask bits: r*4 + c
    CHECK(cec_family_member(0, 2, 2, 0b11));
    // erase column 0 entirely: block 0 keeps column 1 untouched, block 1 untouched
    std::uint32_t col0 = (1u << 0) | (1u << 4);
    CHECK(cec_family_member(col0, 2, 2, 0b11));
    // but if only block 0 is nonzero, there is no untouched nonzero block
    CHECK_FALSE(cec_family_member(col0, 2, 2, 0b01));
    CHECK(cec_family_member(col0, 2, 2, 0b10));
    // erase both columns of block 0: block 0 has no untouched column
    std::uint32_t block0 = col0 | (1u << 1) | (1u << 5);
    CHECK_FALSE(cec_family_member(block0, 2, 2, 0b11));

    SUBCASE("family size equals e_ell") {
        // popcount(nonzero_blocks) = ell + 1
        for (auto [k, m] : {std::pair{2u, 2u}, {2u, 3u}, {3u, 2u}}) {
            std::uint64_t total = std::uint64_t(1) << (k * k * m);
            for (std::uint32_t nz = 1; nz < (1u << m); ++nz) {
                unsigned ell = static_cast<unsigned>(__builtin_popcount(nz)) - 1;
                std::uint64_t family =
                    detail::count_cec_family_scalar(k, m, nz, 0, total);
                CHECK(BigInt(family) == cec_counts(2, k, m, ell).e_ell);
            }
        }
    }

    SUBCASE("avx2 matches scalar") {
        if (!avx2_supported()) return;
        for (auto [k, m] : {std::pair{2u, 2u}, {2u, 3u}, {3u, 2u}}) {
            std::uint64_t total = std::uint64_t(1) << (k * k * m);
            for (std::uint32_t nz = 1; nz < (1u << m); ++nz) {
                CHECK(count_cec_family(k, m, nz, 0, total, Backend::Avx2) ==
                      count_cec_family(k, m, nz, 0, total, Backend::Scalar));
                CHECK(count_cec_family(k, m, nz, 3, total - 9, Backend::Avx2) ==
                      count_cec_family(k, m, nz, 3, total - 9, Backend::Scalar));
            }
        }
    }
}

TEST_CASE("kernel guards") {
    CHECK_THROWS_AS(count_row_correctable(5, 5, 0, 1), BudgetExceededError);
    CHECK_THROWS_AS(count_row_correctable(2, 4, 0, 1u << 10), BudgetExceededError);
    CHECK(count_row_correctable(2, 4, 7, 7) == 0);
    CHECK(backend_name(resolve(Backend::Auto)) != std::string("auto"));
}
