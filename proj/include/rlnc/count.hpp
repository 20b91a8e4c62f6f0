#pragma once

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <vector>

#include "rlnc/errors.hpp"

namespace rlnc {

// Every counting formula is evaluated in exact arbitrary-precision
// arithmetic; floating point appears only at presentation time.
using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;
using BigFloat = boost::multiprecision::cpp_bin_float_50;

BigInt big_pow(const BigInt& base, unsigned e);
BigInt binomial(unsigned n, unsigned k);
BigInt gaussian_binomial(unsigned n, unsigned k, unsigned q);

// Nearest integer, half away from zero.
BigInt round_nearest(const BigRat& x);
BigFloat log10_rational(const BigRat& x);

// High-precision rate with the exact expression it came from.
struct RateValue {
    BigFloat value;
    std::string expression;
    double approx() const { return static_cast<double>(value); }
};

// REC: number of correctable erasure patterns of a spread, 2^{kn} - (2^n-1)^k.
BigInt rec_count(unsigned k, unsigned n);

// CEC per-block count N = 2^{k^2} - (2^k-1)^k, and the deletion variant
// N_r = sum_{j<=k-r-1} C(k,j) (2^{k-r}-1)^j (N_0 == N).
BigInt cec_block_count(unsigned k);
BigInt cec_block_count_deletions(unsigned k, unsigned r);

struct CecCounts {
    BigInt n_block; // N (or N_r)
    BigInt e_ell;   // patterns decodable for a codeword with ell nonzero trailing blocks
    BigRat e_avg;   // code average, exact rational
};

CecCounts cec_counts(unsigned q, unsigned k, unsigned m, unsigned ell);
CecCounts cec_counts_deletions(unsigned q, unsigned k, unsigned m, unsigned r, unsigned ell);

struct HybridCounts {
    BigInt e_h;   // correctable patterns, no deletions
    BigInt e_h_r; // correctable (k-r) x n patterns after r deletions
};

HybridCounts hybrid_counts(unsigned q, unsigned n, unsigned n_prime, unsigned k, unsigned r);

RateValue spread_rate(unsigned q, unsigned k, unsigned n);
RateValue hybrid_rate(unsigned q, unsigned n, unsigned n_prime, unsigned k);
// Rate of a hybrid code built on a lifted maximum-rank-distance subspace
// code surviving r deletions; exact piecewise rational.
RateValue hybrid_rate_deletions(unsigned n, unsigned n_prime, unsigned k, unsigned r);

// n' making hybrid and spread rates approximately equal.
struct NPrimeChoice {
    unsigned n_prime;
    BigRat exact; // value before rounding to an integer
};
NPrimeChoice equal_rate_n_prime(unsigned n, unsigned k);
NPrimeChoice equal_rate_n_prime_deletions(unsigned n, unsigned k, unsigned r);

// r(n,k)/e_avg <= k N (2^{(k-1)k}/N)^m, checked exactly in rationals.
bool rec_cec_ratio_bound_holds(unsigned q, unsigned k, unsigned m);
// e_avg / (m N^{m-1}), the quantity with limit 1 as k grows.
BigRat eavg_over_limit_form(unsigned q, unsigned k, unsigned m);

struct RatioLimitReport {
    bool ratio_bound_ok = true;              // over the k/m grid
    bool limit_monotone_ok = true;           // |e_avg/(mN^{m-1}) - 1| strictly decreasing in k
    bool rec_bounds_ok = true;               // 2^{(k-1)n} < r(n,k) < k 2^{(k-1)n}
    std::vector<std::string> failures;
};
RatioLimitReport ratio_and_limit_checks(unsigned q, const std::vector<unsigned>& ks,
                                        const std::vector<unsigned>& ms);

// Table generators reproducing the published comparisons.
struct ComparisonRow {
    unsigned n, n_prime, q_hybrid;
    RateValue rate_spread, rate_hybrid;
    BigRat e_avg_exact;
    BigInt e_avg; // nearest-rounded
    BigInt e_h;
};
// k = 2, n in {6,...,14}, n' = n/2 + delta (delta 1 or 2), spread over F_2,
// hybrid over the smallest prime power >= n.
std::vector<ComparisonRow> comparison_table(unsigned delta);

struct DeletionComparisonRow {
    unsigned n, n_prime, q_hybrid;
    bool has_spread_cols; // spread columns printed once per n
    RateValue rate_spread, rate_hybrid;
    BigRat e_avg_exact;
    BigInt e_avg_r;
    BigInt e_h_r;
};
// k = 3, r = 1, the published (n, n') pairs.
std::vector<DeletionComparisonRow> deletions_table();

struct ProportionRow {
    std::string role; // "hybrid" or "spread"
    unsigned k, n, n_prime;
    RateValue rate;
    BigFloat log10_proportion; // log10(count / 2^{k n})
};
// Equal-rate comparison at q = 29: hybrid (k=10, n=25, n'=13) against the
// smallest spread of each dimension 6..10 whose rate exceeds the hybrid's.
std::vector<ProportionRow> hybrid_spread_proportions();

struct CountsRow {
    unsigned k, n;
    BigInt rec;
    BigRat cec_avg_exact;
    BigInt cec_avg; // nearest-rounded
};
// Data series behind the REC/CEC count comparison, q = 2.
std::vector<CountsRow> counts_table(unsigned k, unsigned max_n);

} // namespace rlnc
