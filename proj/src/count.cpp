#include "rlnc/count.hpp"

#include <sstream>

#include "rlnc/gf.hpp"

namespace rlnc {

namespace mp = boost::multiprecision;

BigInt big_pow(const BigInt& base, unsigned e) {
    BigInt r = 1, b = base;
    while (e) {
        if (e & 1) r *= b;
        b *= b;
        e >>= 1;
    }
    return r;
}

BigInt binomial(unsigned n, unsigned k) {
    if (k > n) return 0;
    k = std::min(k, n - k);
    BigInt r = 1;
    for (unsigned i = 1; i <= k; ++i) {
        r *= n - k + i;
        r /= i; // exact at every step
    }
    return r;
}

BigInt gaussian_binomial(unsigned n, unsigned k, unsigned q) {
    if (k > n) return 0;
    BigInt num = 1, den = 1;
    for (unsigned i = 0; i < k; ++i) {
        num *= big_pow(q, n - i) - 1;
        den *= big_pow(q, k - i) - 1;
    }
    BigInt quot, rem;
    mp::divide_qr(num, den, quot, rem);
    if (rem != 0) throw Error("gaussian binomial is not integral (bug)");
    return quot;
}

BigInt round_nearest(const BigRat& x) {
    BigInt num = mp::numerator(x), den = mp::denominator(x); // den > 0 canonical
    BigInt q, r;
    mp::divide_qr(num, den, q, r);
    if (r == 0) return q;
    BigInt abs_r = r < 0 ? BigInt(-r) : r;
    if (2 * abs_r >= den) q += (num < 0 ? -1 : 1); // half away from zero
    return q;
}

BigFloat log10_rational(const BigRat& x) {
    if (x <= 0) throw Error("log10 of a non-positive value");
    BigFloat num(mp::numerator(x));
    BigFloat den(mp::denominator(x));
    return log10(num) - log10(den);
}

BigInt rec_count(unsigned k, unsigned n) {
    if (k < 1 || k > n) throw ConfigError("rec_count needs 1 <= k <= n");
    return big_pow(2, k * n) - big_pow(big_pow(2, n) - 1, k);
}

BigInt cec_block_count(unsigned k) {
    return big_pow(2, k * k) - big_pow(big_pow(2, k) - 1, k);
}

BigInt cec_block_count_deletions(unsigned k, unsigned r) {
    if (r >= k) throw ConfigError("deletion count needs r < k");
    BigInt base = big_pow(2, k - r) - 1;
    BigInt sum = 0;
    for (unsigned j = 0; j + r + 1 <= k; ++j) sum += binomial(k, j) * big_pow(base, j);
    return sum;
}

namespace {

CecCounts cec_counts_from_block(unsigned q, unsigned k, unsigned m, unsigned ell, BigInt n_block) {
    if (ell >= m) throw ConfigError("ell must be < m");
    const unsigned n = m * k;
    const BigInt& nb = n_block;

    // e_ell = N^{m-ell-1} (N^{ell+1} - (N-1)^{ell+1}), integral by construction
    BigInt e_ell = big_pow(nb, m - ell - 1) * (big_pow(nb, ell + 1) - big_pow(nb - 1, ell + 1));

    // e_avg = N^m/(q^n-1) * (q^n - [ (q^k-1)(N-1)/N + 1 ]^m )
    //       = (q^n N^m - ((q^k-1)(N-1) + N)^m) / (q^n - 1)
    BigInt qn = big_pow(q, n);
    BigInt inner = (big_pow(q, k) - 1) * (nb - 1) + nb;
    BigRat e_avg(qn * big_pow(nb, m) - big_pow(inner, m), qn - 1);

    return {std::move(n_block), std::move(e_ell), std::move(e_avg)};
}

} // namespace

CecCounts cec_counts(unsigned q, unsigned k, unsigned m, unsigned ell) {
    if (!is_prime_power(q)) throw ConfigError("q must be a prime power");
    return cec_counts_from_block(q, k, m, ell, cec_block_count(k));
}

CecCounts cec_counts_deletions(unsigned q, unsigned k, unsigned m, unsigned r, unsigned ell) {
    if (!is_prime_power(q)) throw ConfigError("q must be a prime power");
    return cec_counts_from_block(q, k, m, ell, cec_block_count_deletions(k, r));
}

HybridCounts hybrid_counts(unsigned q, unsigned n, unsigned n_prime, unsigned k, unsigned r) {
    if (!(k < n_prime && n_prime < n)) throw ConfigError("hybrid counts need k < n' < n");
    if (r >= k) throw ConfigError("hybrid counts need r < k");
    if (!is_prime_power(q) || q < n) throw ConfigError("hybrid counts need a prime power q >= n");
    auto sum_for = [&](unsigned kk) {
        BigInt base = big_pow(2, kk) - 1;
        BigInt s = 0;
        for (unsigned j = 0; j <= n - n_prime; ++j) s += binomial(n, j) * big_pow(base, j);
        return s;
    };
    return {sum_for(k), sum_for(k - r)};
}

namespace {

BigFloat log_big(const BigInt& v) { return log(BigFloat(v)); }

} // namespace

RateValue spread_rate(unsigned q, unsigned k, unsigned n) {
    if (k == 0 || n % k != 0 || n <= k) throw ConfigError("spread rate needs k | n, n > k");
    BigInt size = (big_pow(q, n) - 1) / (big_pow(q, k) - 1);
    BigFloat rate = log_big(size) / (log(BigFloat(q)) * n * k);
    std::ostringstream ex;
    ex << "log_" << q << "((" << q << "^" << n << "-1)/(" << q << "^" << k << "-1))/(" << n << "*" << k << ")";
    return {rate, ex.str()};
}

RateValue hybrid_rate(unsigned q, unsigned n, unsigned n_prime, unsigned k) {
    if (!(k < n_prime && n_prime < n)) throw ConfigError("hybrid rate needs k < n' < n");
    BigInt size = gaussian_binomial(n_prime, k, q);
    BigFloat rate = log_big(size) / (log(BigFloat(q)) * n * k);
    std::ostringstream ex;
    ex << "log_" << q << "([" << n_prime << " choose " << k << "]_" << q << ")/(" << n << "*" << k << ")";
    return {rate, ex.str()};
}

RateValue hybrid_rate_deletions(unsigned n, unsigned n_prime, unsigned k, unsigned r) {
    if (!(k < n_prime && n_prime < n)) throw ConfigError("hybrid rate needs k < n' < n");
    if (r >= k || r >= n_prime - k)
        throw ConfigError("deletion-tolerant hybrid rate needs r < min(k, n'-k)");
    BigRat rate;
    std::ostringstream ex;
    if (n_prime - k >= k) {
        rate = BigRat(BigInt(n_prime - k) * (k - r), BigInt(n) * k);
        ex << "(" << n_prime << "-" << k << ")*(" << k << "-" << r << ")/(" << n << "*" << k << ")";
    } else {
        rate = BigRat(BigInt(n_prime - k - r), n);
        ex << "(" << n_prime << "-" << k << "-" << r << ")/" << n;
    }
    return {BigFloat(mp::numerator(rate)) / BigFloat(mp::denominator(rate)), ex.str()};
}

NPrimeChoice equal_rate_n_prime(unsigned n, unsigned k) {
    if (k == 0 || n % k != 0) throw ConfigError("equal-rate n' needs k | n");
    BigRat exact(BigInt(n - k) + BigInt(k) * k, k); // (n-k)/k + k
    BigInt rounded = round_nearest(exact);
    return {static_cast<unsigned>(rounded), exact};
}

NPrimeChoice equal_rate_n_prime_deletions(unsigned n, unsigned k, unsigned r) {
    if (k == 0 || r >= k) throw ConfigError("equal-rate n' needs r < k");
    BigRat exact;
    if (n >= k * (k - r + 1))
        exact = BigRat(BigInt(n - k) + BigInt(k) * (k - r), k - r); // (n-k)/(k-r) + k
    else
        exact = BigRat(BigInt(n - k) + BigInt(k) * k + BigInt(r) * k, k); // (n-k)/k + k + r
    BigInt rounded = round_nearest(exact);
    return {static_cast<unsigned>(rounded), exact};
}

bool rec_cec_ratio_bound_holds(unsigned q, unsigned k, unsigned m) {
    const unsigned n = m * k;
    BigRat lhs(rec_count(k, n), 1);
    CecCounts c = cec_counts(q, k, m, 0);
    BigRat ratio = lhs / c.e_avg;
    BigRat bound = BigRat(k) * c.n_block *
                   BigRat(big_pow(big_pow(2, (k - 1) * k), m), big_pow(c.n_block, m));
    return ratio <= bound;
}

BigRat eavg_over_limit_form(unsigned q, unsigned k, unsigned m) {
    CecCounts c = cec_counts(q, k, m, 0);
    return c.e_avg / BigRat(BigInt(m) * big_pow(c.n_block, m - 1), 1);
}

RatioLimitReport ratio_and_limit_checks(unsigned q, const std::vector<unsigned>& ks,
                                        const std::vector<unsigned>& ms) {
    RatioLimitReport rep;
    for (unsigned k : ks) {
        for (unsigned m : ms) {
            if (!rec_cec_ratio_bound_holds(q, k, m)) {
                rep.ratio_bound_ok = false;
                rep.failures.push_back("ratio bound fails at k=" + std::to_string(k) +
                                       ", m=" + std::to_string(m));
            }
            const unsigned n = m * k;
            BigInt lo = big_pow(2, (k - 1) * n), r = rec_count(k, n);
            if (!(lo < r && r < BigInt(k) * lo)) {
                rep.rec_bounds_ok = false;
                rep.failures.push_back("REC count bounds fail at k=" + std::to_string(k) +
                                       ", m=" + std::to_string(m));
            }
        }
    }
    for (unsigned m : ms) {
        BigRat prev;
        bool have_prev = false;
        for (unsigned k = 2; k <= 6; ++k) {
            BigRat dev = eavg_over_limit_form(q, k, m) - 1;
            if (dev < 0) dev = -dev;
            if (have_prev && !(dev < prev)) {
                rep.limit_monotone_ok = false;
                rep.failures.push_back("|e_avg/(mN^{m-1}) - 1| not decreasing at k=" +
                                       std::to_string(k) + ", m=" + std::to_string(m));
            }
            prev = dev;
            have_prev = true;
        }
    }
    return rep;
}

std::vector<ComparisonRow> comparison_table(unsigned delta) {
    if (delta < 1 || delta > 2) throw ConfigError("delta must be 1 or 2");
    std::vector<ComparisonRow> rows;
    for (unsigned n = 6; n <= 14; n += 2) {
        const unsigned k = 2, m = n / 2, np = n / 2 + delta;
        unsigned qh = smallest_prime_power_at_least(n);
        CecCounts c = cec_counts(2, k, m, 0);
        HybridCounts h = hybrid_counts(qh, n, np, k, 0);
        rows.push_back({n, np, qh, spread_rate(2, k, n), hybrid_rate(qh, n, np, k),
                        c.e_avg, round_nearest(c.e_avg), h.e_h});
    }
    return rows;
}

std::vector<DeletionComparisonRow> deletions_table() {
    const unsigned k = 3, r = 1;
    const std::vector<std::pair<unsigned, unsigned>> pairs = {
        {9, 6}, {12, 7}, {12, 8}, {15, 9}, {18, 10}, {18, 11}};
    std::vector<DeletionComparisonRow> rows;
    unsigned last_n = 0;
    for (auto [n, np] : pairs) {
        unsigned qh = smallest_prime_power_at_least(n);
        CecCounts c = cec_counts_deletions(2, k, n / k, r, 0);
        HybridCounts h = hybrid_counts(qh, n, np, k, r);
        rows.push_back({n, np, qh, n != last_n, spread_rate(2, k, n),
                        hybrid_rate_deletions(n, np, k, r), c.e_avg, round_nearest(c.e_avg),
                        h.e_h_r});
        last_n = n;
    }
    return rows;
}

std::vector<ProportionRow> hybrid_spread_proportions() {
    const unsigned q = 29, k = 10, n = 25, np = 13;
    std::vector<ProportionRow> rows;

    RateValue rh = hybrid_rate(q, n, np, k);
    HybridCounts h = hybrid_counts(q, n, np, k, 0);
    rows.push_back({"hybrid", k, n, np, rh,
                    log10_rational(BigRat(h.e_h, big_pow(2, k * n)))});

    for (unsigned kt = 6; kt <= 10; ++kt) {
        // smallest multiple of kt whose spread rate beats the hybrid's; the
        // asymptotic rate is 1/kt, so give up when that cannot win
        if (BigFloat(1) / kt <= rh.value) continue;
        for (unsigned m = 2; m <= 1000; ++m) {
            unsigned nt = m * kt;
            RateValue rs = spread_rate(q, kt, nt);
            if (rs.value > rh.value) {
                CecCounts c = cec_counts(q, kt, m, 0);
                rows.push_back({"spread", kt, nt, 0, rs,
                                log10_rational(c.e_avg / BigRat(big_pow(2, kt * nt), 1))});
                break;
            }
        }
    }
    return rows;
}

std::vector<CountsRow> counts_table(unsigned k, unsigned max_n) {
    std::vector<CountsRow> rows;
    for (unsigned m = 1; m * k <= max_n; ++m) {
        const unsigned n = m * k;
        CecCounts c = cec_counts(2, k, m, 0);
        rows.push_back({k, n, rec_count(k, n), c.e_avg, round_nearest(c.e_avg)});
    }
    return rows;
}

} // namespace rlnc
