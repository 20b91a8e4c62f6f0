#include "rlnc/oracle.hpp"

#include <future>
#include <map>
#include <thread>

#include "rlnc/decode.hpp"

namespace rlnc {

BigInt oracle_rec_count(unsigned q, unsigned k, unsigned n, std::uint64_t budget,
                        kernels::Backend backend) {
    if (!is_prime_power(q)) throw ConfigError("q must be a prime power");
    if (k < 1 || k > n) throw ConfigError("oracle_rec_count needs 1 <= k <= n");
    if (k * n > 24) throw BudgetExceededError("oracle enumeration is limited to k*n <= 24");
    const std::uint64_t total = std::uint64_t(1) << (k * n);
    if (total > budget)
        throw BudgetExceededError("2^(k*n) = " + std::to_string(total) +
                                  " masks exceed the budget " + std::to_string(budget));

    unsigned workers = std::max(1u, std::thread::hardware_concurrency());
    std::uint64_t chunk =
        std::max<std::uint64_t>(std::uint64_t(1) << 16, total / (std::uint64_t(workers) * 4));
    std::vector<std::future<std::uint64_t>> parts;
    for (std::uint64_t begin = 0; begin < total; begin += chunk) {
        std::uint64_t end = std::min(total, begin + chunk);
        parts.push_back(std::async(std::launch::async, [=] {
            return kernels::count_row_correctable(k, n, begin, end, backend);
        }));
    }
    std::uint64_t count = 0;
    for (auto& p : parts) count += p.get();
    return BigInt(count);
}

namespace {

// Unerased part of gamma(A*U + E) as a byte key; with the erased columns
// fixed by E, equality of keys is equality of observations.
std::string observation_key(const MatFq& au, const std::vector<unsigned>& clear_cols) {
    std::string key;
    key.reserve(clear_cols.size() * au.rows() * 2);
    for (unsigned c : clear_cols)
        for (unsigned r = 0; r < au.rows(); ++r) {
            felem v = au.at(r, c);
            key.push_back(static_cast<char>(v & 0xff));
            key.push_back(static_cast<char>(v >> 8));
        }
    return key;
}

std::vector<unsigned> clear_columns(const ErasurePattern& e) {
    std::vector<unsigned> cols;
    for (unsigned c = 0; c < e.cols(); ++c)
        if (!e.col_affected(c)) cols.push_back(c);
    return cols;
}

struct CodeTables {
    std::vector<GrassmannPoint> points;
    std::vector<MatFq> mats;     // admissible channel matrices
    std::vector<MatFq> products; // products[ci * mats.size() + ai] = mats[ai] * encode(points[ci])
    std::size_t mat_count = 0;
};

CodeTables build_tables(const SpreadCode& code, unsigned deletions, std::uint64_t budget) {
    CodeTables t;
    t.points = code.enumerate_points(budget);
    t.mats = deletions == 0
                 ? general_linear_group(code.field_ptr(), code.k(), budget)
                 : matrices_of_rank(code.field_ptr(), code.k(), code.k() - deletions, budget);
    t.mat_count = t.mats.size();
    if (t.points.size() * t.mat_count > budget)
        throw BudgetExceededError("codeword x matrix enumeration exceeds the budget");
    t.products.reserve(t.points.size() * t.mat_count);
    for (const auto& p : t.points) {
        MatFq u = code.encode(p);
        for (const auto& a : t.mats) t.products.push_back(a * u);
    }
    return t;
}

// For one pattern: which codewords own which observation keys. owner ==
// npos marks a key reachable from two different codewords.
constexpr std::size_t kShared = ~std::size_t(0);

std::map<std::string, std::pair<std::size_t, std::size_t>> key_owners(
    const CodeTables& t, const std::vector<unsigned>& clear_cols) {
    std::map<std::string, std::pair<std::size_t, std::size_t>> owners; // key -> (codeword, product idx)
    for (std::size_t ci = 0; ci < t.points.size(); ++ci)
        for (std::size_t ai = 0; ai < t.mat_count; ++ai) {
            std::string key = observation_key(t.products[ci * t.mat_count + ai], clear_cols);
            auto [it, fresh] = owners.emplace(key, std::make_pair(ci, ci * t.mat_count + ai));
            if (!fresh && it->second.first != ci) it->second.first = kShared;
        }
    return owners;
}

} // namespace

OracleVerdict oracle_cec_correctable(const SpreadCode& code, const GrassmannPoint& u,
                                     const ErasurePattern& e, unsigned deletions,
                                     std::uint64_t budget) {
    if (e.rows() != code.k() || e.cols() != code.n())
        throw DimensionError("pattern shape does not match the code");
    CodeTables t = build_tables(code, deletions, budget);
    std::size_t target = t.points.size();
    for (std::size_t i = 0; i < t.points.size(); ++i)
        if (t.points[i] == u) { target = i; break; }
    if (target == t.points.size()) throw ConfigError("point is not a codeword of this code");

    std::vector<unsigned> cols = clear_columns(e);
    // keys reachable from the target, with the producing matrix index
    std::map<std::string, std::size_t> mine;
    for (std::size_t ai = 0; ai < t.mat_count; ++ai)
        mine.emplace(observation_key(t.products[target * t.mat_count + ai], cols),
                     target * t.mat_count + ai);
    for (std::size_t ci = 0; ci < t.points.size(); ++ci) {
        if (ci == target) continue;
        for (std::size_t ai = 0; ai < t.mat_count; ++ai) {
            std::string key = observation_key(t.products[ci * t.mat_count + ai], cols);
            auto it = mine.find(key);
            if (it == mine.end()) continue;
            OracleWitness w{t.points[target], t.points[ci],
                            t.mats[it->second % t.mat_count], t.mats[ai]};
            return {false, std::move(w)};
        }
    }
    return {true, std::nullopt};
}

OracleVerdict oracle_cec_correctable(const SpreadCode& code, const MatFq& basis,
                                     const ErasurePattern& e, unsigned deletions,
                                     std::uint64_t budget) {
    Subspace want(basis);
    GrassmannPoint found = [&] {
        std::optional<GrassmannPoint> hit;
        code.for_each_codeword(
            [&](const GrassmannPoint& p, const CodewordMatrix& m) {
                if (!hit && Subspace(m) == want) hit = p;
            },
            budget);
        if (!hit) throw ConfigError("basis does not span a codeword of this code");
        return *hit;
    }();
    return oracle_cec_correctable(code, found, e, deletions, budget);
}

CecCountReport oracle_cec_counts(const SpreadCode& code, std::uint64_t budget) {
    const unsigned k = code.k(), n = code.n();
    if (std::uint64_t(k) * n > 24)
        throw BudgetExceededError("oracle enumeration is limited to k*n <= 24");
    const std::uint64_t total = std::uint64_t(1) << (k * n);
    CodeTables t = build_tables(code, 0, budget);

    std::vector<std::uint64_t> counts(t.points.size(), 0);
    for (std::uint64_t bits = 0; bits < total; ++bits) {
        ErasurePattern e = ErasurePattern::from_bits(k, n, bits);
        std::vector<unsigned> cols = clear_columns(e);
        auto owners = key_owners(t, cols);
        // codeword ci is correctable iff none of its keys is shared
        std::vector<std::uint8_t> ok(t.points.size(), 1);
        for (const auto& [key, who] : owners)
            if (who.first == kShared)
                for (std::size_t ci = 0; ci < t.points.size(); ++ci) {
                    // a shared key disqualifies every codeword that can reach it
                    for (std::size_t ai = 0; ai < t.mat_count; ++ai)
                        if (observation_key(t.products[ci * t.mat_count + ai], cols) == key) {
                            ok[ci] = 0;
                            break;
                        }
                }
        for (std::size_t ci = 0; ci < t.points.size(); ++ci) counts[ci] += ok[ci];
    }

    CecCountReport rep;
    BigInt sum = 0;
    for (std::size_t ci = 0; ci < t.points.size(); ++ci) {
        rep.per_codeword.emplace_back(t.points[ci], counts[ci]);
        sum += counts[ci];
    }
    rep.average = BigRat(sum, BigInt(t.points.size()));
    return rep;
}

AgreementReport decoder_agreement_rec(const SpreadCode& code_pt, std::uint64_t budget) {
    if (code_pt.orientation() != Orientation::PT)
        throw ConfigError("REC agreement needs a transposed-orientation spread");
    const unsigned k = code_pt.k(), n = code_pt.n();
    if (std::uint64_t(k) * n > 24)
        throw BudgetExceededError("oracle enumeration is limited to k*n <= 24");
    const std::uint64_t total = std::uint64_t(1) << (k * n);
    const auto& gl = general_linear_group(code_pt.field_ptr(), k, budget);

    AgreementReport rep;
    code_pt.for_each_codeword(
        [&](const GrassmannPoint& u, const CodewordMatrix& um) {
            for (const MatFq& a : gl) {
                for (std::uint64_t bits = 0; bits < total; ++bits) {
                    ErasurePattern e = ErasurePattern::from_bits(k, n, bits);
                    bool family = kernels::row_correctable(static_cast<std::uint32_t>(bits), k, n);
                    ++rep.cases;
                    rep.family_cases += family;
                    MatFq obs = apply_rec(um, a, e);
                    try {
                        DecodeReport d = decode_rec(code_pt, obs);
                        if (d.point == u) ++rep.decoded;
                        else ++rep.wrong_decodes;
                        if (family && !(d.point == u)) ++rep.missed_decodes;
                    } catch (const UndecodableError&) {
                        ++rep.refusals;
                        if (family) ++rep.missed_decodes;
                    }
                }
            }
        },
        budget);
    return rep;
}

AgreementReport decoder_agreement_cec(const SpreadCode& code_p, std::uint64_t budget) {
    if (code_p.orientation() != Orientation::P)
        throw ConfigError("CEC agreement needs a plain-orientation spread");
    const unsigned k = code_p.k(), n = code_p.n(), m = code_p.m();
    if (std::uint64_t(k) * n > 24)
        throw BudgetExceededError("oracle enumeration is limited to k*n <= 24");
    const std::uint64_t total = std::uint64_t(1) << (k * n);
    CodeTables t = build_tables(code_p, 0, budget);
    const auto& gl = general_linear_group(code_p.field_ptr(), k, budget);

    // per-pattern correctability for every codeword, one pass
    std::vector<std::vector<std::uint8_t>> correctable(t.points.size(),
                                                       std::vector<std::uint8_t>(total, 0));
    for (std::uint64_t bits = 0; bits < total; ++bits) {
        ErasurePattern e = ErasurePattern::from_bits(k, n, bits);
        std::vector<unsigned> cols = clear_columns(e);
        auto owners = key_owners(t, cols);
        for (std::size_t ci = 0; ci < t.points.size(); ++ci) {
            bool ok = true;
            for (std::size_t ai = 0; ai < t.mat_count && ok; ++ai) {
                auto it = owners.find(observation_key(t.products[ci * t.mat_count + ai], cols));
                ok = it != owners.end() && it->second.first != kShared;
            }
            correctable[ci][bits] = ok;
        }
    }

    AgreementReport rep;
    for (std::size_t ci = 0; ci < t.points.size(); ++ci) {
        const GrassmannPoint& u = t.points[ci];
        MatFq um = code_p.encode(u);
        std::uint32_t nonzero_blocks = 0;
        for (unsigned b = 0; b < m; ++b)
            if (!u.at(b).is_zero()) nonzero_blocks |= 1u << b;
        for (const MatFq& a : gl) {
            for (std::uint64_t bits = 0; bits < total; ++bits) {
                ErasurePattern e = ErasurePattern::from_bits(k, n, bits);
                bool family =
                    kernels::cec_family_member(static_cast<std::uint32_t>(bits), k, m, nonzero_blocks);
                ++rep.cases;
                rep.family_cases += family;
                if (family && !correctable[ci][bits]) ++rep.family_uncorrectable;
                ErasableMatrix obs = apply_cec(um, a, e);
                try {
                    DecodeReport d = decode_cec(code_p, obs);
                    if (d.point == u) ++rep.decoded;
                    else ++rep.wrong_decodes;
                    if (family && !(d.point == u)) ++rep.missed_decodes;
                } catch (const UndecodableError&) {
                    ++rep.refusals;
                    if (family) ++rep.missed_decodes;
                }
            }
        }
    }
    return rep;
}

AgreementReport decoder_agreement_cec_deletions(const SpreadCode& code_pt, unsigned deletions,
                                                std::uint64_t trials, std::uint64_t seed) {
    if (code_pt.orientation() != Orientation::PT)
        throw ConfigError("deletion agreement needs a transposed-orientation spread");
    const unsigned k = code_pt.k(), m = code_pt.m();
    if (deletions >= k) throw ConfigError("deletions must be < k");
    const unsigned limit = k - deletions - 1;

    AgreementReport rep;
    for (std::uint64_t trial = 0; trial < trials; ++trial) {
        Rng rng = Rng::for_trial(seed, trial);
        GrassmannPoint u = code_pt.random_point(rng);
        MatFq um = code_pt.encode(u);
        MatFq a = random_matrix(code_pt.field_ptr(), k, k, k - deletions, rng);

        std::vector<unsigned> nonzero;
        for (unsigned b = 0; b < m; ++b)
            if (!u.at(b).is_zero()) nonzero.push_back(b);
        unsigned untouched = nonzero[rng.below(nonzero.size())];
        std::uint64_t capacity = std::uint64_t(m - 1) * limit * k;
        unsigned weight = static_cast<unsigned>(rng.below(capacity + 1));
        ErasurePattern e = sample_pattern(k, code_pt.n(), weight,
                                          Placement::per_block(limit, untouched), rng);

        ++rep.cases;
        ++rep.family_cases;
        try {
            DecodeReport d = decode_cec_with_deletions(code_pt, apply_cec(um, a, e));
            if (d.point == u) ++rep.decoded;
            else { ++rep.wrong_decodes; ++rep.missed_decodes; }
        } catch (const UndecodableError&) {
            ++rep.refusals;
            ++rep.missed_decodes;
        }
    }
    return rep;
}

} // namespace rlnc
