#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "rlnc/decode.hpp"
#include "rlnc/oracle.hpp"

using namespace rlnc;

namespace {

auto f2 = BaseField::make(2);

SpreadCode make_spread(unsigned q, unsigned k, unsigned m, Orientation o,
                       const std::string& poly = "") {
    auto base = BaseField::make_order(q);
    auto ext = poly.empty() ? ExtField::make(base, k) : ExtField::make(parse_poly(base, poly));
    return SpreadCode(std::move(ext), m, o);
}

} // namespace

TEST_CASE("oracle_rec_count equals the closed form") {
    CHECK(oracle_rec_count(2, 2, 2, 16) == 7);
    CHECK(oracle_rec_count(2, 1, 4) == 1);
    CHECK(oracle_rec_count(2, 2, 4) == rec_count(2, 4));
    CHECK(oracle_rec_count(2, 2, 6) == rec_count(2, 6));
    CHECK(oracle_rec_count(2, 3, 6) == rec_count(3, 6));
    CHECK_THROWS_AS(oracle_rec_count(2, 4, 8), BudgetExceededError);
    CHECK_THROWS_AS(oracle_rec_count(2, 2, 6, 100), BudgetExceededError);
}

TEST_CASE("oracle_cec_correctable") {
    SpreadCode s = make_spread(2, 3, 2, Orientation::P, "x^3+x^2+1");
    const auto& ext = s.ext_ptr();
    GrassmannPoint u1({ext->one(), ext->alpha().pow(3)});
    GrassmannPoint u2({ext->one(), ext->alpha().pow(5)});

    SUBCASE("zero pattern is always correctable") {
        OracleVerdict v = oracle_cec_correctable(s, u1, ErasurePattern::zero(3, 6));
        CHECK(v.correctable);
        CHECK_FALSE(v.witness.has_value());
    }

    SUBCASE("the worked pattern is ambiguous, with a witness") {
        ErasurePattern e(3, 6);
        e.set(0, 1);
        e.set(0, 2);
        e.set(0, 5);
        OracleVerdict v = oracle_cec_correctable(s, u1, e);
        REQUIRE_FALSE(v.correctable);
        REQUIRE(v.witness.has_value());
        const OracleWitness& w = *v.witness;
        CHECK(w.u == u1);
        CHECK_FALSE(w.v == u1);
        // the witness channel matrices really produce identical observations
        CHECK(apply_cec(s.encode(w.u), w.a_u, e) == apply_cec(s.encode(w.v), w.a_v, e));
        // and u2 = (1, alpha^5) is among the colliding codewords for some witness
        OracleVerdict v2 = oracle_cec_correctable(s, u2, e);
        CHECK_FALSE(v2.correctable);
    }

    SUBCASE("same pattern, untouched second block, becomes decodable") {
        ErasurePattern e(3, 6);
        e.set(0, 1);
        e.set(0, 2);
        CHECK(oracle_cec_correctable(s, u1, e).correctable);
        CHECK(oracle_cec_correctable(s, u2, e).correctable);
    }

    SUBCASE("verdict is independent of the basis representative") {
        ErasurePattern e(3, 6);
        e.set(1, 2);
        Rng rng(12);
        OracleVerdict direct = oracle_cec_correctable(s, u1, e);
        for (int i = 0; i < 10; ++i) {
            MatFq t = random_full_rank(f2, 3, rng);
            OracleVerdict via_basis = oracle_cec_correctable(s, t * s.encode(u1), e);
            CHECK(via_basis.correctable == direct.correctable);
        }
    }
}

TEST_CASE("oracle deletions variant enumerates rank k-r matrices") {
    SpreadCode s = make_spread(2, 2, 2, Orientation::P);
    GrassmannPoint u = s.enumerate_points()[0];
    // no erasures: distinct codewords meet trivially, so even rank-deficient
    // channel matrices cannot make them collide
    CHECK(oracle_cec_correctable(s, u, ErasurePattern::zero(2, 4), 1).correctable);
    // fully erased nonzero block: ambiguous with or without deletions
    GrassmannPoint one_alpha({s.ext().one(), s.ext_ptr()->alpha()});
    ErasurePattern e(2, 4);
    e.set(0, 2);
    e.set(0, 3);
    OracleVerdict v = oracle_cec_correctable(s, one_alpha, e, 1);
    CHECK_FALSE(v.correctable);
    REQUIRE(v.witness.has_value());
    CHECK(rank(v.witness->a_u) == 1);
    CHECK(apply_cec(s.encode(v.witness->u), v.witness->a_u, e) ==
          apply_cec(s.encode(v.witness->v), v.witness->a_v, e));
}

TEST_CASE("per-codeword oracle counts dominate e_ell and e_avg") {
    SpreadCode s = make_spread(2, 2, 2, Orientation::P);
    CecCountReport rep = oracle_cec_counts(s);
    REQUIRE(rep.per_codeword.size() == 5);
    BigRat avg_formula = cec_counts(2, 2, 2, 0).e_avg;
    for (const auto& [point, count] : rep.per_codeword) {
        // ell counts the nonzero blocks after the leading identity
        unsigned ell = 0;
        for (unsigned b = point.leading_index() + 1; b < 2; ++b)
            if (!point.at(b).is_zero()) ++ell;
        CHECK(BigInt(count) >= cec_counts(2, 2, 2, ell).e_ell);
    }
    CHECK(rep.average >= avg_formula);
}

TEST_CASE("decoder agreement, REC exhaustive") {
    SpreadCode s = make_spread(2, 2, 2, Orientation::PT);
    AgreementReport rep = decoder_agreement_rec(s);
    CHECK(rep.cases == 5 * 6 * 256);
    CHECK(rep.all_agree());
    CHECK(rep.wrong_decodes == 0);
    CHECK(rep.missed_decodes == 0);
    // outside the family the observation is empty and the decoder refuses
    CHECK(rep.refusals == rep.cases - rep.family_cases);
}

TEST_CASE("decoder agreement, CEC exhaustive") {
    SpreadCode s = make_spread(2, 2, 2, Orientation::P);
    AgreementReport rep = decoder_agreement_cec(s);
    CHECK(rep.cases == 5 * 6 * 256);
    CHECK(rep.all_agree());
    CHECK(rep.family_uncorrectable == 0);
    CHECK(rep.decoded >= rep.family_cases); // some off-family patterns still decode fine
}

TEST_CASE("decoder agreement, CEC exhaustive over F_3") {
    SpreadCode s = make_spread(3, 2, 2, Orientation::P);
    AgreementReport rep = decoder_agreement_cec(s);
    CHECK(rep.cases == 10 * 48 * 256);
    CHECK(rep.all_agree());
}

TEST_CASE("decoder agreement, CEC with deletions, sampled") {
    SpreadCode s = make_spread(2, 3, 2, Orientation::PT);
    AgreementReport rep = decoder_agreement_cec_deletions(s, 1, 2000, 97);
    CHECK(rep.cases == 2000);
    CHECK(rep.all_agree());
    CHECK(rep.decoded == 2000);
}

TEST_CASE("oracle budget guards") {
    SpreadCode s = make_spread(2, 3, 3, Orientation::P);
    CHECK_THROWS_AS(oracle_cec_counts(s), BudgetExceededError);
    SpreadCode big = make_spread(2, 2, 4, Orientation::P);
    CHECK_THROWS_AS(oracle_cec_correctable(big, big.enumerate_points()[0],
                                           ErasurePattern::zero(2, 8), 0, 10),
                    BudgetExceededError);
}
