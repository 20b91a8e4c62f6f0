#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "rlnc/channel.hpp"
#include "rlnc/decode.hpp"

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

TEST_CASE("decode_rec on the worked single row") {
    SpreadCode s = make_spread(2, 4, 2, Orientation::PT, "x^4+x+1");
    MatFq r = parse_matrix(f2, "1 0 0 0 1 0 1 1\n");
    DecodeReport rep = decode_rec(s, r);
    CHECK(rep.point == GrassmannPoint({s.ext().one(), s.ext_ptr()->element({1, 0, 1, 1})}));
}

TEST_CASE("decode_rec round trips and refusals") {
    SpreadCode s = make_spread(2, 3, 2, Orientation::PT);
    Rng rng(555);
    for (int i = 0; i < 500; ++i) {
        GrassmannPoint u = s.random_point(rng);
        CHECK(decode_rec(s, s.encode(u)).point == u);
    }
    CHECK_THROWS_AS(decode_rec(s, MatFq::zero(f2, 0, 6)), UndecodableError);
    CHECK_THROWS_AS(decode_rec(s, MatFq::zero(f2, 2, 6)), UndecodableError);
    SpreadCode p = make_spread(2, 3, 2, Orientation::P);
    CHECK_THROWS_AS(decode_rec(p, MatFq::zero(f2, 1, 6)), ConfigError);
}

TEST_CASE("decode_rec output does not depend on the surviving row") {
    SpreadCode s = make_spread(3, 2, 3, Orientation::PT);
    Rng rng(808);
    for (int i = 0; i < 300; ++i) {
        GrassmannPoint u = s.random_point(rng);
        MatFq a = random_full_rank(s.field_ptr(), 2, rng);
        MatFq moved = a * s.encode(u);
        for (unsigned r = 0; r < moved.rows(); ++r) {
            DecodeReport rep = decode_rec(s, moved.rows_slice(r, 1));
            CHECK(rep.point == u);
        }
    }
}

TEST_CASE("decode_rec monte carlo within the row budget") {
    SpreadCode s = make_spread(2, 4, 2, Orientation::PT);
    Rng outer(2024);
    for (int i = 0; i < 3000; ++i) {
        Rng rng = Rng::for_trial(2024, i);
        GrassmannPoint u = s.random_point(rng);
        MatFq a = random_full_rank(f2, 4, rng);
        unsigned affected = static_cast<unsigned>(rng.below(4)); // 0..k-1
        ErasurePattern e = sample_pattern(4, 8, affected, Placement::worst_rec(), rng);
        MatFq obs = apply_rec(s.encode(u), a, e);
        CHECK(decode_rec(s, obs).point == u);
    }
}

TEST_CASE("decode_cec basics") {
    SpreadCode s = make_spread(2, 2, 2, Orientation::P, "x^2+x+1");
    const auto& ext = s.ext_ptr();
    MatFq iP = MatFq::hcat(std::vector<MatFq>{MatFq::identity(f2, 2), s.companion_matrix()});
    DecodeReport rep = decode_cec(s, ErasableMatrix(iP));
    CHECK(rep.point == GrassmannPoint({ext->one(), ext->alpha()}));
    CHECK(rep.reference_block == 0);

    SUBCASE("one erased column, channel matrix applied") {
        MatFq a = MatFq::from_rows(f2, {{1, 1}, {0, 1}});
        ErasurePattern e(2, 4);
        e.set(0, 2);
        DecodeReport rep2 = decode_cec(s, apply_cec(iP, a, e));
        CHECK(rep2.point == GrassmannPoint({ext->one(), ext->alpha()}));
        CHECK(rep2.erased_cols_per_block == std::vector<unsigned>{0, 1});
    }

    SUBCASE("wrong orientation is a config error") {
        SpreadCode st = make_spread(2, 2, 2, Orientation::PT);
        CHECK_THROWS_AS(decode_cec(st, ErasableMatrix(iP)), ConfigError);
    }
}

TEST_CASE("decode_cec refuses the worked ambiguous pattern") {
    SpreadCode s = make_spread(2, 3, 2, Orientation::P, "x^3+x^2+1");
    MatFq p = s.companion_matrix();
    MatFq u1 = MatFq::hcat(std::vector<MatFq>{MatFq::identity(f2, 3), p * p * p});
    MatFq a1 = MatFq::from_rows(f2, {{1, 1, 1}, {0, 1, 1}, {1, 1, 0}});
    ErasurePattern e(3, 6);
    e.set(0, 1);
    e.set(0, 2);
    e.set(0, 5);
    CHECK_THROWS_AS(decode_cec(s, apply_cec(u1, a1, e)), UndecodableError);
    try {
        decode_cec(s, apply_cec(u1, a1, e));
    } catch (const UndecodableError& err) {
        CHECK(err.reason() == UndecodableError::Reason::NoReferenceBlock);
    }
}

TEST_CASE("decode_cec exhaustive at k=2, m=2 over GL_2(F_2) and GL_2(F_3)") {
    for (unsigned q : {2u, 3u}) {
        SpreadCode s = make_spread(q, 2, 2, Orientation::P);
        const unsigned k = 2, n = 4, m = 2;
        const auto& gl = general_linear_group(s.field_ptr(), k);
        s.for_each_codeword([&](const GrassmannPoint& u, const CodewordMatrix& um) {
            std::uint32_t nonzero = 0;
            for (unsigned b = 0; b < m; ++b)
                if (!u.at(b).is_zero()) nonzero |= 1u << b;
            for (std::uint64_t bits = 0; bits < (1u << (k * n)); ++bits) {
                // decodable family: every block within the k-1 column budget
                // and some nonzero block untouched
                ErasurePattern e = ErasurePattern::from_bits(k, n, bits);
                bool family = true, untouched = false;
                for (unsigned b = 0; b < m; ++b) {
                    unsigned cols = e.affected_cols_in_block(b, k);
                    if (cols > k - 1) family = false;
                    if (cols == 0 && (nonzero >> b & 1)) untouched = true;
                }
                if (!family || !untouched) continue;
                for (const MatFq& a : gl)
                    CHECK(decode_cec(s, apply_cec(um, a, e)).point == u);
            }
        });
    }
}

TEST_CASE("decode_cec is reference-block independent") {
    SpreadCode s = make_spread(2, 3, 3, Orientation::P);
    Rng rng(99);
    for (int i = 0; i < 200; ++i) {
        GrassmannPoint u = s.random_point(rng);
        MatFq a = random_full_rank(f2, 3, rng);
        std::vector<unsigned> nonzero;
        for (unsigned b = 0; b < 3; ++b)
            if (!u.at(b).is_zero()) nonzero.push_back(b);
        ErasurePattern e = sample_pattern(
            3, 9, static_cast<unsigned>(rng.below(5)),
            Placement::per_block(2, nonzero[rng.below(nonzero.size())]), rng);
        ErasableMatrix obs = apply_cec(s.encode(u), a, e);
        // every qualifying block must give the same answer
        unsigned qualifying = 0;
        for (unsigned b = 0; b < 3; ++b) {
            if (u.at(b).is_zero() || e.affected_cols_in_block(b, 3) != 0) continue;
            ++qualifying;
            CHECK(decode_cec_using_reference(s, obs, b).point == u);
        }
        CHECK(qualifying >= 1);
    }
}

TEST_CASE("rank metric erasure decoding") {
    auto ext = ExtField::make(parse_poly(f2, "x^4+x+1"));

    SUBCASE("worked second block") {
        MatFq sel = MatFq::from_rows(f2, {{1, 0, 0, 0}, {0, 0, 0, 1}});
        GabidulinCode gab(ext, sel, Orientation::PT);
        ErasableMatrix r(f2, 2, 4);
        r.set(0, 0, 1); r.set(0, 1, 0); r.set(0, 2, 1); r.set_erased(0, 3);
        r.set(1, 0, 0); r.set(1, 1, 1); r.set(1, 2, 0); r.set_erased(1, 3);
        GabidulinCode::Decoded d = gab.erasure_decode(r);
        CHECK(d.word == MatFq::from_rows(f2, {{1, 0, 1, 1}, {0, 1, 0, 0}}));
        CHECK(d.coefficient == ext->element({1, 0, 1, 1})); // 1+a^2+a^3
        // generator of the selected Gabidulin code is (1, alpha^3)
        auto g = gab.generator();
        CHECK(g[0].is_one());
        CHECK(g[1] == ext->alpha().pow(3));
    }

    SUBCASE("no erasures is a consistency check") {
        GabidulinCode gab(ext, MatFq::identity(f2, 4), Orientation::PT);
        MatFq word = phi(ext->element({0, 1, 1, 0}), Orientation::PT);
        CHECK(gab.erasure_decode(ErasableMatrix(word)).word == word);
        // corrupt one cell: inconsistent
        ErasableMatrix bad(word);
        bad.set(0, 0, static_cast<felem>(1 ^ word.at(0, 0)));
        CHECK_THROWS_AS(gab.erasure_decode(bad), UndecodableError);
    }

    SUBCASE("row plus column erasures within the budget always decode") {
        // q=2, k=4: every B in F_2[P], every (r rows, c cols) with r+c <= 2
        MatFq p = companion(ext->modulus());
        for (unsigned r = 0; r <= 2; ++r) {
            for (unsigned c = 0; r + c <= 2; ++c) {
                // all row subsets of size 4-r as selections
                for (unsigned rows_mask = 0; rows_mask < 16; ++rows_mask) {
                    if (static_cast<unsigned>(__builtin_popcount(rows_mask)) != 4 - r) continue;
                    std::vector<MatFq> sel_rows;
                    MatFq sel(f2, 4 - r, 4);
                    unsigned out_row = 0;
                    for (unsigned i = 0; i < 4; ++i)
                        if (rows_mask >> i & 1) sel.at(out_row++, i) = 1;
                    GabidulinCode gab(ext, sel, Orientation::P);
                    for (unsigned cols_mask = 0; cols_mask < 16; ++cols_mask) {
                        if (static_cast<unsigned>(__builtin_popcount(cols_mask)) != c) continue;
                        for (std::uint64_t bi = 0; bi < 16; ++bi) {
                            MatFq b = phi(ext->from_index(bi), Orientation::P);
                            ErasableMatrix obs(sel * b);
                            for (unsigned col = 0; col < 4; ++col)
                                if (cols_mask >> col & 1)
                                    for (unsigned row = 0; row < 4 - r; ++row)
                                        obs.set_erased(row, col);
                            CHECK(gab.erasure_decode(obs).word == sel * b);
                        }
                    }
                }
            }
        }
    }
}

TEST_CASE("decode_cec_with_deletions on the worked example") {
    SpreadCode s = make_spread(2, 4, 2, Orientation::PT, "x^4+x+1");
    ErasableMatrix r = parse_erasable(f2,
                                      "1 0 0 1 1 1 1 ?\n"
                                      "1 0 0 0 1 0 1 ?\n"
                                      "1 0 0 1 1 1 1 ?\n"
                                      "0 0 0 1 0 1 0 ?\n");
    DecodeReport rep = decode_cec_with_deletions(s, r);
    CHECK(rep.point == GrassmannPoint({s.ext().one(), s.ext_ptr()->element({1, 0, 1, 1})}));
    CHECK(rep.deletions == 2);
    CHECK(rep.reference_block == 0);
    CHECK(rep.erased_cols_per_block == std::vector<unsigned>{0, 1});
    CHECK(s.encode(rep.point) == parse_matrix(f2,
                                              "1 0 0 0 1 0 1 1\n"
                                              "0 1 0 0 1 0 0 1\n"
                                              "0 0 1 0 1 0 0 0\n"
                                              "0 0 0 1 0 1 0 0\n"));
}

TEST_CASE("decode_cec_with_deletions matches decode_cec when r = 0") {
    SpreadCode sp = make_spread(2, 3, 2, Orientation::P);
    SpreadCode st = make_spread(2, 3, 2, Orientation::PT);
    Rng rng(6502);
    for (int i = 0; i < 300; ++i) {
        GrassmannPoint u = sp.random_point(rng);
        MatFq a = random_full_rank(f2, 3, rng);
        std::vector<unsigned> nonzero;
        for (unsigned b = 0; b < 2; ++b)
            if (!u.at(b).is_zero()) nonzero.push_back(b);
        ErasurePattern e = sample_pattern(
            3, 6, static_cast<unsigned>(rng.below(4)),
            Placement::per_block(2, nonzero[rng.below(nonzero.size())]), rng);
        DecodeReport via_cec = decode_cec(sp, apply_cec(sp.encode(u), a, e));
        DecodeReport via_del = decode_cec_with_deletions(st, apply_cec(st.encode(u), a, e));
        CHECK(via_cec.point == via_del.point);
        CHECK(via_del.deletions == 0);
    }
}

TEST_CASE("decode_cec_with_deletions monte carlo") {
    SpreadCode s = make_spread(2, 3, 2, Orientation::PT);
    for (int i = 0; i < 2000; ++i) {
        Rng rng = Rng::for_trial(31415, i);
        GrassmannPoint u = s.random_point(rng);
        unsigned r = 1;
        MatFq a = random_matrix(f2, 3, 3, 3 - r, rng);
        std::vector<unsigned> nonzero;
        for (unsigned b = 0; b < 2; ++b)
            if (!u.at(b).is_zero()) nonzero.push_back(b);
        unsigned limit = 3 - r - 1;
        ErasurePattern e = sample_pattern(
            3, 6, static_cast<unsigned>(rng.below(limit * 3 + 1)),
            Placement::per_block(limit, nonzero[rng.below(nonzero.size())]), rng);
        DecodeReport rep = decode_cec_with_deletions(s, apply_cec(s.encode(u), a, e));
        CHECK(rep.point == u);
        CHECK(rep.deletions == r);
    }
}

TEST_CASE("deletion decoder refusals") {
    SpreadCode s = make_spread(2, 3, 2, Orientation::PT);
    // rank-0 observation
    ErasableMatrix z(f2, 3, 6);
    CHECK_THROWS_AS(decode_cec_with_deletions(s, z), UndecodableError);
    // no erasure-free nonzero block
    Rng rng(1);
    GrassmannPoint u = s.random_point(rng);
    ErasurePattern e(3, 6);
    e.set(0, 0);
    e.set(0, 3);
    MatFq a = random_full_rank(f2, 3, rng);
    CHECK_THROWS_AS(decode_cec_with_deletions(s, apply_cec(s.encode(u), a, e)), UndecodableError);
    // wrong orientation
    SpreadCode p = make_spread(2, 3, 2, Orientation::P);
    CHECK_THROWS_AS(decode_cec_with_deletions(p, z), ConfigError);
}

TEST_CASE("solver reports underdetermined systems") {
    auto ext = ExtField::make(parse_poly(f2, "x^4+x+1"));
    GabidulinCode gab(ext, MatFq::identity(f2, 4), Orientation::PT);
    // erase every column: nothing to solve from
    ErasableMatrix all_erased(f2, 4, 4);
    for (unsigned r = 0; r < 4; ++r)
        for (unsigned c = 0; c < 4; ++c) all_erased.set_erased(r, c);
    try {
        gab.erasure_decode(all_erased);
        CHECK(false);
    } catch (const UndecodableError& e) {
        CHECK(e.reason() == UndecodableError::Reason::Underdetermined);
    }
}
