#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "rlnc/linalg.hpp"

using namespace rlnc;

namespace {
auto f2 = BaseField::make(2);
auto f3 = BaseField::make(3);
} // namespace

TEST_CASE("erasable multiplication follows the ?-algebra") {
    // (1,0) * column(?,5)^T = ?, (0,1) * column(?,5)^T = 5
    auto f7 = BaseField::make(7);
    ErasableMatrix col(f7, 2, 1);
    col.set_erased(0, 0);
    col.set(1, 0, 5);

    MatFq pick_first = MatFq::from_rows(f7, {{1, 0}});
    MatFq pick_second = MatFq::from_rows(f7, {{0, 1}});
    ErasableMatrix r1 = pick_first * col;
    CHECK(r1.erased(0, 0));
    ErasableMatrix r2 = pick_second * col;
    CHECK_FALSE(r2.erased(0, 0));
    CHECK(r2.value(0, 0) == 5);

    // identity leaves an erasable matrix alone
    ErasableMatrix m(f7, 2, 2);
    m.set(0, 0, 3);
    m.set_erased(0, 1);
    m.set(1, 0, 0);
    m.set(1, 1, 6);
    CHECK(MatFq::identity(f7, 2) * m == m);

    // ? + ? = ?, ? * ? = ?, 0 * ? = 0
    ErasableMatrix qq(f7, 1, 1);
    qq.set_erased(0, 0);
    CHECK((qq + qq).erased(0, 0));
    CHECK((qq * qq).erased(0, 0));
    ErasableMatrix z(f7, 1, 1);
    z.set(0, 0, 0);
    CHECK_FALSE((z * qq).erased(0, 0));
    CHECK((z * qq).value(0, 0) == 0);

    CHECK_THROWS_AS(pick_first * ErasableMatrix(f7, 3, 1), DimensionError);
}

TEST_CASE("rref basics") {
    MatFq m = MatFq::from_rows(f2, {{1, 1}, {0, 1}});
    RrefResult r = rref(m);
    CHECK(r.r == MatFq::identity(f2, 2));
    CHECK(r.rank == 2);
    CHECK(r.transform * m == r.r);

    MatFq z = MatFq::zero(f2, 3, 4);
    RrefResult rz = rref(z);
    CHECK(rz.r == z);
    CHECK(rz.rank == 0);

    // idempotent
    MatFq big = MatFq::from_rows(f3, {{1, 2, 0, 1}, {2, 1, 1, 0}, {0, 0, 2, 2}});
    RrefResult r1 = rref(big);
    CHECK(rref(r1.r).r == r1.r);
}

TEST_CASE("row space equality via rref") {
    Rng rng(3);
    for (int i = 0; i < 200; ++i) {
        MatFq a = random_matrix(f3, 3, 5, 2, rng);
        MatFq t = random_full_rank(f3, 3, rng);
        CHECK(row_space_equal(a, t * a));
        MatFq b = random_matrix(f3, 3, 5, 3, rng);
        CHECK(row_space_equal(a, b) == (rref(a).r == rref(b).r));
    }
}

TEST_CASE("inversion") {
    CHECK(invert(MatFq::identity(f3, 4)) == MatFq::identity(f3, 4));
    Rng rng(17);
    for (int i = 0; i < 100; ++i) {
        MatFq a = random_full_rank(f3, 4, rng);
        CHECK(invert(a) * a == MatFq::identity(f3, 4));
    }
    MatFq sing = MatFq::from_rows(f2, {{1, 1}, {1, 1}});
    CHECK_THROWS_AS(invert(sing), SingularMatrixError);
    CHECK_THROWS_AS(invert(MatFq::zero(f2, 2, 3)), DimensionError);
}

TEST_CASE("subspace distance") {
    Subspace u(MatFq::from_rows(f2, {{1, 0}}));
    Subspace v(MatFq::from_rows(f2, {{0, 1}}));
    CHECK(subspace_distance(u, u) == 0);
    CHECK(subspace_distance(u, v) == 2);

    SUBCASE("metric axioms on random triples") {
        Rng rng(23);
        for (int i = 0; i < 1000; ++i) {
            Subspace a(random_matrix(f2, 2, 5, 1 + rng.below(2), rng));
            Subspace b(random_matrix(f2, 2, 5, 1 + rng.below(2), rng));
            Subspace c(random_matrix(f2, 2, 5, 1 + rng.below(2), rng));
            unsigned ab = subspace_distance(a, b);
            unsigned ba = subspace_distance(b, a);
            CHECK(ab == ba);
            CHECK((ab == 0) == (a == b));
            CHECK(ab + subspace_distance(b, c) >= subspace_distance(a, c));
        }
    }
}

TEST_CASE("random matrices hit their target rank") {
    Rng rng(99);
    for (int i = 0; i < 1000; ++i) CHECK(rank(random_matrix(f2, 2, 2, 2, rng)) == 2);
    for (int i = 0; i < 200; ++i) CHECK(rank(random_matrix(f2, 4, 4, 2, rng)) == 2);
    CHECK(random_matrix(f3, 3, 3, 0, rng).is_zero());
    CHECK_THROWS_AS(random_matrix(f2, 2, 3, 3, rng), DimensionError);
}

TEST_CASE("rows of A*U stay nonzero for full row rank factors") {
    Rng rng(7);
    for (int i = 0; i < 300; ++i) {
        MatFq a = random_full_rank(f2, 3, rng);
        MatFq u = random_matrix(f2, 3, 6, 3, rng);
        MatFq prod = a * u;
        for (unsigned r = 0; r < 3; ++r) CHECK_FALSE(prod.row_is_zero(r));
    }
}

TEST_CASE("rng determinism and trial streams") {
    Rng a(12345), b(12345);
    for (int i = 0; i < 100; ++i) CHECK(a.next() == b.next());
    Rng t0 = Rng::for_trial(1, 0), t0b = Rng::for_trial(1, 0), t1 = Rng::for_trial(1, 1);
    CHECK(t0.next() == t0b.next());
    CHECK(t0.next() != t1.next()); // overwhelmingly likely, fixed seeds
}

TEST_CASE("general linear group enumeration") {
    const auto& gl2 = general_linear_group(f2, 2);
    CHECK(gl2.size() == 6);
    const auto& gl3 = general_linear_group(f2, 3);
    CHECK(gl3.size() == 168);
    const auto& gl2q3 = general_linear_group(f3, 2);
    CHECK(gl2q3.size() == 48);
    auto rank1 = matrices_of_rank(f2, 2, 1);
    CHECK(rank1.size() == 9); // (2^2-1)^2 rank-one 2x2 binary matrices
    CHECK_THROWS_AS(general_linear_group(f2, 6), BudgetExceededError);
}

TEST_CASE("matrix text round trip") {
    MatFq m = MatFq::from_rows(f3, {{0, 1, 2, 1}, {2, 0, 0, 1}});
    std::string t = to_text(m, 2);
    CHECK(t == "0 1 | 2 1\n2 0 | 0 1\n");
    CHECK(parse_matrix(f3, t) == m);
    CHECK(parse_matrix(f3, to_text(m)) == m);

    ErasableMatrix e(f3, 2, 2);
    e.set(0, 0, 1);
    e.set_erased(0, 1);
    e.set(1, 0, 2);
    e.set_erased(1, 1);
    std::string et = to_text(e);
    CHECK(et == "1 ?\n2 ?\n");
    CHECK(parse_erasable(f3, et) == e);

    CHECK_THROWS_AS(parse_matrix(f3, "1 ?\n"), ParseError);
    CHECK_THROWS_AS(parse_matrix(f3, "1 2\n1\n"), ParseError);
    CHECK_THROWS_AS(parse_matrix(f3, "5 1\n"), ParseError);
    CHECK_THROWS_AS(parse_matrix(f3, ""), ParseError);
}

TEST_CASE("erasable rref carries erased columns along") {
    ErasableMatrix m(f2, 3, 4);
    // rows: (1 1 ? 0), (1 0 ? 1), (0 1 ? 1): rank 2 on unerased columns
    m.set(0, 0, 1); m.set(0, 1, 1); m.set_erased(0, 2); m.set(0, 3, 0);
    m.set(1, 0, 1); m.set(1, 1, 0); m.set_erased(1, 2); m.set(1, 3, 1);
    m.set(2, 0, 0); m.set(2, 1, 1); m.set_erased(2, 2); m.set(2, 3, 1);
    ErasableRrefResult r = rref(m);
    CHECK(r.rank == 2);
    CHECK(r.pivots == std::vector<unsigned>{0, 1});
    // reduced rows stay erased in column 2, and the dropped row is exact zero
    CHECK(r.r.erased(0, 2));
    CHECK(r.r.erased(1, 2));
    CHECK(r.r.row_is_exact_zero(2));
    CHECK(r.r.value(0, 0) == 1);
    CHECK(r.r.value(0, 1) == 0);
    CHECK(r.r.value(0, 3) == 1);
}
