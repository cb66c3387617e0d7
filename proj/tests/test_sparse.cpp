#include <catch_amalgamated.hpp>

#include "thetak/sparse.hpp"

#include <random>

using namespace thetak;

TEST_CASE("rref of identity") {
    SparseMatrix m(3, 3);
    for (std::size_t i = 0; i < 3; ++i) m.set(i, i, GQ(1));
    auto r = rref(m);
    CHECK(r.rank == 3);
    CHECK(r.kernel.dim() == 0);
}

TEST_CASE("rref of zero matrix") {
    SparseMatrix m(2, 4);
    auto r = rref(m);
    CHECK(r.rank == 0);
    CHECK(r.kernel.dim() == 4);
}

TEST_CASE("rref of [[1,i],[i,-1]] has rank 1, kernel (1,i)") {
    SparseMatrix m(2, 2);
    m.set(0, 0, GQ(1));
    m.set(0, 1, GQ::i());
    m.set(1, 0, GQ::i());
    m.set(1, 1, GQ(-1));
    auto r = rref(m);
    CHECK(r.rank == 1);
    REQUIRE(r.kernel.dim() == 1);
    // hand elimination: a + i b = 0 forces (a, b) = b (-i, 1) ~ (1, i)
    SparseVec v;
    v[0] = GQ(1);
    v[1] = GQ::i();
    CHECK(r.kernel.contains(v));
    CHECK(m.apply(v).empty());
}

TEST_CASE("subspace_relate basic verdicts") {
    SparseVec e1, e2, e1x2;
    e1[0] = GQ(1);
    e2[1] = GQ(1);
    e1x2[0] = GQ(2);
    Subspace a = Subspace::from_spanning(2, {e1});
    Subspace b = Subspace::from_spanning(2, {e1, e2});
    Subspace c = Subspace::from_spanning(2, {e1x2});
    Subspace d = Subspace::from_spanning(2, {e2});
    CHECK(subspace_relate(a, b) == SubspaceRelation::a_subset_b);
    CHECK(subspace_relate(a, c) == SubspaceRelation::equal);
    CHECK(subspace_relate(a, d) == SubspaceRelation::incomparable);
    Subspace wrong(3);
    CHECK_THROWS_AS(subspace_relate(a, wrong), std::invalid_argument);
}

namespace {

SparseMatrix random_matrix(std::mt19937& rng, std::size_t rows, std::size_t cols) {
    SparseMatrix m(rows, cols);
    std::uniform_int_distribution<int> val(-4, 4);
    std::uniform_int_distribution<int> keep(0, 2);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c)
            if (keep(rng) == 0) m.set(r, c, GQ(Rational(val(rng)), Rational(val(rng))));
    return m;
}

} // namespace

TEST_CASE("rref properties on random matrices") {
    std::mt19937 rng(7);
    for (int t = 0; t < 40; ++t) {
        std::size_t rows = 1 + t % 5, cols = 1 + (t * 3) % 6;
        SparseMatrix m = random_matrix(rng, rows, cols);
        auto r = rref(m);

        // rank(m) == rank(transpose(m))
        CHECK(r.rank == rref(m.transpose()).rank);
        // rank + kernel dim = cols
        CHECK(r.rank + r.kernel.dim() == cols);
        // kernel vectors annihilate m exactly
        for (const auto& k : r.kernel.basis()) CHECK(m.apply(k).empty());
        // rref is idempotent: reducing the row space basis changes nothing
        Subspace again = Subspace::from_spanning(cols, r.row_space.basis());
        CHECK(again == r.row_space);
    }
}

TEST_CASE("subspace_relate equal iff mutual membership") {
    std::mt19937 rng(11);
    for (int t = 0; t < 30; ++t) {
        SparseMatrix m1 = random_matrix(rng, 3, 4), m2 = random_matrix(rng, 3, 4);
        Subspace a = rref(m1).row_space, b = rref(m2).row_space;
        bool ab = b.contains(a), ba = a.contains(b);
        CHECK((subspace_relate(a, b) == SubspaceRelation::equal) == (ab && ba));
    }
}

TEST_CASE("solve_linear exact solutions") {
    SparseMatrix m(2, 2);
    m.set(0, 0, GQ(1));
    m.set(0, 1, GQ(2));
    m.set(1, 1, GQ(1));
    SparseVec b;
    b[0] = GQ(5);
    b[1] = GQ(2);
    auto sol = solve_linear(m, b);
    REQUIRE(sol.has_value());
    CHECK(sol->unique);
    CHECK(sol->x[0] == GQ(1));
    CHECK(sol->x[1] == GQ(2));

    SparseMatrix bad(2, 1);
    bad.set(0, 0, GQ(1));
    bad.set(1, 0, GQ(1));
    SparseVec rhs;
    rhs[0] = GQ(1);
    rhs[1] = GQ(2);
    CHECK_FALSE(solve_linear(bad, rhs).has_value());
}
