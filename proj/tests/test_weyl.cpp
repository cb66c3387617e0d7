#include <catch_amalgamated.hpp>

#include "thetak/weyl.hpp"

#include <random>

using namespace thetak;

namespace {

WeylElement x(const SymplecticSpace& sp, std::size_t i) { return WeylElement::creation(sp, i); }
WeylElement a(const SymplecticSpace& sp, std::size_t i) { return WeylElement::annihilation(sp, i); }

WeylElement random_element(const SymplecticSpace& sp, std::mt19937& rng, int maxdeg) {
    std::uniform_int_distribution<int> deg(0, maxdeg), coeff(-3, 3), pick(0, 1);
    WeylElement w = WeylElement::zero(sp);
    for (int t = 0; t < 3; ++t) {
        WeylElement term = WeylElement::scalar(sp, GQ(Rational(coeff(rng)), Rational(coeff(rng))));
        int d = deg(rng);
        for (int k = 0; k < d; ++k) {
            std::uniform_int_distribution<std::size_t> var(0, sp.n_pairs - 1);
            term = term * (pick(rng) ? x(sp, var(rng)) : a(sp, var(rng)));
        }
        w = w + term;
    }
    return w;
}

} // namespace

TEST_CASE("normal order: f1 * x1 = x1 f1 - i") {
    SymplecticSpace sp{1};
    WeylElement f1 = WeylElement::vector_f(sp, 0);
    WeylElement x1 = WeylElement::vector_e(sp, 0);
    WeylElement lhs = f1 * x1;
    WeylElement rhs = x1 * f1 - WeylElement::scalar(sp, GQ::i());
    CHECK(lhs == rhs);
}

TEST_CASE("normal order: commuting creations") {
    SymplecticSpace sp{1};
    CHECK(x(sp, 0) * x(sp, 0) == x(sp, 0) * x(sp, 0));
    SymplecticSpace sp2{2};
    CHECK(x(sp2, 0) * x(sp2, 1) == x(sp2, 1) * x(sp2, 0));
}

TEST_CASE("normal order: f1 * x1^2 = x1^2 f1 - 2i x1") {
    SymplecticSpace sp{1};
    WeylElement f1 = WeylElement::vector_f(sp, 0);
    WeylElement x1 = WeylElement::vector_e(sp, 0);
    WeylElement lhs = f1 * (x1 * x1);
    WeylElement rhs = (x1 * x1) * f1 - x1 * (GQ(2) * GQ::i());
    CHECK(lhs == rhs);
}

TEST_CASE("defining relation vw - wv = i<v,w> for all basis pairs") {
    SymplecticSpace sp{3};
    for (std::size_t u = 0; u < sp.dim(); ++u)
        for (std::size_t v = 0; v < sp.dim(); ++v) {
            WeylElement uu = WeylElement::basis_vector(sp, u);
            WeylElement vv = WeylElement::basis_vector(sp, v);
            CHECK(bracket(uu, vv) == WeylElement::scalar(sp, GQ::i() * sp.form(u, v)));
        }
}

TEST_CASE("product is associative / confluent under reassociation") {
    std::mt19937 rng(42);
    for (std::size_t n = 1; n <= 3; ++n) {
        SymplecticSpace sp{n};
        for (int t = 0; t < 12; ++t) {
            WeylElement p = random_element(sp, rng, 2);
            WeylElement q = random_element(sp, rng, 2);
            WeylElement r = random_element(sp, rng, 2);
            CHECK((p * q) * r == p * (q * r));
        }
    }
}

TEST_CASE("filtration degree is submultiplicative") {
    std::mt19937 rng(99);
    SymplecticSpace sp{2};
    for (int t = 0; t < 20; ++t) {
        WeylElement p = random_element(sp, rng, 3), q = random_element(sp, rng, 3);
        if (p.is_zero() || q.is_zero()) continue;
        CHECK((p * q).filtration_degree() <= p.filtration_degree() + q.filtration_degree());
    }
}

TEST_CASE("omega_c of zero is zero and non-sp input is rejected") {
    SymplecticSpace sp{1};
    SpMatrix z(sp);
    CHECK(omega_c(z).is_zero());
    SpMatrix bad(sp);
    bad.at(0, 0) = GQ(1);  // e1 -> e1, f1 -> 0 is not symplectic
    CHECK_FALSE(bad.is_sp());
    CHECK_THROWS_AS(omega_c(bad), std::invalid_argument);
}

namespace {

// elementary sp basis for small N, through the defining condition
std::vector<SpMatrix> sp_basis(const SymplecticSpace& sp) {
    // span: E_ab (block gl), S+_ab, S-_ab in the e/f basis
    std::size_t n = sp.n_pairs;
    std::vector<SpMatrix> out;
    for (std::size_t aa = 0; aa < n; ++aa)
        for (std::size_t b = 0; b < n; ++b) {
            SpMatrix m(sp);
            m.at(aa, b) = GQ(1);          // e_b -> e_a
            m.at(n + b, n + aa) = GQ(-1); // f_a -> -f_b
            out.push_back(m);
        }
    for (std::size_t aa = 0; aa < n; ++aa)
        for (std::size_t b = aa; b < n; ++b) {
            SpMatrix up(sp);
            up.at(aa, n + b) = GQ(1);
            up.at(b, n + aa) = GQ(1);
            out.push_back(up);
            SpMatrix dn(sp);
            dn.at(n + aa, b) = GQ(1);
            dn.at(n + b, aa) = GQ(1);
            out.push_back(dn);
        }
    return out;
}

} // namespace

TEST_CASE("omega_c bracket equivariance and Lie homomorphism, N <= 3") {
    for (std::size_t n = 1; n <= 3; ++n) {
        SymplecticSpace sp{n};
        auto basis = sp_basis(sp);
        for (const auto& t : basis) {
            REQUIRE(t.is_sp());
            WeylElement z = omega_c(t);
            // [omega_c(T), omega(w)] = omega(T w) for every basis vector w
            for (std::size_t u = 0; u < sp.dim(); ++u) {
                WeylElement w = WeylElement::basis_vector(sp, u);
                CHECK(bracket(z, w) == omega_c_of_column(t, u));
            }
        }
        // Lie homomorphism on all pairs
        for (std::size_t i = 0; i < basis.size(); ++i)
            for (std::size_t j = 0; j < basis.size(); ++j) {
                SpMatrix c = commutator(basis[i], basis[j]);
                CHECK(bracket(omega_c(basis[i]), omega_c(basis[j])) == omega_c(c));
            }
    }
}

TEST_CASE("omega_c torus eigenvalue k + 1/2 on x^k") {
    SymplecticSpace sp{1};
    SpMatrix t(sp);
    t.at(0, 0) = GQ(1);
    t.at(1, 1) = GQ(-1);  // e -> e, f -> -f
    WeylElement h = omega_c(t);
    for (int k = 0; k <= 5; ++k) {
        FockVector v = FockVector::monomial(sp, {k});
        FockVector hv = act_on_fock(h, v);
        CHECK(hv == v * GQ(Rational(2 * k + 1, 2)));
    }
}

TEST_CASE("act_on_fock basic actions") {
    SymplecticSpace sp{1};
    FockVector one = FockVector::vacuum(sp);
    CHECK(act_on_fock(x(sp, 0), one) == FockVector::monomial(sp, {1}));
    CHECK(act_on_fock(a(sp, 0), FockVector::monomial(sp, {1})) == one);
    CHECK(act_on_fock(a(sp, 0), FockVector::monomial(sp, {3})) ==
          FockVector::monomial(sp, {2}, GQ(3)));
    // representation property act(xy, v) = act(x, act(y, v))
    std::mt19937 rng(5);
    SymplecticSpace sp2{2};
    for (int t = 0; t < 15; ++t) {
        WeylElement p = random_element(sp2, rng, 2), q = random_element(sp2, rng, 2);
        FockVector v = FockVector::monomial(sp2, {t % 3, (t / 3) % 3});
        CHECK(act_on_fock(p * q, v) == act_on_fock(p, act_on_fock(q, v)));
    }
}

TEST_CASE("operator_matrix examples") {
    SymplecticSpace sp{1};
    GradedSlice s03(sp, 0, 3);

    SparseMatrix id = operator_matrix(WeylElement::scalar(sp, GQ(1)), s03, s03);
    for (std::size_t i = 0; i < 4; ++i) CHECK(id.get(i, i) == GQ(1));

    // number operator on degrees 0..3 -> diag(0,1,2,3)
    WeylElement number = x(sp, 0) * a(sp, 0);
    SparseMatrix nm = operator_matrix(number, s03, s03);
    for (std::size_t i = 0; i < 4; ++i) {
        int deg = 3 - static_cast<int>(i);  // basis is graded ascending by degree
        (void)deg;
    }
    // identify degrees through the slice basis explicitly
    for (std::size_t j = 0; j < s03.dim(); ++j) {
        int d = s03.basis()[j][0];
        CHECK(nm.get(j, j) == GQ(d));
    }

    // matrix(product) = product(matrices) on compatible slices
    std::mt19937 rng(123);
    SymplecticSpace sp2{2};
    GradedSlice mid(sp2, 2, 4), out(sp2, 0, 6), wide(sp2, 0, 8);
    for (int t = 0; t < 10; ++t) {
        WeylElement p = random_element(sp2, rng, 2), q = random_element(sp2, rng, 2);
        SparseMatrix mq = operator_matrix(q, mid, out);
        SparseMatrix mp = operator_matrix(p, out, wide);
        SparseMatrix mpq = operator_matrix(p * q, mid, wide);
        CHECK(mpq == mp * mq);
    }
}

TEST_CASE("degree bookkeeping: degree-2 elements move degree d to {d-2, d, d+2}") {
    SymplecticSpace sp{2};
    std::mt19937 rng(77);
    for (int t = 0; t < 10; ++t) {
        WeylElement w = random_element(sp, rng, 2);
        FockVector v = FockVector::monomial(sp, {2, 1});
        FockVector img = act_on_fock(w, v);
        for (const auto& [m, c] : img.terms()) {
            int d = m[0] + m[1];
            CHECK((d >= 1 && d <= 5));
        }
    }
}
