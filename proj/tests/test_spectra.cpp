#include <catch_amalgamated.hpp>

#include "thetak/spectra.hpp"

using namespace thetak;

namespace {

KTypeLabel u1_label(Rational e) {
    Rational sh = e - Rational(e.floor());
    if (sh == Rational(1, 2) || sh == Rational(0)) {
        std::vector<int> w{static_cast<int>(static_cast<long>((e - sh).floor()))};
        return KTypeLabel::single_u(GLWeight(std::move(w)), sh);
    }
    throw std::logic_error("u1_label: not half-integral");
}

} // namespace

TEST_CASE("theta spectrum (Sp(2,R), O(1)) trivial: labels 1/2, 5/2, 9/2") {
    CharacterDatum d{DualPairDescriptor{PairFamily::C, {1, 0}, {1, 0}}, 0, 0, 0};
    CharacterSeries s = theta_character_spectrum(d, 8);
    CHECK(s.label_count() == 5);  // degrees 0,2,4,6,8 -> 1/2..17/2
    CHECK(s.multiplicity(u1_label(Rational(1, 2))) == 1);
    CHECK(s.multiplicity(u1_label(Rational(5, 2))) == 1);
    CHECK(s.multiplicity(u1_label(Rational(9, 2))) == 1);
    CHECK(s.multiplicity(u1_label(Rational(3, 2))) == 0);
}

TEST_CASE("theta spectrum (Sp(2,R), O(1)) det: labels 3/2, 7/2") {
    CharacterDatum d{DualPairDescriptor{PairFamily::C, {1, 0}, {1, 0}}, 1, 0, 0};
    CharacterSeries s = theta_character_spectrum(d, 8);
    CHECK(s.multiplicity(u1_label(Rational(3, 2))) == 1);
    CHECK(s.multiplicity(u1_label(Rational(7, 2))) == 1);
    CHECK(s.multiplicity(u1_label(Rational(1, 2))) == 0);
    CHECK(s.first_degree(u1_label(Rational(3, 2))).value() == 1);
}

TEST_CASE("theta spectrum (Sp(2,R), O(2,0)) trivial: labels 1, 3, 5, 7") {
    CharacterDatum d{DualPairDescriptor{PairFamily::C, {1, 0}, {2, 0}}, 0, 0, 0};
    CharacterSeries s = theta_character_spectrum(d, 6);
    CHECK(s.label_count() == 4);
    CHECK(s.multiplicity(u1_label(Rational(1))) == 1);
    CHECK(s.multiplicity(u1_label(Rational(3))) == 1);
    CHECK(s.multiplicity(u1_label(Rational(5))) == 1);
    CHECK(s.multiplicity(u1_label(Rational(7))) == 1);
}

TEST_CASE("theta spectrum refuses outside the stable range") {
    CharacterDatum d{DualPairDescriptor{PairFamily::C, {1, 0}, {1, 1}}, 0, 0, 0};
    CHECK_THROWS_AS(theta_character_spectrum(d, 4), UnstableRange);
}

TEST_CASE("oracle equivalence on the stable-range corpus") {
    // >= 5 configurations with <= 8 Fock variables, exact series equality
    struct Config {
        CharacterDatum d;
        int cutoff;
    };
    std::vector<Config> corpus = {
        {{DualPairDescriptor{PairFamily::C, {1, 0}, {1, 0}}, 0, 0, 0}, 8},
        {{DualPairDescriptor{PairFamily::C, {1, 0}, {1, 0}}, 1, 0, 0}, 8},
        {{DualPairDescriptor{PairFamily::C, {2, 0}, {1, 0}}, 0, 0, 0}, 8},
        {{DualPairDescriptor{PairFamily::C, {2, 0}, {2, 0}}, 1, 1, 0}, 6},
        {{DualPairDescriptor{PairFamily::A, {1, 1}, {1, 0}}, 0, 0, 0}, 8},
        {{DualPairDescriptor{PairFamily::A, {1, 1}, {1, 0}}, 0, 0, 2}, 6},
        {{DualPairDescriptor{PairFamily::A, {2, 1}, {1, 0}}, 0, 0, 1}, 5},
        {{DualPairDescriptor{PairFamily::D, {2, 0}, {1, 0}}, 0, 0, 0}, 5},
    };
    for (const auto& cfg : corpus) {
        INFO(cfg.d.str());
        PairRealization pr = build_pair(cfg.d.pair);
        CharacterSeries comb = theta_character_spectrum(cfg.d, cfg.cutoff);
        CharacterSeries orac = theta_spectrum_oracle(pr, cfg.d, cfg.cutoff);
        DifferenceReport diff = series_difference(comb, orac);
        if (!diff.empty())
            for (const auto& dd : diff.diffs)
                UNSCOPED_INFO(dd.label.str() << " lhs=" << dd.lhs << " rhs=" << dd.rhs);
        CHECK(diff.empty());
        CHECK(comb.graded() == orac.graded());
    }
}

TEST_CASE("oracle cutoff-0 edge cases") {
    CharacterDatum d{DualPairDescriptor{PairFamily::C, {1, 0}, {1, 0}}, 0, 0, 0};
    PairRealization pr = build_pair(d.pair);
    CharacterSeries s = theta_spectrum_oracle(pr, d, 0);
    CHECK(s.label_count() == 1);
    CHECK(s.multiplicity(u1_label(Rational(1, 2))) == 1);
    CharacterDatum dd{DualPairDescriptor{PairFamily::C, {1, 0}, {1, 0}}, 1, 0, 0};
    CHECK(theta_spectrum_oracle(pr, dd, 0).empty());
}

TEST_CASE("oracle refuses a noncompact smaller member") {
    CharacterDatum d{DualPairDescriptor{PairFamily::C, {1, 0}, {1, 1}}, 0, 0, 0};
    PairRealization pr = build_pair(d.pair);
    CHECK_THROWS_AS(theta_spectrum_oracle(pr, d, 4), SizeGuard);
}

TEST_CASE("multiplicity-freeness across the corpus") {
    std::vector<CharacterDatum> corpus = {
        {DualPairDescriptor{PairFamily::C, {2, 0}, {1, 1}}, 0, 0, 0},
        {DualPairDescriptor{PairFamily::C, {2, 0}, {1, 1}}, 1, 1, 0},
        {DualPairDescriptor{PairFamily::C, {3, 0}, {2, 1}}, 1, 0, 0},
        {DualPairDescriptor{PairFamily::A, {2, 2}, {1, 0}}, 0, 0, 0},
        {DualPairDescriptor{PairFamily::A, {3, 1}, {1, 0}}, 0, 0, 0},
        {DualPairDescriptor{PairFamily::D, {2, 0}, {1, 0}}, 0, 0, 0},
    };
    for (const auto& d : corpus) {
        INFO(d.str());
        CharacterSeries s = theta_character_spectrum(d, 8);
        auto r = multiplicity_free_check(s);
        CHECK(r.free);
        CHECK(r.violations.empty());
    }
    CharacterSeries bad(2);
    bad.add(u1_label(Rational(1)), 2, 0);
    auto r = multiplicity_free_check(bad);
    CHECK_FALSE(r.free);
    REQUIRE(r.violations.size() == 1);
    CHECK(r.violations[0].second == 2);
    CHECK(multiplicity_free_check(CharacterSeries(3)).free);
}

TEST_CASE("degree parity: type C trivial lifts live in even Fock degrees") {
    CharacterDatum d{DualPairDescriptor{PairFamily::C, {2, 0}, {1, 1}}, 0, 0, 0};
    CharacterSeries s = theta_character_spectrum(d, 7);
    for (const auto& [dl, m] : s.graded()) CHECK(dl.first % 2 == 0);
}

TEST_CASE("theta_restrict_to_h: (U(1,1),U(1)) over O(1), trivial and det") {
    auto cons = theta_restrict_to_h(1, 1, 1, 0, 6);
    for (const auto& c : cons) {
        CHECK(c.n_mu == 1);
        int k = c.mu.entries()[0];
        CHECK((k % 2 + 2) % 2 == 0);
    }
    CHECK(cons.size() == 7);  // k = 0, +-2, +-4, +-6
    auto odd = theta_restrict_to_h(1, 1, 1, 1, 6);
    for (const auto& c : odd) {
        int k = c.mu.entries()[0];
        CHECK((k % 2 + 2) % 2 == 1);
        CHECK(c.n_mu == 1);
    }
    CHECK(odd.size() == 6);  // k = +-1, +-3, +-5
}

TEST_CASE("lowest_weight_m_spectrum: rank-one ladder") {
    LowestWeightModule L{1, 1, 1, GLWeight{0}};
    MSeries ms = lowest_weight_m_spectrum(L, 6);
    for (const auto& [lbl, m] : ms.series.multiplicities()) {
        CHECK(m == 1);
        auto ea = std::get<UTypeLabel>(lbl.factors[0]).eigenvalues()[0];
        auto eb = std::get<UTypeLabel>(lbl.factors[1]).eigenvalues()[0];
        CHECK(ea == -eb);
    }
    CHECK(ms.series.label_count() == 4);  // a = 0..3 within cutoff 6
    MSeries low = lowest_weight_m_spectrum(L, 0);
    CHECK(low.series.label_count() == 1);
    CHECK(low.lowest_vector[0] == Rational(1, 2));
    CHECK(low.lowest_vector[1] == Rational(-1, 2));
    CHECK(ms.infchar.entries()[0] == Rational(0));
    CHECK(ms.infchar.entries()[1] == Rational(0));
    CHECK(ms.central == Rational(0));
}

TEST_CASE("lowest_weight_m_spectrum agrees with the Fock oracle") {
    std::vector<LowestWeightModule> configs = {
        {1, 1, 1, GLWeight{0}},
        {1, 1, 1, GLWeight{2}},
        {1, 1, 2, GLWeight{2, 0}},
        {2, 0, 1, GLWeight{3}},
    };
    for (const auto& L : configs) {
        INFO("mu rank " << L.m);
        MSeries ms = lowest_weight_m_spectrum(L, 5);
        CharacterSeries orac = lowest_weight_m_spectrum_oracle(L, 5);
        DifferenceReport diff = series_difference(ms.series, orac);
        if (!diff.empty())
            for (const auto& dd : diff.diffs)
                UNSCOPED_INFO(dd.label.str() << " lhs=" << dd.lhs << " rhs=" << dd.rhs);
        CHECK(diff.empty());
    }
}

TEST_CASE("central shifts match the torus eigenvalues from omega") {
    for (auto [p, q] : std::vector<std::pair<int, int>>{{1, 0}, {2, 0}}) {
        CharacterDatum d{DualPairDescriptor{PairFamily::C, {2, 0}, {p, q}}, 0, 0, 0};
        PairRealization pr = build_pair(d.pair);
        FockVector vac = FockVector::vacuum(pr.space);
        Rational expect(p - q, 2);
        for (std::size_t i : pr.g.diagonal_indices) {
            FockVector tv = act_on_fock(pr.g.gens[i], vac);
            CHECK(tv == vac * GQ(expect));
        }
        CharacterSeries s = theta_character_spectrum(d, 4);
        for (const auto& [lbl, mult] : s.multiplicities()) {
            const auto& u = std::get<UTypeLabel>(lbl.factors[0]);
            Rational frac = expect - Rational(expect.floor());
            CHECK(u.shift == frac);
        }
    }
}

namespace {

// brute-force invariant-kernel oracle: the multiplicity of the trivial
// (resp. det) character of O(m) in F^lam, counted as the dimension of the
// lam highest-weight space inside the O(m)-isotypic of C[M_{k,m}]
long o_char_oracle(const Partition& lam, int m, int parity) {
    int k = std::max<int>(1, static_cast<int>(lam.length()));
    DualPairDescriptor d{PairFamily::C, {k, 0}, {m, 0}};
    PairRealization pr = build_pair(d);
    int deg = lam.size();
    GradedSlice slice(pr.space, deg, deg);
    std::vector<Rational> eigen(pr.gp.gens.size(), Rational(0));
    std::vector<int> signs{parity % 2 == 0 ? 1 : -1};
    auto iso = joint_eigenspace(slice, pr.gp.gens, eigen, pr.gp.component_involutions, signs);
    if (iso.empty()) return 0;
    KTypeLabel want = KTypeLabel::single_u(GLWeight::from_partition(lam, k), Rational(m, 2));
    for (const auto& comp : isotypic_decompose_subspace(pr.g.compact, slice, iso))
        if (comp.label == want) return comp.multiplicity;
    return 0;
}

long sp_triv_oracle(const Partition& lam, int two_m) {
    int k = std::max<int>(1, static_cast<int>(lam.length()));
    DualPairDescriptor d{PairFamily::D, {k, 0}, {two_m / 2, 0}};
    PairRealization pr = build_pair(d);
    int deg = lam.size();
    GradedSlice slice(pr.space, deg, deg);
    std::vector<Rational> eigen(pr.gp.gens.size(), Rational(0));
    auto iso = joint_eigenspace(slice, pr.gp.gens, eigen, {}, {});
    if (iso.empty()) return 0;
    KTypeLabel want =
        KTypeLabel::single_u(GLWeight::from_partition(lam, k), Rational(two_m / 2));
    for (const auto& comp : isotypic_decompose_subspace(pr.g.compact, slice, iso))
        if (comp.label == want) return comp.multiplicity;
    return 0;
}

} // namespace

TEST_CASE("branch_gl_to_o against the invariant-kernel oracle") {
    for (int m = 1; m <= 5; ++m)
        for (int sz = 0; sz <= 4; ++sz)
            for (const auto& lam : partitions_of(sz, m, std::max(sz, 1))) {
                if (static_cast<int>(lam.length()) * m > 10) continue;  // slice size guard
                INFO("m=" << m << " |lam|=" << sz);
                CHECK(branch_gl_to_o(lam, m, OCharacter::trivial) == o_char_oracle(lam, m, 0));
                CHECK(branch_gl_to_o(lam, m, OCharacter::det) == o_char_oracle(lam, m, 1));
            }
}

TEST_CASE("branch_gl_to_sp against the invariant-kernel oracle") {
    for (int two_m : {2, 4})
        for (int sz = 0; sz <= 4; ++sz)
            for (const auto& lam : partitions_of(sz, two_m / 2, std::max(sz, 1))) {
                INFO("2m=" << two_m << " |lam|=" << sz);
                CHECK(branch_gl_to_sp(lam, two_m) == sp_triv_oracle(lam, two_m));
            }
}
