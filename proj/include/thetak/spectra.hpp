#ifndef THETAK_SPECTRA_HPP
#define THETAK_SPECTRA_HPP

#include "thetak/dualpair.hpp"
#include "thetak/isotypic.hpp"
#include "thetak/ktype.hpp"

#include <optional>
#include <stdexcept>
#include <variant>
#include <vector>

namespace thetak {

/// One-dimensional character of the smaller member of a dual pair.
///   type C: 1^{xi,eta} of O(p,q)         (xi, eta parities)
///   type A: det^k of U(c,d)              (k = 0 unless the member is compact)
///   type D: the trivial character of Sp(p,q)
struct CharacterDatum {
    DualPairDescriptor pair;
    int xi = 0, eta = 0;  // type C
    int det_power = 0;    // type A

    std::string str() const {
        std::ostringstream os;
        os << pair.str() << "#";
        if (pair.family == PairFamily::C) os << "1^{" << xi << ',' << eta << '}';
        else if (pair.family == PairFamily::A) os << "det^" << det_power;
        else os << "1";
        return os.str();
    }
};

struct UnstableRange : std::domain_error {
    using std::domain_error::domain_error;
};
struct SizeGuard : std::domain_error {
    using std::domain_error::domain_error;
};

namespace detail {

inline long o_char_mult(const Partition& lam, int m, int parity) {
    if (m == 0) return lam.empty() ? 1 : 0;  // O(0): only the trivial character
    if (static_cast<int>(lam.length()) > m) return 0;
    return branch_gl_to_o(lam, m, parity % 2 == 0 ? OCharacter::trivial : OCharacter::det);
}

} // namespace detail

/// Combinatorial K-spectrum of the full theta lift of a character, through
/// GL-GL duality and the stable branching rules.  Multiplicity free by
/// construction; refuses outside the stable range instead of guessing.
inline CharacterSeries theta_character_spectrum(const CharacterDatum& d, int cutoff) {
    const DualPairDescriptor& pr = d.pair;
    CharacterSeries out(cutoff);
    if (pr.family == PairFamily::C) {
        int n = pr.g_sig.first, p = pr.gp_sig.first, q = pr.gp_sig.second;
        // compact O(m): the contraction is exact in every range; indefinite
        // signatures rely on the stable-range selection of Cartan pieces
        if (p > 0 && q > 0 && !stable_range_table1(PairFamily::C, n, p, q))
            throw UnstableRange("theta_character_spectrum: outside stable range; use the oracle");
        Rational shift(p - q, 2);
        for (int dp = 0; dp <= cutoff; ++dp)
            for (int dm = 0; dp + dm <= cutoff; ++dm) {
                auto plus = partitions_of(dp, std::min(n, p), std::max(dp, 1));
                auto minus = partitions_of(dm, std::min(n, q), std::max(dm, 1));
                for (const auto& lp : plus) {
                    if (detail::o_char_mult(lp, p, d.xi) != 1) continue;
                    for (const auto& lm : minus) {
                        if (detail::o_char_mult(lm, q, d.eta) != 1) continue;
                        if (lp.length() + lm.length() > static_cast<std::size_t>(n)) continue;
                        KTypeLabel lbl = KTypeLabel::single_u(GLWeight::mixed(lp, lm, n), shift);
                        out.add(lbl, 1, dp + dm);
                    }
                }
            }
        return out;
    }
    if (pr.family == PairFamily::A) {
        int a = pr.g_sig.first, b = pr.g_sig.second, c = pr.gp_sig.first, dd = pr.gp_sig.second;
        if (c > 0 && dd > 0 && !stable_range_table2(PairFamily::A, a, b, c + dd))
            throw UnstableRange("theta_character_spectrum: outside stable range; use the oracle");
        if (d.det_power != 0 && dd != 0)
            throw std::invalid_argument(
                "theta_character_spectrum: det powers only for a compact smaller member");
        Rational shift_a(c - dd, 2), shift_b(dd - c, 2);
        int k = d.det_power;
        // contractions: alpha pairs the U(c) blocks, delta the U(d) blocks;
        // a det^k twist offsets the alpha pair by k columns
        for (int da = 0; da <= cutoff; ++da)
            for (int dm = 0; da + dm <= cutoff; ++dm) {
                auto betas = partitions_of(dm, std::min({a, b, c}), std::max(dm, 1));
                auto deltas = partitions_of(da, std::min({a, b, dd}), std::max(da, 1));
                for (const auto& beta : betas)
                    for (const auto& delta : deltas) {
                        // alpha = beta + k * (1^c) when k >= 0 (swap otherwise)
                        Partition alpha = beta, beta_eff = beta;
                        if (k > 0) {
                            if (c > a) continue;
                            std::vector<int> ext(c, k);
                            for (std::size_t i = 0; i < beta.length(); ++i) ext[i] += beta.parts()[i];
                            alpha = Partition(std::move(ext));
                        } else if (k < 0) {
                            if (c > b) continue;
                            std::vector<int> ext(c, -k);
                            for (std::size_t i = 0; i < beta.length(); ++i) ext[i] += beta.parts()[i];
                            beta_eff = Partition(std::move(ext));
                            alpha = beta;
                        }
                        if (alpha.length() + delta.length() > static_cast<std::size_t>(a)) continue;
                        if (beta_eff.length() + delta.length() > static_cast<std::size_t>(b)) continue;
                        int deg = alpha.size() + beta_eff.size() + 2 * delta.size();
                        if (deg > cutoff) continue;
                        KTypeLabel lbl;
                        lbl.factors.emplace_back(
                            UTypeLabel(GLWeight::mixed(alpha, delta, a), shift_a));
                        lbl.factors.emplace_back(
                            UTypeLabel(GLWeight::mixed(delta, beta_eff, b), shift_b));
                        out.add(lbl, 1, deg);
                    }
            }
        return out;
    }
    // family D, trivial character of a compact Sp(p): Sp-spherical types
    // are exactly the even-column lambda, in every range
    int n = pr.g_sig.first, p = pr.gp_sig.first, q = pr.gp_sig.second;
    if (q != 0)
        throw UnstableRange("theta_character_spectrum: type D supports a compact Sp(p) member");
    for (int deg = 0; deg <= cutoff; ++deg)
        for (const auto& lam : partitions_of(deg, std::min(n, 2 * p), std::max(deg, 1))) {
            if (!lam.conjugate().all_parts_even()) continue;
            KTypeLabel lbl = KTypeLabel::single_u(GLWeight::from_partition(lam, n), Rational(p));
            out.add(lbl, 1, deg);
        }
    return out;
}

/// Brute-force spectrum on truncated Fock space: project slices onto the
/// character isotypic of the smaller member, then decompose under the
/// larger member's maximal compact.  Exact; supports a compact smaller
/// member (all of its operators preserve degree).
inline CharacterSeries theta_spectrum_oracle(const PairRealization& pr, const CharacterDatum& d,
                                             int cutoff, std::size_t monomial_guard = 20000) {
    // compactness of the projection side: every generator degree-preserving
    for (const auto& g : pr.gp.gens)
        for (const auto& [m, c] : g.terms()) {
            int dx = 0, da = 0;
            for (std::size_t i = 0; i < m.xexp.size(); ++i) {
                dx += m.xexp[i];
                da += m.aexp[i];
            }
            if (dx != da)
                throw SizeGuard("theta_spectrum_oracle: smaller member is not compact here");
        }

    // target eigenvalues per generator
    std::vector<Rational> eigen;
    for (std::size_t i = 0; i < pr.gp.gens.size(); ++i) {
        bool diag = std::find(pr.gp.diagonal_indices.begin(), pr.gp.diagonal_indices.end(), i) !=
                    pr.gp.diagonal_indices.end();
        Rational e(0);
        if (diag) {
            GQ s = pr.gp.gens[i].scalar_part();
            if (!s.is_real()) throw std::logic_error("theta_spectrum_oracle: complex shift");
            e = s.re() + Rational(d.det_power);
        }
        eigen.push_back(e);
    }
    std::vector<std::vector<int>> invs = pr.gp.component_involutions;
    std::vector<int> signs;
    if (pr.desc.family == PairFamily::C) {
        if (pr.desc.gp_sig.first > 0) signs.push_back(d.xi % 2 == 0 ? 1 : -1);
        if (pr.desc.gp_sig.second > 0) signs.push_back(d.eta % 2 == 0 ? 1 : -1);
    } else {
        signs.assign(invs.size(), 1);
    }

    CharacterSeries out(cutoff);
    for (int deg = 0; deg <= cutoff; ++deg) {
        GradedSlice slice(pr.space, deg, deg);
        if (slice.dim() > monomial_guard)
            throw SizeGuard("theta_spectrum_oracle: slice exceeds the monomial guard");
        auto iso = joint_eigenspace(slice, pr.gp.gens, eigen, invs, signs);
        if (iso.empty()) continue;
        for (const auto& comp : isotypic_decompose_subspace(pr.g.compact, slice, iso))
            out.add(comp.label, comp.multiplicity, deg);
    }
    return out;
}

/// The H'-types mu with their multiplicities n_mu = [mu|_{G'} : rho] in the
/// restriction of a type C theta lift to the inner pair of the see-saw
/// (H, H') = (U(r,s), U(m)); rho = det^eps of the compact O(m).
struct RestrictedConstituent {
    GLWeight mu;       // integer part of the U(m)~ type
    long n_mu = 0;
    int first_degree = 0;  // |mu+| + |mu-|
};

inline std::vector<RestrictedConstituent>
theta_restrict_to_h(int r, int s, int m, int eps, int cutoff) {
    std::vector<RestrictedConstituent> out;
    for (int dp = 0; dp <= cutoff; ++dp)
        for (int dm = 0; dp + dm <= cutoff; ++dm) {
            auto plus = partitions_of(dp, std::min(r, m), std::max(dp, 1));
            auto minus = partitions_of(dm, std::min(s, m), std::max(dm, 1));
            for (const auto& mp : plus)
                for (const auto& mq : minus) {
                    if (mp.length() + mq.length() > static_cast<std::size_t>(m)) continue;
                    GLWeight mu = GLWeight::mixed(mp, mq, m);
                    long n = branch_mixed_to_o_char(mu, eps);
                    if (n > 0) out.push_back({mu, n, dp + dm});
                }
        }
    return out;
}

/// M-type series of the lowest weight module L(mu) of the compact dual
/// pair (U(r,s), U(m)), in the transfer (sigma_2-aligned) coordinates:
/// U(r) labels alpha + m/2, U(s) labels the dual -rev(beta) - m/2, with
/// multiplicity [F^alpha (x) (F^beta)^* : F^mu] over gl(m).
struct LowestWeightModule {
    int r = 0, s = 0, m = 0;
    GLWeight mu;  // integer part, rank m
};

struct MSeries {
    CharacterSeries series;                 // two U-factor labels (ranks r, s)
    std::vector<Rational> lowest_vector;    // gl(r+s) weight of the lowest-weight vector
    InfinitesimalCharacter infchar;
    Rational central{0};
    Rational shift_class_r{0}, shift_class_s{0};  // genuineness per factor
};

inline MSeries lowest_weight_m_spectrum(const LowestWeightModule& L, int cutoff) {
    MSeries out;
    out.series = CharacterSeries(cutoff);
    Rational shift(L.m, 2);
    std::optional<std::pair<int, std::pair<GLWeight, GLWeight>>> lowest;
    for (int da = 0; da <= cutoff; ++da)
        for (int db = 0; da + db <= cutoff; ++db) {
            auto alphas = partitions_of(da, std::min(L.r, L.m), std::max(da, 1));
            auto betas = partitions_of(db, std::min(L.s, L.m), std::max(db, 1));
            for (const auto& al : alphas)
                for (const auto& be : betas) {
                    long mult = mixed_tensor_mult(al, be, L.mu);
                    if (mult == 0) continue;
                    GLWeight wa = GLWeight::from_partition(al, L.r);
                    GLWeight wb = GLWeight::mixed(Partition{}, be, L.s);  // dual labels
                    KTypeLabel lbl;
                    if (L.r > 0) lbl.factors.emplace_back(UTypeLabel(wa, shift));
                    if (L.s > 0) lbl.factors.emplace_back(UTypeLabel(wb, -shift));
                    out.series.add(lbl, mult, da + db);
                    if (!lowest || da + db < lowest->first) lowest = {{da + db, {wa, wb}}};
                }
        }
    if (lowest) {
        // lowest-weight vector: antidominant within each M factor
        const auto& [wa, wb] = lowest->second;
        for (auto it = wa.entries().rbegin(); it != wa.entries().rend(); ++it)
            out.lowest_vector.push_back(Rational(*it) + shift);
        for (auto it = wb.entries().rbegin(); it != wb.entries().rend(); ++it)
            out.lowest_vector.push_back(Rational(*it) - shift);
        out.infchar = lowest_weight_infchar(out.lowest_vector);
        for (const auto& e : out.lowest_vector) out.central += e;
    }
    out.shift_class_r = shift - Rational(shift.floor());
    out.shift_class_s = (-shift) - Rational((-shift).floor());
    return out;
}

/// Brute-force cross-check of lowest_weight_m_spectrum: project the mu
/// isotypic of the compact pair's Fock space and decompose under M~,
/// reporting labels in the same transfer coordinates.
inline CharacterSeries lowest_weight_m_spectrum_oracle(const LowestWeightModule& L, int cutoff) {
    // realization: rows 0..r-1 positive, r..r+s-1 negative, columns U(m):
    // this is exactly the type A pair (U(r,s), U(m,0)), whose own
    // coordinates are the sigma_2-aligned ones.  Decompose slices jointly
    // under M~ x U(m)' and keep the components sitting over mu.
    DualPairDescriptor d{PairFamily::A, {L.r, L.s}, {L.m, 0}};
    PairRealization pr = build_pair(d);
    CompactStructure joint = pr.g.compact;
    for (const auto& f : pr.gp.compact.factors) joint.factors.push_back(f);
    std::size_t mfac = pr.g.compact.factors.size();

    Rational colshift = pr.gp.gens.empty() ? Rational(0) : Rational(L.r - L.s, 2);
    UTypeLabel mu_label(L.mu, colshift);

    CharacterSeries out(cutoff);
    for (int deg = 0; deg <= cutoff; ++deg) {
        GradedSlice slice(pr.space, deg, deg);
        for (const auto& comp : isotypic_decompose(joint, slice)) {
            if (!(std::get<UTypeLabel>(comp.label.factors[mfac]) == mu_label)) continue;
            KTypeLabel m_part;
            for (std::size_t i = 0; i < mfac; ++i)
                m_part.factors.push_back(comp.label.factors[i]);
            out.add(m_part, comp.multiplicity, deg);
        }
    }
    return out;
}

} // namespace thetak

#endif
