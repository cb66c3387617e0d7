#ifndef THETAK_ISOTYPIC_HPP
#define THETAK_ISOTYPIC_HPP

#include "thetak/ktype.hpp"
#include "thetak/sparse.hpp"
#include "thetak/weyl.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <variant>
#include <vector>

namespace thetak {

/// Compact-part data for one U(r~) factor: diagonal torus operators and the
/// simple raising operators, as Weyl elements acting on Fock space.
struct UFactorAction {
    std::vector<WeylElement> torus;
    std::vector<WeylElement> raising;
};

/// Compact-part data for one O(n) factor: so(n) rotations plus the
/// disconnected component realized as an explicit sign involution of the
/// Fock variables (mask[v] = 1 flips variable v).
struct OFactorAction {
    std::size_t n = 0;
    std::vector<WeylElement> rotations;
    std::vector<std::vector<int>> reflections;
};

struct CompactStructure {
    std::vector<std::variant<UFactorAction, OFactorAction>> factors;

    std::vector<const WeylElement*> all_torus() const {
        std::vector<const WeylElement*> out;
        for (const auto& f : factors)
            if (std::holds_alternative<UFactorAction>(f))
                for (const auto& t : std::get<UFactorAction>(f).torus) out.push_back(&t);
        return out;
    }
};

/// Eigenvalue of a diagonal operator on a Fock monomial; throws when the
/// operator is not diagonal on monomials.
inline Rational diagonal_eigenvalue(const WeylElement& op, const std::vector<int>& mono) {
    Rational e(0);
    for (const auto& [m, c] : op.terms()) {
        if (m.xexp == m.aexp) {
            // x^k a^k acts on x^g by prod falling factorials
            Rational f(1);
            bool dead = false;
            for (std::size_t i = 0; i < m.xexp.size(); ++i)
                for (int k = 0; k < m.aexp[i]; ++k) {
                    if (mono[i] - k <= 0) { dead = true; break; }
                    f *= Rational(mono[i] - k);
                }
            if (!c.is_real()) throw std::invalid_argument("diagonal_eigenvalue: complex coefficient");
            if (!dead) e += c.re() * f;
        } else {
            throw std::invalid_argument("diagonal_eigenvalue: operator not diagonal");
        }
    }
    return e;
}

/// Sign of a variable-flip involution on a monomial.
inline int involution_sign(const std::vector<int>& mask, const std::vector<int>& mono) {
    long s = 0;
    for (std::size_t i = 0; i < mask.size(); ++i)
        if (mask[i]) s += mono[i];
    return (s % 2 == 0) ? 1 : -1;
}

struct IsotypicComponent {
    KTypeLabel label;
    long multiplicity = 0;
    std::vector<SparseVec> highest_weight_vectors;  // coordinates in the slice
    int degree = 0;                                 // Fock degree of the vectors
};

namespace detail {

/// Split a list of slice-coordinate vectors into joint weight components
/// under a family of diagonal operators.
inline std::map<std::vector<Rational>, std::vector<SparseVec>>
split_by_weight(const std::vector<SparseVec>& vecs, const GradedSlice& slice,
                const std::vector<const WeylElement*>& torus) {
    std::map<std::vector<Rational>, std::vector<SparseVec>> comps;
    for (const auto& v : vecs) {
        std::map<std::vector<Rational>, SparseVec> parts;
        for (const auto& [idx, c] : v) {
            std::vector<Rational> w;
            for (const auto* t : torus) w.push_back(diagonal_eigenvalue(*t, slice.basis()[idx]));
            parts[w][idx] = c;
        }
        for (auto& [w, part] : parts) comps[w].push_back(std::move(part));
    }
    for (auto& [w, gens] : comps) {
        Subspace s = Subspace::from_spanning(slice.dim(), gens);
        gens = s.basis();
    }
    return comps;
}

} // namespace detail

/// Decompose a torus-stable subspace of a graded slice under a product of
/// U factors: highest-weight vectors are the joint kernel of the raising
/// operators, grouped by dominant torus weights, with half-integer shifts
/// split off per factor.  The subspace must be invariant under the action.
inline std::vector<IsotypicComponent>
isotypic_decompose_subspace(const CompactStructure& k, const GradedSlice& slice,
                            const std::vector<SparseVec>& subspace_basis) {
    std::vector<const WeylElement*> torus = k.all_torus();
    std::vector<const WeylElement*> raising;
    std::vector<std::size_t> factor_ranks;
    for (const auto& f : k.factors) {
        if (!std::holds_alternative<UFactorAction>(f))
            throw std::invalid_argument("isotypic_decompose: only U factors carry weight labels");
        const auto& u = std::get<UFactorAction>(f);
        factor_ranks.push_back(u.torus.size());
        for (const auto& r : u.raising) raising.push_back(&r);
    }

    // matrices of the raising operators on the ambient slice window
    int maxdeg = 0;
    for (const auto* r : raising) maxdeg = std::max(maxdeg, r->filtration_degree());
    GradedSlice wide(slice.space(), slice.lo() - maxdeg, slice.hi() + maxdeg);
    std::vector<SparseMatrix> rmats;
    for (const auto* r : raising) rmats.push_back(operator_matrix(*r, slice, wide));

    std::vector<IsotypicComponent> out;
    auto byweight = detail::split_by_weight(subspace_basis, slice, torus);
    for (const auto& [w, basis] : byweight) {
        if (basis.empty()) continue;
        // highest-weight vectors inside this weight component
        SparseMatrix sys(rmats.size() * wide.dim(), basis.size());
        for (std::size_t j = 0; j < basis.size(); ++j)
            for (std::size_t r = 0; r < rmats.size(); ++r) {
                SparseVec img = rmats[r].apply(basis[j]);
                for (const auto& [i, c] : img) sys.add(r * wide.dim() + i, j, c);
            }
        auto red = rref(sys);
        if (red.kernel.dim() == 0) continue;
        // dominance per factor
        bool dominant = true;
        std::size_t pos = 0;
        for (std::size_t f = 0; f < factor_ranks.size() && dominant; ++f) {
            for (std::size_t i = 1; i < factor_ranks[f]; ++i)
                if (w[pos + i] > w[pos + i - 1]) { dominant = false; break; }
            pos += factor_ranks[f];
        }
        if (!dominant) continue;

        KTypeLabel label;
        pos = 0;
        for (std::size_t f = 0; f < factor_ranks.size(); ++f) {
            std::vector<Rational> ev(w.begin() + pos, w.begin() + pos + factor_ranks[f]);
            // split integral weight + half-integer shift
            Rational shift(0);
            if (!ev.empty()) {
                Rational fr = ev[0] - Rational(ev[0].floor());
                shift = fr;
            }
            std::vector<int> ints;
            for (const auto& e : ev) {
                Rational d = e - shift;
                if (!d.is_integer())
                    throw std::logic_error("isotypic_decompose: non-uniform shift inside a factor");
                ints.push_back(static_cast<int>(static_cast<long>(d.floor())));
            }
            label.factors.emplace_back(UTypeLabel(GLWeight(std::move(ints)), shift));
            pos += factor_ranks[f];
        }

        IsotypicComponent comp;
        comp.label = label;
        comp.multiplicity = static_cast<long>(red.kernel.dim());
        comp.degree = slice.lo();
        // kernel vectors are in basis coordinates; map back to slice coords
        for (const auto& kv : red.kernel.basis()) {
            SparseVec v;
            for (const auto& [j, c] : kv) vec_add_scaled(v, basis[j], c);
            comp.highest_weight_vectors.push_back(std::move(v));
        }
        out.push_back(std::move(comp));
    }
    return out;
}

/// Full-slice decomposition under torus + raising generators paired with
/// bracket-closure responsibility on the caller's side.
inline std::vector<IsotypicComponent>
isotypic_decompose(const CompactStructure& k, const GradedSlice& slice) {
    std::vector<SparseVec> full;
    for (std::size_t i = 0; i < slice.dim(); ++i) {
        SparseVec v;
        v[i] = GQ(1);
        full.push_back(std::move(v));
    }
    return isotypic_decompose_subspace(k, slice, full);
}

/// Intersection of kernels of (op - eigen * id) over a degree slice, then
/// of the +/- eigenspaces of sign involutions.  The building block of every
/// character-isotypic projection.
inline std::vector<SparseVec>
joint_eigenspace(const GradedSlice& slice, const std::vector<WeylElement>& ops,
                 const std::vector<Rational>& eigen,
                 const std::vector<std::vector<int>>& involutions,
                 const std::vector<int>& signs) {
    // all ops together in one stacked kernel computation
    int maxdeg = 0;
    for (const auto& o : ops) maxdeg = std::max(maxdeg, o.filtration_degree());
    GradedSlice wide(slice.space(), slice.lo() - maxdeg, slice.hi() + maxdeg);
    SparseMatrix sys(ops.size() * wide.dim(), slice.dim());
    for (std::size_t r = 0; r < ops.size(); ++r) {
        SparseMatrix m = operator_matrix(ops[r], slice, wide);
        for (const auto& [rc, c] : m.entries()) sys.add(r * wide.dim() + rc.first, rc.second, c);
        if (!eigen[r].is_zero()) {
            for (std::size_t j = 0; j < slice.dim(); ++j) {
                auto idx = wide.index_of(slice.basis()[j]);
                if (!idx) throw std::logic_error("joint_eigenspace: slice not inside window");
                sys.add(r * wide.dim() + *idx, j, GQ(-eigen[r]));
            }
        }
    }
    auto red = rref(sys);
    std::vector<SparseVec> vecs = red.kernel.basis();

    for (std::size_t t = 0; t < involutions.size(); ++t) {
        // project each vector to the sign eigenspace; involution is diagonal
        std::vector<SparseVec> next;
        for (const auto& v : vecs) {
            SparseVec keep;
            for (const auto& [i, c] : v)
                if (involution_sign(involutions[t], slice.basis()[i]) == signs[t]) keep[i] = c;
            if (!keep.empty()) next.push_back(std::move(keep));
        }
        Subspace s = Subspace::from_spanning(slice.dim(), next);
        vecs = s.basis();
    }
    return vecs;
}

/// Basis of the Omega filtration level <= k as Weyl monomials, graded-lex.
inline std::vector<WeylMonomial> omega_basis(const SymplecticSpace& sp, int k) {
    std::vector<WeylMonomial> out;
    GradedSlice all(SymplecticSpace{2 * sp.n_pairs}, 0, k);  // exponents over 2N slots
    for (const auto& e : all.basis()) {
        WeylMonomial m;
        m.xexp.assign(e.begin(), e.begin() + sp.n_pairs);
        m.aexp.assign(e.begin() + sp.n_pairs, e.end());
        out.push_back(std::move(m));
    }
    return out;
}

inline SparseVec omega_coordinates(const WeylElement& w,
                                   const std::map<WeylMonomial, std::size_t>& index) {
    SparseVec v;
    for (const auto& [m, c] : w.terms()) {
        auto it = index.find(m);
        if (it == index.end()) throw std::out_of_range("omega_coordinates: term beyond filtration");
        v[it->second] = c;
    }
    return v;
}

/// Conjugate a Weyl element by a variable sign involution R (R w R^{-1}):
/// each term picks up (-1)^(flipped degree).
inline WeylElement conjugate_by_involution(const WeylElement& w, const std::vector<int>& mask) {
    WeylElement out(w.space());
    for (const auto& [m, c] : w.terms()) {
        long s = 0;
        for (std::size_t i = 0; i < mask.size(); ++i)
            if (mask[i]) s += m.xexp[i] + m.aexp[i];
        out.add_term(m, (s % 2 == 0) ? c : -c);
    }
    return out;
}

/// {z in Omega_{<=k} : [g, z] = 0 for all generators, R z R^{-1} = z for all
/// component involutions}, as a canonical Subspace in monomial coordinates.
inline Subspace ad_invariants(const std::vector<WeylElement>& gens,
                              const std::vector<std::vector<int>>& involutions,
                              const SymplecticSpace& sp, int k) {
    auto basis = omega_basis(sp, k);
    std::map<WeylMonomial, std::size_t> index;
    for (std::size_t i = 0; i < basis.size(); ++i) index[basis[i]] = i;

    std::size_t rows = (gens.size() + involutions.size()) * basis.size();
    SparseMatrix sys(rows == 0 ? 1 : rows, basis.size());
    for (std::size_t r = 0; r < gens.size(); ++r) {
        for (std::size_t j = 0; j < basis.size(); ++j) {
            WeylElement bj(sp);
            bj.add_term(basis[j], GQ(1));
            WeylElement br = bracket(gens[r], bj);
            for (const auto& [idx, c] : omega_coordinates(br, index))
                sys.add(r * basis.size() + idx, j, c);
        }
    }
    for (std::size_t t = 0; t < involutions.size(); ++t) {
        std::size_t base = (gens.size() + t) * basis.size();
        for (std::size_t j = 0; j < basis.size(); ++j) {
            long s = 0;
            for (std::size_t i = 0; i < involutions[t].size(); ++i)
                if (involutions[t][i]) s += basis[j].xexp[i] + basis[j].aexp[i];
            if (s % 2 != 0) sys.add(base + j, j, GQ(1));  // (R . R^{-1} - 1) kills odd terms
        }
    }
    auto red = rref(sys);
    return red.kernel;
}

} // namespace thetak

#endif
