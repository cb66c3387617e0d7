#ifndef THETAK_DUALPAIR_HPP
#define THETAK_DUALPAIR_HPP

#include "thetak/isotypic.hpp"
#include "thetak/ktype.hpp"
#include "thetak/weyl.hpp"

#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace thetak {

enum class PairFamily { A, C, D };

inline char family_letter(PairFamily f) {
    switch (f) {
        case PairFamily::A: return 'A';
        case PairFamily::C: return 'C';
        case PairFamily::D: return 'D';
    }
    return '?';
}

/// Immutable description of a real reductive dual pair.
///   A: (U(a,b), U(c,d))            g = (a,b), g' = (c,d)
///   C: (Sp(2n,R), O(p,q))          g = (n,0), g' = (p,q)
///   D: (O*(2n), Sp(p,q))           g = (n,0), g' = (p,q)
struct DualPairDescriptor {
    PairFamily family = PairFamily::C;
    std::pair<int, int> g_sig{0, 0};
    std::pair<int, int> gp_sig{0, 0};

    int g_size() const { return g_sig.first + g_sig.second; }
    int gp_size() const { return gp_sig.first + gp_sig.second; }

    /// Fock variable count of the realization.
    std::size_t fock_variables() const {
        switch (family) {
            case PairFamily::A: return static_cast<std::size_t>(g_size()) * gp_size();
            case PairFamily::C: return static_cast<std::size_t>(g_sig.first) * gp_size();
            case PairFamily::D: return 2u * g_sig.first * gp_size();
        }
        return 0;
    }

    void validate() const {
        auto nonneg = [](std::pair<int, int> s) { return s.first >= 0 && s.second >= 0; };
        if (!nonneg(g_sig) || !nonneg(gp_sig))
            throw std::invalid_argument("DualPairDescriptor: negative signature");
        switch (family) {
            case PairFamily::A:
                if (g_size() <= 0 || gp_size() <= 0)
                    throw std::invalid_argument("DualPairDescriptor: empty member");
                break;
            case PairFamily::C:
            case PairFamily::D:
                if (g_sig.first <= 0 || g_sig.second != 0)
                    throw std::invalid_argument("DualPairDescriptor: first member takes a single size");
                if (gp_size() <= 0)
                    throw std::invalid_argument("DualPairDescriptor: empty second member");
                break;
        }
    }

    std::string str() const {
        std::ostringstream os;
        switch (family) {
            case PairFamily::A:
                os << "A:u(" << g_sig.first << ',' << g_sig.second << ")/u(" << gp_sig.first
                   << ',' << gp_sig.second << ')';
                break;
            case PairFamily::C:
                os << "C:sp(" << 2 * g_sig.first << ")/o(" << gp_sig.first << ',' << gp_sig.second << ')';
                break;
            case PairFamily::D:
                os << "D:ostar(" << 2 * g_sig.first << ")/sp(" << gp_sig.first << ',' << gp_sig.second << ')';
                break;
        }
        return os.str();
    }

    friend bool operator==(const DualPairDescriptor& a, const DualPairDescriptor& b) {
        return a.family == b.family && a.g_sig == b.g_sig && a.gp_sig == b.gp_sig;
    }
};

/// Basis element of W_C in the natural tensor basis: (row side, col side)
/// with independent duality flags.  Each natural line equals factor * e_v
/// or factor * f_v for a unique Fock variable v.
struct NaturalLine {
    bool row_star = false;
    bool col_star = false;
    std::size_t row = 0, col = 0, half = 0;  // half distinguishes the two D-type column copies
};

/// Realized dual pair: the ambient symplectic space, the natural-basis
/// dictionary, and both generator sets with compact metadata.
struct LieGeneratorSet {
    std::vector<SpMatrix> mats;
    std::vector<WeylElement> gens;
    std::vector<std::string> labels;
    CompactStructure compact;
    /// Sign-flip masks for the component group of the member (empty when
    /// the member is connected).
    std::vector<std::vector<int>> component_involutions;
    /// Diagonal (torus) generator indices into gens, per U/O factor layout.
    std::vector<std::size_t> diagonal_indices;
};

class PairRealization {
public:
    DualPairDescriptor desc;
    SymplecticSpace space;
    LieGeneratorSet g, gp;

    /// natural line -> (is_e, variable index, scalar factor)
    struct LineTarget {
        bool is_e = true;
        std::size_t var = 0;
        GQ factor = GQ(1);
    };

    std::map<std::tuple<bool, bool, std::size_t, std::size_t, std::size_t>, LineTarget> dict;
    std::vector<NaturalLine> lines;  // by flat line index

    LineTarget target(const NaturalLine& l) const {
        auto it = dict.find({l.row_star, l.col_star, l.row, l.col, l.half});
        if (it == dict.end()) throw std::logic_error("PairRealization: unknown natural line");
        return it->second;
    }

    /// Column of an sp matrix: image of e_v / f_v expressed through natural
    /// line images.  Builders fill matrices through this helper.
    void add_natural_entry(SpMatrix& m, const NaturalLine& from, const NaturalLine& to,
                           const GQ& coeff) const {
        LineTarget tf = target(from), tt = target(to);
        // from = factor_f * basis_from; to = factor_t * basis_to
        // basis_from -> coeff * factor_t / factor_f ... careful:
        // natural_to = T(natural_from) contributes T(basis_from) =
        //   (factor_t * coeff / factor_f) basis_to
        std::size_t N = space.n_pairs;
        std::size_t bf = (tf.is_e ? 0 : N) + tf.var;
        std::size_t bt = (tt.is_e ? 0 : N) + tt.var;
        m.at(bt, bf) += tt.factor * coeff / tf.factor;
    }
};

namespace detail {

inline void push_gen(LieGeneratorSet& set, const PairRealization& pr, SpMatrix m, std::string label) {
    if (!m.is_sp()) throw std::logic_error("push_gen: matrix not symplectic: " + label);
    set.mats.push_back(m);
    set.gens.push_back(omega_c(m));
    set.labels.push_back(std::move(label));
}

} // namespace detail

/// Construct the realization of a dual pair on its Fock model, with the
/// global polarization fixed (creations x_v, annihilations a_v).  All
/// generator matrices are validated symplectic; closure and mutual
/// commutation are contract tests in the suite.
inline PairRealization build_pair(const DualPairDescriptor& d) {
    d.validate();
    PairRealization pr;
    pr.desc = d;
    pr.space = SymplecticSpace{d.fock_variables()};

    auto line = [](bool rs, bool cs, std::size_t r, std::size_t c, std::size_t h = 0) {
        return NaturalLine{rs, cs, r, c, h};
    };
    auto key = [](const NaturalLine& l) {
        return std::make_tuple(l.row_star, l.col_star, l.row, l.col, l.half);
    };

    if (d.family == PairFamily::C) {
        int n = d.g_sig.first, p = d.gp_sig.first, q = d.gp_sig.second, m = p + q;
        auto var = [&](int a, int j) { return static_cast<std::size_t>(a) * m + j; };
        auto eps = [&](int j) { return j < p ? 1 : -1; };
        // e/f dictionary: positive columns use (u, u*), negative swap them
        for (int a = 0; a < n; ++a)
            for (int j = 0; j < m; ++j) {
                NaturalLine P = line(false, false, a, j), Q = line(true, false, a, j);
                if (eps(j) > 0) {
                    pr.dict[key(P)] = {true, var(a, j), GQ(1)};
                    pr.dict[key(Q)] = {false, var(a, j), GQ(1)};
                } else {
                    pr.dict[key(Q)] = {true, var(a, j), GQ(1)};
                    pr.dict[key(P)] = {false, var(a, j), GQ(1)};
                }
            }

        // g = sp(2n): gl block E_ab, raising S+_ab, lowering S-_ab
        UFactorAction kfac;
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) {
                SpMatrix mat(pr.space);
                for (int j = 0; j < m; ++j) {
                    pr.add_natural_entry(mat, line(false, false, b, j), line(false, false, a, j), GQ(1));
                    pr.add_natural_entry(mat, line(true, false, a, j), line(true, false, b, j), GQ(-1));
                }
                std::ostringstream lbl;
                lbl << "E_" << a + 1 << b + 1;
                detail::push_gen(pr.g, pr, mat, lbl.str());
                if (a == b) {
                    pr.g.diagonal_indices.push_back(pr.g.gens.size() - 1);
                    kfac.torus.push_back(pr.g.gens.back());
                } else if (a < b) {
                    kfac.raising.push_back(pr.g.gens.back());
                }
            }
        for (int a = 0; a < n; ++a)
            for (int b = a; b < n; ++b) {
                SpMatrix up(pr.space), dn(pr.space);
                for (int j = 0; j < m; ++j) {
                    pr.add_natural_entry(up, line(true, false, b, j), line(false, false, a, j), GQ(1));
                    pr.add_natural_entry(up, line(true, false, a, j), line(false, false, b, j), GQ(1));
                    pr.add_natural_entry(dn, line(false, false, b, j), line(true, false, a, j), GQ(1));
                    pr.add_natural_entry(dn, line(false, false, a, j), line(true, false, b, j), GQ(1));
                }
                std::ostringstream l1, l2;
                l1 << "S+_" << a + 1 << b + 1;
                l2 << "S-_" << a + 1 << b + 1;
                detail::push_gen(pr.g, pr, up, l1.str());
                detail::push_gen(pr.g, pr, dn, l2.str());
            }
        pr.g.compact.factors.push_back(kfac);

        // g' = o(p,q): C_jk = E_jk - eps_j eps_k E_kj on the column side
        OFactorAction op_fac, oq_fac;
        op_fac.n = p;
        oq_fac.n = q;
        for (int j = 0; j < m; ++j)
            for (int kcol = j + 1; kcol < m; ++kcol) {
                SpMatrix mat(pr.space);
                GQ sg(-eps(j) * eps(kcol));
                for (int a = 0; a < n; ++a) {
                    pr.add_natural_entry(mat, line(false, false, a, kcol), line(false, false, a, j), GQ(1));
                    pr.add_natural_entry(mat, line(false, false, a, j), line(false, false, a, kcol), sg);
                    pr.add_natural_entry(mat, line(true, false, a, kcol), line(true, false, a, j), GQ(1));
                    pr.add_natural_entry(mat, line(true, false, a, j), line(true, false, a, kcol), sg);
                }
                std::ostringstream lbl;
                lbl << "C_" << j + 1 << kcol + 1;
                detail::push_gen(pr.gp, pr, mat, lbl.str());
                if (kcol < p) op_fac.rotations.push_back(pr.gp.gens.back());
                else if (j >= p) oq_fac.rotations.push_back(pr.gp.gens.back());
            }
        auto col_mask = [&](int j) {
            std::vector<int> mask(pr.space.n_pairs, 0);
            for (int a = 0; a < n; ++a) mask[var(a, j)] = 1;
            return mask;
        };
        if (p >= 1) {
            op_fac.reflections.push_back(col_mask(0));
            pr.gp.component_involutions.push_back(col_mask(0));
        }
        if (q >= 1) {
            oq_fac.reflections.push_back(col_mask(p));
            pr.gp.component_involutions.push_back(col_mask(p));
        }
        if (p > 0) pr.gp.compact.factors.push_back(op_fac);
        if (q > 0) pr.gp.compact.factors.push_back(oq_fac);
    } else if (d.family == PairFamily::A) {
        int a = d.g_sig.first, b = d.g_sig.second, c = d.gp_sig.first, dd = d.gp_sig.second;
        int rows = a + b, cols = c + dd;
        auto var = [&](int i, int al) { return static_cast<std::size_t>(i) * cols + al; };
        auto sigma = [&](int i, int al) { return ((i < a) == (al < c)) ? 1 : -1; };
        // P(i,al) = u_i (x) v_al, Q(i,al) = u*_i (x) v*_al
        for (int i = 0; i < rows; ++i)
            for (int al = 0; al < cols; ++al) {
                NaturalLine P = line(false, false, i, al), Q = line(true, true, i, al);
                if (sigma(i, al) > 0) {
                    pr.dict[key(P)] = {true, var(i, al), GQ(1)};
                    pr.dict[key(Q)] = {false, var(i, al), GQ(1)};
                } else {
                    pr.dict[key(Q)] = {true, var(i, al), GQ(1)};
                    pr.dict[key(P)] = {false, var(i, al), GQ(-1)};
                }
            }
        // g = gl(rows): E_ik
        UFactorAction ka, kb;
        for (int i = 0; i < rows; ++i)
            for (int kk = 0; kk < rows; ++kk) {
                SpMatrix mat(pr.space);
                for (int al = 0; al < cols; ++al) {
                    pr.add_natural_entry(mat, line(false, false, kk, al), line(false, false, i, al), GQ(1));
                    pr.add_natural_entry(mat, line(true, true, i, al), line(true, true, kk, al), GQ(-1));
                }
                std::ostringstream lbl;
                lbl << "E_" << i + 1 << kk + 1;
                detail::push_gen(pr.g, pr, mat, lbl.str());
                bool in_a = i < a && kk < a, in_b = i >= a && kk >= a;
                if (i == kk) {
                    pr.g.diagonal_indices.push_back(pr.g.gens.size() - 1);
                    (i < a ? ka : kb).torus.push_back(pr.g.gens.back());
                } else if (i < kk && (in_a || in_b)) {
                    (in_a ? ka : kb).raising.push_back(pr.g.gens.back());
                }
            }
        if (a > 0) pr.g.compact.factors.push_back(ka);
        if (b > 0) pr.g.compact.factors.push_back(kb);
        // g' = gl(cols): E'_{al be}
        UFactorAction kc, kd;
        for (int al = 0; al < cols; ++al)
            for (int be = 0; be < cols; ++be) {
                SpMatrix mat(pr.space);
                for (int i = 0; i < rows; ++i) {
                    pr.add_natural_entry(mat, line(false, false, i, be), line(false, false, i, al), GQ(1));
                    pr.add_natural_entry(mat, line(true, true, i, al), line(true, true, i, be), GQ(-1));
                }
                std::ostringstream lbl;
                lbl << "E'_" << al + 1 << be + 1;
                detail::push_gen(pr.gp, pr, mat, lbl.str());
                bool in_c = al < c && be < c, in_d = al >= c && be >= c;
                if (al == be) {
                    pr.gp.diagonal_indices.push_back(pr.gp.gens.size() - 1);
                    (al < c ? kc : kd).torus.push_back(pr.gp.gens.back());
                } else if (al < be && (in_c || in_d)) {
                    (in_c ? kc : kd).raising.push_back(pr.gp.gens.back());
                }
            }
        if (c > 0) pr.gp.compact.factors.push_back(kc);
        if (dd > 0) pr.gp.compact.factors.push_back(kd);
    } else {
        // D: (O*(2n), Sp(p,q)) on W = C^{2n} (x) C^{2(p+q)}
        int n = d.g_sig.first, p = d.gp_sig.first, q = d.gp_sig.second, m = p + q;
        auto var = [&](int i, int al, int h) {
            return (static_cast<std::size_t>(i) * m + al) * 2 + h;
        };
        auto delta = [&](int al) { return al < p ? 1 : -1; };
        // lines: (row_star, col_star, i, al): l/l* (x) m/m*
        for (int i = 0; i < n; ++i)
            for (int al = 0; al < m; ++al) {
                NaturalLine lm = line(false, false, i, al), lms = line(false, true, i, al);
                NaturalLine lsm = line(true, false, i, al), lsms = line(true, true, i, al);
                if (delta(al) > 0) {
                    pr.dict[key(lm)] = {true, var(i, al, 0), GQ(1)};
                    pr.dict[key(lms)] = {true, var(i, al, 1), GQ(1)};
                    pr.dict[key(lsms)] = {false, var(i, al, 0), GQ(1)};
                    pr.dict[key(lsm)] = {false, var(i, al, 1), GQ(-1)};
                } else {
                    pr.dict[key(lsm)] = {true, var(i, al, 0), GQ(1)};
                    pr.dict[key(lsms)] = {true, var(i, al, 1), GQ(1)};
                    pr.dict[key(lms)] = {false, var(i, al, 0), GQ(1)};
                    pr.dict[key(lm)] = {false, var(i, al, 1), GQ(-1)};
                }
            }
        // g = o(2n): gl(n) block + Lambda+/- (antisymmetric)
        UFactorAction kfac;
        for (int i = 0; i < n; ++i)
            for (int kk = 0; kk < n; ++kk) {
                SpMatrix mat(pr.space);
                for (int al = 0; al < m; ++al)
                    for (int cs = 0; cs < 2; ++cs) {
                        pr.add_natural_entry(mat, line(false, cs, kk, al), line(false, cs, i, al), GQ(1));
                        pr.add_natural_entry(mat, line(true, cs, i, al), line(true, cs, kk, al), GQ(-1));
                    }
                std::ostringstream lbl;
                lbl << "E_" << i + 1 << kk + 1;
                detail::push_gen(pr.g, pr, mat, lbl.str());
                if (i == kk) {
                    pr.g.diagonal_indices.push_back(pr.g.gens.size() - 1);
                    kfac.torus.push_back(pr.g.gens.back());
                } else if (i < kk) {
                    kfac.raising.push_back(pr.g.gens.back());
                }
            }
        for (int i = 0; i < n; ++i)
            for (int kk = i + 1; kk < n; ++kk) {
                SpMatrix up(pr.space), dn(pr.space);
                for (int al = 0; al < m; ++al)
                    for (int cs = 0; cs < 2; ++cs) {
                        pr.add_natural_entry(up, line(true, cs, kk, al), line(false, cs, i, al), GQ(1));
                        pr.add_natural_entry(up, line(true, cs, i, al), line(false, cs, kk, al), GQ(-1));
                        pr.add_natural_entry(dn, line(false, cs, kk, al), line(true, cs, i, al), GQ(1));
                        pr.add_natural_entry(dn, line(false, cs, i, al), line(true, cs, kk, al), GQ(-1));
                    }
                std::ostringstream l1, l2;
                l1 << "L+_" << i + 1 << kk + 1;
                l2 << "L-_" << i + 1 << kk + 1;
                detail::push_gen(pr.g, pr, up, l1.str());
                detail::push_gen(pr.g, pr, dn, l2.str());
            }
        pr.g.compact.factors.push_back(kfac);
        // g' = sp(2m over the column space): D_ab, Sigma+/- (symmetric)
        UFactorAction kp, kq;  // tori of Sp(p) x Sp(q) compact parts
        auto same_block = [&](int al, int be) { return (al < p) == (be < p); };
        for (int al = 0; al < m; ++al)
            for (int be = 0; be < m; ++be) {
                SpMatrix mat(pr.space);
                for (int i = 0; i < n; ++i)
                    for (int rs = 0; rs < 2; ++rs) {
                        pr.add_natural_entry(mat, line(rs, false, i, be), line(rs, false, i, al), GQ(1));
                        pr.add_natural_entry(mat, line(rs, true, i, al), line(rs, true, i, be), GQ(-1));
                    }
                std::ostringstream lbl;
                lbl << "D_" << al + 1 << be + 1;
                detail::push_gen(pr.gp, pr, mat, lbl.str());
                if (al == be) {
                    pr.gp.diagonal_indices.push_back(pr.gp.gens.size() - 1);
                    (al < p ? kp : kq).torus.push_back(pr.gp.gens.back());
                } else if (al < be && same_block(al, be)) {
                    (al < p ? kp : kq).raising.push_back(pr.gp.gens.back());
                }
            }
        for (int al = 0; al < m; ++al)
            for (int be = al; be < m; ++be) {
                SpMatrix up(pr.space), dn(pr.space);
                for (int i = 0; i < n; ++i)
                    for (int rs = 0; rs < 2; ++rs) {
                        pr.add_natural_entry(up, line(rs, true, i, be), line(rs, false, i, al), GQ(1));
                        pr.add_natural_entry(up, line(rs, true, i, al), line(rs, false, i, be), GQ(1));
                        pr.add_natural_entry(dn, line(rs, false, i, be), line(rs, true, i, al), GQ(1));
                        pr.add_natural_entry(dn, line(rs, false, i, al), line(rs, true, i, be), GQ(1));
                    }
                std::ostringstream l1, l2;
                l1 << "Sg+_" << al + 1 << be + 1;
                l2 << "Sg-_" << al + 1 << be + 1;
                detail::push_gen(pr.gp, pr, up, l1.str());
                if (same_block(al, be)) (al < p ? kp : kq).raising.push_back(pr.gp.gens.back());
                detail::push_gen(pr.gp, pr, dn, l2.str());
            }
        if (p > 0) pr.gp.compact.factors.push_back(kp);
        if (q > 0) pr.gp.compact.factors.push_back(kq);
    }
    return pr;
}

/// Exact predicate of the stable range rows of the two transfer tables.
/// table 1: the (G, G'_{p,q}) columns; table 2: the (G_{p,q}, G') rows.
inline bool stable_range_table1(PairFamily f, int n, int p, int q) {
    switch (f) {
        case PairFamily::A:
        case PairFamily::C: return n >= p + q;
        case PairFamily::D: return n >= 2 * (p + q);
    }
    return false;
}

inline bool stable_range_table2(PairFamily f, int p, int q, int n) {
    switch (f) {
        case PairFamily::A: return p >= n && q >= n;
        case PairFamily::C: return p >= n && q >= n;
        case PairFamily::D: return p >= 2 * n && q >= 2 * n && std::max(p, q) > 2 * n;
    }
    return false;
}

/// Stable-range predicate for a descriptor with the second member smaller.
inline bool stable_range(const DualPairDescriptor& d) {
    switch (d.family) {
        case PairFamily::A: {
            // (U(a,b), U(c,d)) in the range of table 2 reading (p,q) = (a,b)
            return stable_range_table2(PairFamily::A, d.g_sig.first, d.g_sig.second, d.gp_size());
        }
        case PairFamily::C:
            return stable_range_table1(PairFamily::C, d.g_sig.first, d.gp_sig.first, d.gp_sig.second);
        case PairFamily::D:
            return stable_range_table1(PairFamily::D, d.g_sig.first, d.gp_sig.first, d.gp_sig.second);
    }
    return false;
}

/// j(p,q) of transfer table 1.
inline int degree_j(PairFamily f, int r, int s, int p, int q) {
    auto bounds_ok = [&] {
        if (f == PairFamily::D) return 0 <= 2 * p && 2 * p <= r && 0 <= 2 * q && 2 * q <= s;
        return 0 <= p && p <= r && 0 <= q && q <= s;
    };
    if (!bounds_ok()) throw std::domain_error("degree_j: (p,q) outside the theorem's bounds");
    switch (f) {
        case PairFamily::A: return r * s - (r - p) * (s - q);
        case PairFamily::C: return 2 * (r * s - (r - p) * (s - q));
        case PairFamily::D: return r * s - (r - 2 * p) * (s - 2 * q);
    }
    throw std::logic_error("degree_j: bad family");
}

/// j_0 of transfer table 2.
inline int degree_j0(PairFamily f, int n_or_n1, int n2, int r) {
    switch (f) {
        case PairFamily::A: return (n_or_n1 + n2) * r;
        case PairFamily::C: return 2 * n_or_n1 * r;
        case PairFamily::D: return n_or_n1 * r;
    }
    throw std::logic_error("degree_j0: bad family");
}

/// The character 1^{xi,eta} of O(p,q) attached to (p,q) in the type C
/// theorem: xi = eps - (s - q), eta = eps - (r - p) mod 2.
struct OpqCharacter {
    int p = 0, q = 0;
    int xi = 0, eta = 0;
};

inline OpqCharacter rho_pq(PairFamily f, int eps, int r, int s, int p, int q) {
    if (f != PairFamily::C) throw std::invalid_argument("rho_pq: type C only");
    if (p < 0 || p > r || q < 0 || q > s) throw std::domain_error("rho_pq: bounds violated");
    OpqCharacter c;
    c.p = p;
    c.q = q;
    c.xi = ((eps - (s - q)) % 2 + 2) % 2;
    c.eta = ((eps - (r - p)) % 2 + 2) % 2;
    return c;
}

/// Span of flattened sp matrices, for exact containment checks.
inline Subspace matrix_span(const std::vector<SpMatrix>& mats, const SymplecticSpace& sp) {
    std::size_t d = sp.dim();
    std::vector<SparseVec> rows;
    for (const auto& m : mats) {
        SparseVec v;
        for (std::size_t r = 0; r < d; ++r)
            for (std::size_t c = 0; c < d; ++c)
                if (!m.at(r, c).is_zero()) v[r * d + c] = m.at(r, c);
        rows.push_back(std::move(v));
    }
    return Subspace::from_spanning(d * d, std::move(rows));
}

/// See-saw arrangement: outer pair (G, G') and inner pair (H, H') realized
/// on the same Fock model, with H < G and G' < H' proven by exact span
/// membership at construction.
struct SeesawConfig {
    PairRealization outer;
    DualPairDescriptor inner_desc_h, inner_desc_hp;
    LieGeneratorSet h, hp;
    int r = 0, s = 0;  // row split of H inside G (type C/A bookkeeping)
};

namespace detail {

/// h = the sigma_2-rotated gl(n) copy inside sp(2n): within-block E, across
/// blocks the raising/lowering quadratics.  Abstract basis element (c,d)
/// is stored with label "H_cd".
inline LieGeneratorSet seesaw_h_type_c(const PairRealization& pr, int r, int s) {
    int n = pr.desc.g_sig.first;
    if (r + s != n) throw std::invalid_argument("seesaw_h_type_c: r + s != n");
    int m = pr.desc.gp_size();
    auto line = [](bool rs, std::size_t a, std::size_t j) {
        return NaturalLine{rs, false, a, j, 0};
    };
    LieGeneratorSet h;
    UFactorAction fr, fs;
    auto blk = [&](int c) { return c < r ? 0 : 1; };
    for (int c = 0; c < n; ++c)
        for (int d = 0; d < n; ++d) {
            SpMatrix mat(pr.space);
            for (int j = 0; j < m; ++j) {
                if (blk(c) == 0 && blk(d) == 0) {
                    pr.add_natural_entry(mat, line(false, d, j), line(false, c, j), GQ(1));
                    pr.add_natural_entry(mat, line(true, c, j), line(true, d, j), GQ(-1));
                } else if (blk(c) == 1 && blk(d) == 1) {
                    // -E_dc
                    pr.add_natural_entry(mat, line(false, c, j), line(false, d, j), GQ(-1));
                    pr.add_natural_entry(mat, line(true, d, j), line(true, c, j), GQ(1));
                } else if (blk(c) == 0 && blk(d) == 1) {
                    // raising: u*_d -> u_c, u*_c -> u_d  (S+_{cd})
                    pr.add_natural_entry(mat, line(true, d, j), line(false, c, j), GQ(1));
                    pr.add_natural_entry(mat, line(true, c, j), line(false, d, j), GQ(1));
                } else {
                    // lowering: S-_{dc}: u_c -> u*_d, u_d -> u*_c
                    pr.add_natural_entry(mat, line(false, c, j), line(true, d, j), GQ(1));
                    pr.add_natural_entry(mat, line(false, d, j), line(true, c, j), GQ(1));
                }
            }
            std::ostringstream lbl;
            lbl << "H_" << c + 1 << d + 1;
            push_gen(h, pr, mat, lbl.str());
            if (c == d) {
                h.diagonal_indices.push_back(h.gens.size() - 1);
                (c < r ? fr : fs).torus.push_back(h.gens.back());
            } else if (c < d && blk(c) == blk(d)) {
                (blk(c) == 0 ? fr : fs).raising.push_back(h.gens.back());
            }
        }
    if (r > 0) h.compact.factors.push_back(fr);
    if (s > 0) h.compact.factors.push_back(fs);
    return h;
}

/// h' = the U(m) (or U(p', q') for mixed column signature) partner of
/// U(r,s): column operators twisted by the H row blocks.
inline LieGeneratorSet seesaw_hp_type_c(const PairRealization& pr, int r, int s) {
    int n = pr.desc.g_sig.first, m = pr.desc.gp_size(), p = pr.desc.gp_sig.first;
    if (r + s != n) throw std::invalid_argument("seesaw_hp_type_c: r + s != n");
    auto line = [](bool rs, std::size_t a, std::size_t j) {
        return NaturalLine{rs, false, a, j, 0};
    };
    LieGeneratorSet hp;
    UFactorAction fp, fq;  // U(p') x U(q') blocks by column sign
    auto eps = [&](int j) { return j < p ? 1 : -1; };
    for (int al = 0; al < m; ++al)
        for (int be = 0; be < m; ++be) {
            SpMatrix mat(pr.space);
            GQ dual_coeff(-eps(al) * eps(be));  // B-weighted dual action
            for (int a = 0; a < n; ++a) {
                bool star = a >= r;  // std slot: u_a for a<r, u*_a for a>=r
                pr.add_natural_entry(mat, line(star, a, be), line(star, a, al), GQ(1));
                pr.add_natural_entry(mat, line(!star, a, al), line(!star, a, be), dual_coeff);
            }
            std::ostringstream lbl;
            lbl << "H'_" << al + 1 << be + 1;
            push_gen(hp, pr, mat, lbl.str());
            bool in_p = al < p && be < p, in_q = al >= p && be >= p;
            if (al == be) {
                hp.diagonal_indices.push_back(hp.gens.size() - 1);
                (al < p ? fp : fq).torus.push_back(hp.gens.back());
            } else if (al < be && (in_p || in_q)) {
                (in_p ? fp : fq).raising.push_back(hp.gens.back());
            }
        }
    if (p > 0) hp.compact.factors.push_back(fp);
    if (m - p > 0) hp.compact.factors.push_back(fq);
    return hp;
}

/// Type A inner member: the row-subset copies of g (an H factor) and the
/// per-subset column operators (its H' partner).
inline LieGeneratorSet inner_row_member_type_a(const PairRealization& pr,
                                               int row_lo, int row_hi, int split) {
    // rows [row_lo, row_hi) with the first `split` of them positive
    int cols = pr.desc.gp_size();
    auto line = [](bool st, std::size_t i, std::size_t al) {
        return NaturalLine{st, st, i, al, 0};
    };
    LieGeneratorSet h;
    UFactorAction fpos, fneg;
    for (int i = row_lo; i < row_hi; ++i)
        for (int k = row_lo; k < row_hi; ++k) {
            SpMatrix mat(pr.space);
            for (int al = 0; al < cols; ++al) {
                pr.add_natural_entry(mat, line(false, k, al), line(false, i, al), GQ(1));
                pr.add_natural_entry(mat, line(true, i, al), line(true, k, al), GQ(-1));
            }
            std::ostringstream lbl;
            lbl << "H_" << i + 1 << k + 1;
            push_gen(h, pr, mat, lbl.str());
            bool in_pos = i < row_lo + split && k < row_lo + split;
            bool in_neg = i >= row_lo + split && k >= row_lo + split;
            if (i == k) {
                h.diagonal_indices.push_back(h.gens.size() - 1);
                (i < row_lo + split ? fpos : fneg).torus.push_back(h.gens.back());
            } else if (i < k && (in_pos || in_neg)) {
                (in_pos ? fpos : fneg).raising.push_back(h.gens.back());
            }
        }
    if (split > 0) h.compact.factors.push_back(fpos);
    if (row_hi - row_lo - split > 0) h.compact.factors.push_back(fneg);
    return h;
}

inline LieGeneratorSet inner_col_member_type_a(const PairRealization& pr,
                                               int row_lo, int row_hi) {
    int cols = pr.desc.gp_size();
    int c = pr.desc.gp_sig.first;
    auto line = [](bool st, std::size_t i, std::size_t al) {
        return NaturalLine{st, st, i, al, 0};
    };
    LieGeneratorSet hp;
    UFactorAction fc, fd;
    for (int al = 0; al < cols; ++al)
        for (int be = 0; be < cols; ++be) {
            SpMatrix mat(pr.space);
            for (int i = row_lo; i < row_hi; ++i) {
                pr.add_natural_entry(mat, line(false, i, be), line(false, i, al), GQ(1));
                pr.add_natural_entry(mat, line(true, i, al), line(true, i, be), GQ(-1));
            }
            std::ostringstream lbl;
            lbl << "H'_" << al + 1 << be + 1 << "@" << row_lo + 1;
            push_gen(hp, pr, mat, lbl.str());
            bool in_c = al < c && be < c, in_d = al >= c && be >= c;
            if (al == be) {
                hp.diagonal_indices.push_back(hp.gens.size() - 1);
                (al < c ? fc : fd).torus.push_back(hp.gens.back());
            } else if (al < be && (in_c || in_d)) {
                (in_c ? fc : fd).raising.push_back(hp.gens.back());
            }
        }
    if (c > 0) hp.compact.factors.push_back(fc);
    if (cols - c > 0) hp.compact.factors.push_back(fd);
    return hp;
}

} // namespace detail

/// Validate and assemble a see-saw: H < G and G' < H' (exact span
/// membership of generator matrices), h commuting with h', g with g'.
inline SeesawConfig build_seesaw_type_c(const PairRealization& outer, int r, int s) {
    SeesawConfig sc;
    sc.outer = outer;
    sc.r = r;
    sc.s = s;
    sc.h = detail::seesaw_h_type_c(outer, r, s);
    sc.hp = detail::seesaw_hp_type_c(outer, r, s);
    sc.inner_desc_h = DualPairDescriptor{PairFamily::A, {r, s}, {outer.desc.gp_size(), 0}};

    Subspace gspan = matrix_span(outer.g.mats, outer.space);
    for (std::size_t i = 0; i < sc.h.mats.size(); ++i) {
        Subspace hm = matrix_span({sc.h.mats[i]}, outer.space);
        if (!gspan.contains(hm))
            throw std::logic_error("build_seesaw: h generator " + sc.h.labels[i] + " not inside g");
    }
    Subspace hpspan = matrix_span(sc.hp.mats, outer.space);
    for (std::size_t i = 0; i < outer.gp.mats.size(); ++i) {
        Subspace gm = matrix_span({outer.gp.mats[i]}, outer.space);
        if (!hpspan.contains(gm))
            throw std::logic_error("build_seesaw: g' generator " + outer.gp.labels[i] +
                                   " not inside h'");
    }
    for (const auto& x : sc.h.mats)
        for (const auto& y : sc.hp.mats)
            if (!commutator(x, y).is_zero())
                throw std::logic_error("build_seesaw: [h, h'] != 0");
    return sc;
}

/// Degenerate see-saw (H, H') = (G, G').
inline SeesawConfig build_seesaw_degenerate(const PairRealization& outer) {
    SeesawConfig sc;
    sc.outer = outer;
    sc.h = outer.g;
    sc.hp = outer.gp;
    sc.inner_desc_h = outer.desc;
    sc.r = outer.desc.g_sig.first;
    sc.s = outer.desc.g_sig.second;
    return sc;
}

} // namespace thetak

#endif
