#ifndef THETAK_WEYL_HPP
#define THETAK_WEYL_HPP

#include "thetak/rational.hpp"
#include "thetak/sparse.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace thetak {

/// Complex symplectic space with basis e_1..e_N, f_1..f_N and
/// <e_i, f_j> = delta_ij.  The Fock polarization is fixed globally:
/// X = span(f_i) is annihilated on the vacuum, Y = C[x_i] with x_i = e_i
/// and a_i = i * f_i acting as d/dx_i.
struct SymplecticSpace {
    std::size_t n_pairs = 0;

    std::size_t dim() const { return 2 * n_pairs; }

    /// Symplectic form on basis indices (0..N-1 = e's, N..2N-1 = f's).
    GQ form(std::size_t u, std::size_t v) const {
        std::size_t n = n_pairs;
        if (u < n && v >= n && v - n == u) return GQ(1);
        if (v < n && u >= n && u - n == v) return GQ(-1);
        return GQ(0);
    }

    friend bool operator==(const SymplecticSpace& a, const SymplecticSpace& b) {
        return a.n_pairs == b.n_pairs;
    }
};

/// Normal-ordered monomial x^alpha a^beta.
struct WeylMonomial {
    std::vector<int> xexp, aexp;

    int degree() const {
        return std::accumulate(xexp.begin(), xexp.end(), 0) +
               std::accumulate(aexp.begin(), aexp.end(), 0);
    }

    friend bool operator==(const WeylMonomial& a, const WeylMonomial& b) {
        return a.xexp == b.xexp && a.aexp == b.aexp;
    }
    friend bool operator<(const WeylMonomial& a, const WeylMonomial& b) {
        int da = a.degree(), db = b.degree();
        if (da != db) return da < db;
        if (a.xexp != b.xexp) return a.xexp < b.xexp;   // graded, then lex
        return a.aexp < b.aexp;
    }
};

/// Element of the quantum algebra Omega(W_C), stored in normal order
/// (creations before annihilations); equality is structural.
class WeylElement {
public:
    WeylElement() = default;
    explicit WeylElement(const SymplecticSpace& sp) : space_(sp) {}

    static WeylElement zero(const SymplecticSpace& sp) { return WeylElement(sp); }
    static WeylElement scalar(const SymplecticSpace& sp, const GQ& c) {
        WeylElement w(sp);
        WeylMonomial m{std::vector<int>(sp.n_pairs, 0), std::vector<int>(sp.n_pairs, 0)};
        w.add_term(m, c);
        return w;
    }
    static WeylElement creation(const SymplecticSpace& sp, std::size_t i) {
        WeylElement w(sp);
        WeylMonomial m{std::vector<int>(sp.n_pairs, 0), std::vector<int>(sp.n_pairs, 0)};
        m.xexp[i] = 1;
        w.add_term(m, GQ(1));
        return w;
    }
    static WeylElement annihilation(const SymplecticSpace& sp, std::size_t i) {
        WeylElement w(sp);
        WeylMonomial m{std::vector<int>(sp.n_pairs, 0), std::vector<int>(sp.n_pairs, 0)};
        m.aexp[i] = 1;
        w.add_term(m, GQ(1));
        return w;
    }
    /// Images of the symplectic basis: e_i = x_i, f_i = -i * a_i.
    static WeylElement vector_e(const SymplecticSpace& sp, std::size_t i) {
        return creation(sp, i);
    }
    static WeylElement vector_f(const SymplecticSpace& sp, std::size_t i) {
        WeylElement w = annihilation(sp, i);
        return w * GQ(Rational(0), Rational(-1));
    }
    /// Basis vector by flat index (0..N-1 = e's, N..2N-1 = f's).
    static WeylElement basis_vector(const SymplecticSpace& sp, std::size_t u) {
        return u < sp.n_pairs ? vector_e(sp, u) : vector_f(sp, u - sp.n_pairs);
    }

    const SymplecticSpace& space() const { return space_; }
    const std::map<WeylMonomial, GQ>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    int filtration_degree() const {
        int d = 0;
        for (const auto& [m, c] : terms_) d = std::max(d, m.degree());
        return d;
    }

    void add_term(const WeylMonomial& m, const GQ& c) {
        if (c.is_zero()) return;
        auto it = terms_.find(m);
        GQ w = (it == terms_.end()) ? c : it->second + c;
        if (w.is_zero()) terms_.erase(m);
        else terms_[m] = w;
    }

    GQ scalar_part() const {
        WeylMonomial one{std::vector<int>(space_.n_pairs, 0), std::vector<int>(space_.n_pairs, 0)};
        auto it = terms_.find(one);
        return it == terms_.end() ? GQ() : it->second;
    }

    WeylElement operator-() const {
        WeylElement w(space_);
        for (const auto& [m, c] : terms_) w.terms_[m] = -c;
        return w;
    }
    friend WeylElement operator+(const WeylElement& a, const WeylElement& b) {
        a.check_space(b);
        WeylElement w = a;
        for (const auto& [m, c] : b.terms_) w.add_term(m, c);
        return w;
    }
    friend WeylElement operator-(const WeylElement& a, const WeylElement& b) {
        a.check_space(b);
        WeylElement w = a;
        for (const auto& [m, c] : b.terms_) w.add_term(m, -c);
        return w;
    }
    friend WeylElement operator*(const WeylElement& a, const GQ& c) {
        WeylElement w(a.space_);
        if (c.is_zero()) return w;
        for (const auto& [m, v] : a.terms_) w.terms_[m] = v * c;
        return w;
    }
    friend WeylElement operator*(const GQ& c, const WeylElement& a) { return a * c; }

    /// Normal-ordered product.  Per variable, a^b x^g = sum_k C(b,k) C(g,k)
    /// k! x^{g-k} a^{b-k}; variables commute with each other.
    friend WeylElement operator*(const WeylElement& a, const WeylElement& b) {
        a.check_space(b);
        WeylElement out(a.space_);
        std::size_t n = a.space_.n_pairs;
        for (const auto& [ma, ca] : a.terms_) {
            for (const auto& [mb, cb] : b.terms_) {
                // reorder a.aexp past b.xexp
                std::vector<std::pair<WeylMonomial, GQ>> partial{
                    {WeylMonomial{std::vector<int>(n, 0), std::vector<int>(n, 0)}, ca * cb}};
                for (std::size_t v = 0; v < n; ++v) {
                    int bb = ma.aexp[v], g = mb.xexp[v];
                    std::vector<std::pair<int, BigInt>> expansions;  // (k, coeff)
                    int kmax = std::min(bb, g);
                    BigInt coeff = 1;
                    for (int k = 0; k <= kmax; ++k) {
                        if (k > 0)
                            coeff = coeff * BigInt(bb - k + 1) * BigInt(g - k + 1) / BigInt(k);
                        expansions.push_back({k, coeff});
                    }
                    std::vector<std::pair<WeylMonomial, GQ>> next;
                    for (const auto& [mon, c] : partial) {
                        for (const auto& [k, bc] : expansions) {
                            WeylMonomial m2 = mon;
                            m2.xexp[v] += ma.xexp[v] + g - k;
                            m2.aexp[v] += bb - k + mb.aexp[v];
                            next.push_back({std::move(m2), c * GQ(Rational(bc))});
                        }
                    }
                    partial = std::move(next);
                }
                for (const auto& [mon, c] : partial) out.add_term(mon, c);
            }
        }
        return out;
    }

    friend WeylElement bracket(const WeylElement& a, const WeylElement& b) {
        return a * b - b * a;
    }

    friend bool operator==(const WeylElement& a, const WeylElement& b) {
        return a.space_ == b.space_ && a.terms_ == b.terms_;
    }

    std::string str() const {
        if (terms_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto& [m, c] : terms_) {
            if (!first) os << " + ";
            first = false;
            os << '(' << c.str() << ')';
            for (std::size_t i = 0; i < m.xexp.size(); ++i)
                if (m.xexp[i]) os << " x" << i + 1 << '^' << m.xexp[i];
            for (std::size_t i = 0; i < m.aexp.size(); ++i)
                if (m.aexp[i]) os << " a" << i + 1 << '^' << m.aexp[i];
        }
        return os.str();
    }

private:
    void check_space(const WeylElement& o) const {
        if (!(space_ == o.space_))
            throw std::invalid_argument("WeylElement: mismatched symplectic spaces");
    }

    SymplecticSpace space_;
    std::map<WeylMonomial, GQ> terms_;
};

/// Matrix in sp(W_C) in the (e_1..e_N, f_1..f_N) basis (column j = image
/// of basis vector j).
class SpMatrix {
public:
    SpMatrix() = default;
    explicit SpMatrix(const SymplecticSpace& sp)
        : space_(sp), a_(sp.dim(), std::vector<GQ>(sp.dim())) {}

    const SymplecticSpace& space() const { return space_; }
    GQ& at(std::size_t r, std::size_t c) { return a_[r][c]; }
    const GQ& at(std::size_t r, std::size_t c) const { return a_[r][c]; }

    bool is_sp() const {
        // <T u, v> + <u, T v> = 0 for all basis u, v
        std::size_t d = space_.dim();
        for (std::size_t u = 0; u < d; ++u)
            for (std::size_t v = 0; v < d; ++v) {
                GQ s;
                for (std::size_t k = 0; k < d; ++k)
                    s += a_[k][u] * space_.form(k, v) + space_.form(u, k) * a_[k][v];
                if (!s.is_zero()) return false;
            }
        return true;
    }

    friend SpMatrix commutator(const SpMatrix& x, const SpMatrix& y) {
        SpMatrix z(x.space_);
        std::size_t d = x.space_.dim();
        for (std::size_t r = 0; r < d; ++r)
            for (std::size_t c = 0; c < d; ++c) {
                GQ s;
                for (std::size_t k = 0; k < d; ++k)
                    s += x.a_[r][k] * y.a_[k][c] - y.a_[r][k] * x.a_[k][c];
                z.a_[r][c] = s;
            }
        return z;
    }

    friend SpMatrix operator*(const SpMatrix& x, const GQ& c) {
        SpMatrix z(x.space_);
        std::size_t d = x.space_.dim();
        for (std::size_t r = 0; r < d; ++r)
            for (std::size_t cc = 0; cc < d; ++cc) z.a_[r][cc] = x.a_[r][cc] * c;
        return z;
    }
    friend SpMatrix operator+(const SpMatrix& x, const SpMatrix& y) {
        SpMatrix z(x.space_);
        std::size_t d = x.space_.dim();
        for (std::size_t r = 0; r < d; ++r)
            for (std::size_t c = 0; c < d; ++c) z.a_[r][c] = x.a_[r][c] + y.a_[r][c];
        return z;
    }

    bool is_zero() const {
        for (const auto& row : a_)
            for (const auto& v : row)
                if (!v.is_zero()) return false;
        return true;
    }

private:
    SymplecticSpace space_;
    std::vector<std::vector<GQ>> a_;
};

/// Image of T w (degree-1 element) for a basis vector index u.
inline WeylElement omega_c_of_column(const SpMatrix& t, std::size_t u) {
    WeylElement out = WeylElement::zero(t.space());
    for (std::size_t k = 0; k < t.space().dim(); ++k) {
        const GQ& c = t.at(k, u);
        if (!c.is_zero()) out = out + WeylElement::basis_vector(t.space(), k) * c;
    }
    return out;
}

/// The unique symmetric degree-2 element Z with [Z, w] = omega(T w) for all
/// w in W_C, solved as a linear system over the symmetrized products
/// (u_p u_q + u_q u_p).  Uniqueness of the solution is asserted.
inline WeylElement omega_c(const SpMatrix& t) {
    const SymplecticSpace& sp = t.space();
    if (!t.is_sp()) throw std::invalid_argument("omega_c: matrix not in sp(W_C)");
    std::size_t d = sp.dim();

    // unknowns: pairs (p,q), p <= q
    std::vector<std::pair<std::size_t, std::size_t>> unknowns;
    for (std::size_t p = 0; p < d; ++p)
        for (std::size_t q = p; q < d; ++q) unknowns.push_back({p, q});

    // coordinates: degree-1 monomials x_i (0..N-1), a_i (N..2N-1), per bracket slot u
    auto coord = [&](const WeylElement& w, std::size_t u) {
        SparseVec v;
        for (const auto& [m, c] : w.terms()) {
            int deg = m.degree();
            if (deg == 0) {
                if (!c.is_zero())
                    throw std::logic_error("omega_c: unexpected scalar in bracket");
                continue;
            }
            if (deg != 1) throw std::logic_error("omega_c: bracket not degree 1");
            for (std::size_t i = 0; i < sp.n_pairs; ++i) {
                if (m.xexp[i]) v[u * d + i] = c;
                if (m.aexp[i]) v[u * d + sp.n_pairs + i] = c;
            }
        }
        return v;
    };

    SparseMatrix a(d * d, unknowns.size());
    std::vector<WeylElement> sym;
    sym.reserve(unknowns.size());
    for (std::size_t j = 0; j < unknowns.size(); ++j) {
        auto [p, q] = unknowns[j];
        WeylElement up = WeylElement::basis_vector(sp, p);
        WeylElement uq = WeylElement::basis_vector(sp, q);
        sym.push_back(up * uq + uq * up);
    }
    for (std::size_t u = 0; u < d; ++u) {
        WeylElement wu = WeylElement::basis_vector(sp, u);
        for (std::size_t j = 0; j < unknowns.size(); ++j) {
            WeylElement br = bracket(sym[j], wu);
            for (const auto& [idx, c] : coord(br, u)) a.add(idx, j, c);
        }
    }
    SparseVec rhs;
    for (std::size_t u = 0; u < d; ++u) {
        WeylElement img = omega_c_of_column(t, u);
        for (const auto& [idx, c] : coord(img, u)) {
            auto it = rhs.find(idx);
            GQ w = (it == rhs.end()) ? c : it->second + c;
            if (w.is_zero()) rhs.erase(idx);
            else rhs[idx] = w;
        }
    }
    auto sol = solve_linear(a, rhs);
    if (!sol) throw std::logic_error("omega_c: bracket system inconsistent");
    if (!sol->unique) throw std::logic_error("omega_c: bracket system not unique");
    WeylElement z = WeylElement::zero(sp);
    for (const auto& [j, c] : sol->x) z = z + sym[j] * c;
    return z;
}

/// Sparse polynomial in the creation variables x_1..x_N.
class FockVector {
public:
    FockVector() = default;
    explicit FockVector(const SymplecticSpace& sp) : space_(sp) {}

    static FockVector vacuum(const SymplecticSpace& sp) {
        FockVector v(sp);
        v.terms_[std::vector<int>(sp.n_pairs, 0)] = GQ(1);
        return v;
    }
    static FockVector monomial(const SymplecticSpace& sp, std::vector<int> exps, GQ c = GQ(1)) {
        FockVector v(sp);
        if (!c.is_zero()) v.terms_[std::move(exps)] = c;
        return v;
    }

    const SymplecticSpace& space() const { return space_; }
    const std::map<std::vector<int>, GQ>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add_term(const std::vector<int>& m, const GQ& c) {
        if (c.is_zero()) return;
        auto it = terms_.find(m);
        GQ w = (it == terms_.end()) ? c : it->second + c;
        if (w.is_zero()) terms_.erase(m);
        else terms_[m] = w;
    }

    friend FockVector operator+(const FockVector& a, const FockVector& b) {
        FockVector v = a;
        for (const auto& [m, c] : b.terms_) v.add_term(m, c);
        return v;
    }
    friend FockVector operator*(const FockVector& a, const GQ& c) {
        FockVector v(a.space_);
        if (c.is_zero()) return v;
        for (const auto& [m, w] : a.terms_) v.terms_[m] = w * c;
        return v;
    }
    friend bool operator==(const FockVector& a, const FockVector& b) {
        return a.terms_ == b.terms_;
    }

private:
    SymplecticSpace space_;
    std::map<std::vector<int>, GQ> terms_;
};

/// x_i acts by multiplication, a_i by d/dx_i.
inline FockVector act_on_fock(const WeylElement& x, const FockVector& v) {
    FockVector out(v.space());
    std::size_t n = v.space().n_pairs;
    for (const auto& [mon, c] : x.terms()) {
        for (const auto& [exps, w] : v.terms()) {
            GQ coeff = c * w;
            std::vector<int> e = exps;
            bool dead = false;
            for (std::size_t i = 0; i < n && !dead; ++i) {
                for (int k = 0; k < mon.aexp[i]; ++k) {
                    if (e[i] == 0) { dead = true; break; }
                    coeff *= GQ(Rational(e[i]));
                    --e[i];
                }
            }
            if (dead || coeff.is_zero()) continue;
            for (std::size_t i = 0; i < n; ++i) e[i] += mon.xexp[i];
            out.add_term(e, coeff);
        }
    }
    return out;
}

/// Degree window with its deterministic monomial basis (graded, then lex).
class GradedSlice {
public:
    GradedSlice() = default;
    GradedSlice(const SymplecticSpace& sp, int d_lo, int d_hi) : space_(sp), lo_(d_lo), hi_(d_hi) {
        if (d_lo < 0) lo_ = 0;
        for (int d = lo_; d <= hi_; ++d) append_degree(d);
        for (std::size_t i = 0; i < basis_.size(); ++i) index_[basis_[i]] = i;
    }

    const SymplecticSpace& space() const { return space_; }
    int lo() const { return lo_; }
    int hi() const { return hi_; }
    const std::vector<std::vector<int>>& basis() const { return basis_; }
    std::size_t dim() const { return basis_.size(); }

    std::optional<std::size_t> index_of(const std::vector<int>& m) const {
        auto it = index_.find(m);
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }

    SparseVec coordinates(const FockVector& v) const {
        SparseVec out;
        for (const auto& [m, c] : v.terms()) {
            auto idx = index_of(m);
            if (!idx) throw std::out_of_range("GradedSlice: vector leaves the slice");
            out[*idx] = c;
        }
        return out;
    }

    FockVector vector(const SparseVec& coords) const {
        FockVector v(space_);
        for (const auto& [i, c] : coords) v.add_term(basis_[i], c);
        return v;
    }

private:
    void append_degree(int d) {
        std::vector<int> cur(space_.n_pairs, 0);
        if (cur.empty()) {
            if (d == 0) basis_.push_back(cur);
            return;
        }
        emit(d, 0, cur);
    }
    void emit(int rem, std::size_t pos, std::vector<int>& cur) {
        if (pos + 1 == cur.size()) {
            cur[pos] = rem;
            basis_.push_back(cur);
            cur[pos] = 0;
            return;
        }
        for (int k = rem; k >= 0; --k) {
            cur[pos] = k;
            emit(rem - k, pos + 1, cur);
        }
        cur[pos] = 0;
    }

    SymplecticSpace space_;
    int lo_ = 0, hi_ = 0;
    std::vector<std::vector<int>> basis_;
    std::map<std::vector<int>, std::size_t> index_;
};

/// Matrix of act_on_fock from slice_in into the window widened by the
/// operator's filtration degree.  Column order = slice basis order.
inline SparseMatrix operator_matrix(const WeylElement& x, const GradedSlice& slice_in,
                                    const GradedSlice& slice_out) {
    SparseMatrix m(slice_out.dim(), slice_in.dim());
    for (std::size_t j = 0; j < slice_in.dim(); ++j) {
        FockVector v = FockVector::monomial(slice_in.space(), slice_in.basis()[j]);
        FockVector img = act_on_fock(x, v);
        for (const auto& [mon, c] : img.terms()) {
            auto idx = slice_out.index_of(mon);
            if (!idx) throw std::out_of_range("operator_matrix: image leaves the output slice");
            m.set(*idx, j, c);
        }
    }
    return m;
}

inline SparseMatrix operator_matrix(const WeylElement& x, const GradedSlice& slice_in) {
    int d = x.filtration_degree();
    GradedSlice out(slice_in.space(), slice_in.lo() - d, slice_in.hi() + d);
    return operator_matrix(x, slice_in, out);
}

} // namespace thetak

#endif
