#ifndef THETAK_SPARSE_HPP
#define THETAK_SPARSE_HPP

#include "thetak/rational.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace thetak {

/// Sparse vector over Q(i): index -> nonzero coefficient.
using SparseVec = std::map<std::size_t, GQ>;

inline void vec_add_scaled(SparseVec& dst, const SparseVec& src, const GQ& c) {
    if (c.is_zero()) return;
    for (const auto& [j, v] : src) {
        GQ w = dst.count(j) ? dst[j] + v * c : v * c;
        if (w.is_zero()) dst.erase(j);
        else dst[j] = w;
    }
}

/// Sparse exact matrix.  Entries absent from the map are zero; explicit
/// zeros are never stored.
class SparseMatrix {
public:
    SparseMatrix() : rows_(0), cols_(0) {}
    SparseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    void set(std::size_t r, std::size_t c, const GQ& v) {
        check(r, c);
        if (v.is_zero()) entries_.erase({r, c});
        else entries_[{r, c}] = v;
    }
    void add(std::size_t r, std::size_t c, const GQ& v) {
        check(r, c);
        auto key = std::make_pair(r, c);
        auto it = entries_.find(key);
        GQ w = (it == entries_.end()) ? v : it->second + v;
        if (w.is_zero()) entries_.erase(key);
        else entries_[key] = w;
    }
    GQ get(std::size_t r, std::size_t c) const {
        auto it = entries_.find({r, c});
        return it == entries_.end() ? GQ() : it->second;
    }

    const std::map<std::pair<std::size_t, std::size_t>, GQ>& entries() const { return entries_; }
    std::size_t nnz() const { return entries_.size(); }

    SparseMatrix transpose() const {
        SparseMatrix t(cols_, rows_);
        for (const auto& [rc, v] : entries_) t.entries_[{rc.second, rc.first}] = v;
        return t;
    }

    friend SparseMatrix operator*(const SparseMatrix& a, const SparseMatrix& b) {
        if (a.cols_ != b.rows_) throw std::invalid_argument("SparseMatrix: size mismatch in product");
        // row-major of b for the accumulation
        std::vector<SparseVec> brows(b.rows_);
        for (const auto& [rc, v] : b.entries_) brows[rc.first][rc.second] = v;
        SparseMatrix c(a.rows_, b.cols_);
        std::map<std::size_t, SparseVec> crows;
        for (const auto& [rc, v] : a.entries_) vec_add_scaled(crows[rc.first], brows[rc.second], v);
        for (auto& [r, row] : crows)
            for (auto& [j, v] : row) c.entries_[{r, j}] = v;
        return c;
    }

    friend SparseMatrix operator-(const SparseMatrix& a, const SparseMatrix& b) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
            throw std::invalid_argument("SparseMatrix: size mismatch in difference");
        SparseMatrix c = a;
        for (const auto& [rc, v] : b.entries_) c.add(rc.first, rc.second, -v);
        return c;
    }

    friend bool operator==(const SparseMatrix& a, const SparseMatrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.entries_ == b.entries_;
    }

    /// Matrix-vector action on a sparse coordinate vector.
    SparseVec apply(const SparseVec& x) const {
        SparseVec y;
        for (const auto& [rc, v] : entries_) {
            auto it = x.find(rc.second);
            if (it == x.end()) continue;
            GQ w = v * it->second;
            auto jt = y.find(rc.first);
            GQ acc = (jt == y.end()) ? w : jt->second + w;
            if (acc.is_zero()) y.erase(rc.first);
            else y[rc.first] = acc;
        }
        return y;
    }

    std::vector<SparseVec> to_rows() const {
        std::vector<SparseVec> rows(rows_);
        for (const auto& [rc, v] : entries_) rows[rc.first][rc.second] = v;
        return rows;
    }

private:
    void check(std::size_t r, std::size_t c) const {
        if (r >= rows_ || c >= cols_) throw std::out_of_range("SparseMatrix: index out of range");
    }

    std::size_t rows_, cols_;
    std::map<std::pair<std::size_t, std::size_t>, GQ> entries_;
};

namespace detail {

/// In-place Gauss-Jordan over Q(i).  Rows arrive arbitrary, leave in
/// reduced echelon form (sorted by pivot, pivots = 1, pivot columns
/// cleared); zero rows are dropped.
inline void reduce_rows(std::vector<SparseVec>& rows) {
    std::vector<SparseVec> done;
    // pivot column -> index into done
    std::map<std::size_t, std::size_t> pivots;
    for (auto& r : rows) {
        SparseVec cur = std::move(r);
        for (;;) {
            if (cur.empty()) break;
            std::size_t lead = cur.begin()->first;
            auto it = pivots.find(lead);
            if (it == pivots.end()) break;
            vec_add_scaled(cur, done[it->second], -cur.begin()->second);
        }
        if (cur.empty()) continue;
        GQ inv = GQ(1) / cur.begin()->second;
        for (auto& [j, v] : cur) v *= inv;
        pivots[cur.begin()->first] = done.size();
        done.push_back(std::move(cur));
    }
    // back-substitution: clear pivot columns above
    for (auto& [col, idx] : pivots) {
        for (std::size_t k = 0; k < done.size(); ++k) {
            if (k == idx) continue;
            auto it = done[k].find(col);
            if (it != done[k].end()) vec_add_scaled(done[k], done[idx], -it->second);
        }
    }
    rows.clear();
    for (auto& [col, idx] : pivots) rows.push_back(std::move(done[idx]));
}

} // namespace detail

/// Subspace of Q(i)^n held in canonical reduced row-echelon form, so two
/// subspaces are equal exactly when their stored bases are identical.
class Subspace {
public:
    Subspace() : ambient_(0) {}
    explicit Subspace(std::size_t ambient_dim) : ambient_(ambient_dim) {}

    static Subspace from_spanning(std::size_t ambient_dim, std::vector<SparseVec> gens) {
        detail::reduce_rows(gens);
        Subspace s(ambient_dim);
        s.basis_ = std::move(gens);
        return s;
    }

    std::size_t ambient_dim() const { return ambient_; }
    std::size_t dim() const { return basis_.size(); }
    const std::vector<SparseVec>& basis() const { return basis_; }

    bool contains(const SparseVec& v) const {
        SparseVec r = v;
        for (const auto& b : basis_) {
            if (r.empty()) return true;
            auto it = r.find(b.begin()->first);
            if (it != r.end()) vec_add_scaled(r, b, -it->second);
        }
        return r.empty();
    }

    bool contains(const Subspace& other) const {
        for (const auto& b : other.basis_)
            if (!contains(b)) return false;
        return true;
    }

    friend bool operator==(const Subspace& a, const Subspace& b) {
        return a.ambient_ == b.ambient_ && a.basis_ == b.basis_;
    }

private:
    std::size_t ambient_;
    std::vector<SparseVec> basis_;
};

struct RrefResult {
    std::size_t rank = 0;
    Subspace row_space;
    Subspace kernel;
};

/// Reduced row echelon decomposition: rank, canonical row space, and the
/// exact kernel (canonicalised as a Subspace of the column space).
inline RrefResult rref(const SparseMatrix& m) {
    std::vector<SparseVec> rows = m.to_rows();
    detail::reduce_rows(rows);

    RrefResult res;
    res.rank = rows.size();
    res.row_space = Subspace::from_spanning(m.cols(), rows);

    // kernel from the echelon form: one generator per free column
    std::map<std::size_t, std::size_t> pivot_of_col;
    const auto& basis = res.row_space.basis();
    for (std::size_t i = 0; i < basis.size(); ++i) pivot_of_col[basis[i].begin()->first] = i;
    std::vector<SparseVec> kgens;
    for (std::size_t c = 0; c < m.cols(); ++c) {
        if (pivot_of_col.count(c)) continue;
        SparseVec g;
        g[c] = GQ(1);
        for (const auto& [pc, i] : pivot_of_col) {
            auto it = basis[i].find(c);
            if (it != basis[i].end()) g[pc] = -it->second;
        }
        kgens.push_back(std::move(g));
    }
    res.kernel = Subspace::from_spanning(m.cols(), std::move(kgens));
    return res;
}

enum class SubspaceRelation { equal, a_subset_b, b_subset_a, incomparable };

inline const char* to_string(SubspaceRelation r) {
    switch (r) {
        case SubspaceRelation::equal: return "equal";
        case SubspaceRelation::a_subset_b: return "a_subset_b";
        case SubspaceRelation::b_subset_a: return "b_subset_a";
        case SubspaceRelation::incomparable: return "incomparable";
    }
    return "?";
}

inline SubspaceRelation subspace_relate(const Subspace& a, const Subspace& b) {
    if (a.ambient_dim() != b.ambient_dim())
        throw std::invalid_argument("subspace_relate: ambient dimension mismatch");
    if (a == b) return SubspaceRelation::equal;
    bool ab = b.contains(a), ba = a.contains(b);
    if (ab && ba) return SubspaceRelation::equal;  // unreachable with canonical bases
    if (ab) return SubspaceRelation::a_subset_b;
    if (ba) return SubspaceRelation::b_subset_a;
    return SubspaceRelation::incomparable;
}

/// Exact solve A x = b.  Returns nothing when inconsistent; `unique` is
/// true when the kernel is trivial.
struct LinearSolution {
    SparseVec x;
    bool unique = false;
};

inline std::optional<LinearSolution> solve_linear(const SparseMatrix& a, const SparseVec& b) {
    // eliminate on the augmented system [A | b]
    std::vector<SparseVec> rows = a.to_rows();
    const std::size_t aug = a.cols();
    for (std::size_t r = 0; r < a.rows(); ++r) {
        auto it = b.find(r);
        if (it != b.end()) rows[r][aug] = it->second;
    }
    detail::reduce_rows(rows);
    LinearSolution sol;
    sol.unique = true;
    std::map<std::size_t, std::size_t> pivot_of_col;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        std::size_t p = rows[i].begin()->first;
        if (p == aug) return std::nullopt;  // 0 = 1 row: inconsistent
        pivot_of_col[p] = i;
    }
    for (std::size_t c = 0; c < aug; ++c)
        if (!pivot_of_col.count(c)) sol.unique = false;
    for (const auto& [c, i] : pivot_of_col) {
        auto it = rows[i].find(aug);
        if (it != rows[i].end()) sol.x[c] = it->second;
        // free columns beyond pivots would contribute; with x_free = 0 the
        // particular solution is just the augmented column entries.
    }
    return sol;
}

} // namespace thetak

#endif
