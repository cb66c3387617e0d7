#ifndef THETAK_PARTITION_HPP
#define THETAK_PARTITION_HPP

#include "thetak/rational.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>
#include <tuple>
#include <vector>

namespace thetak {

/// Integer partition: weakly decreasing positive parts; empty = empty partition.
class Partition {
public:
    Partition() = default;
    Partition(std::initializer_list<int> p) : parts_(p) { validate(); }
    explicit Partition(std::vector<int> p) : parts_(std::move(p)) {
        while (!parts_.empty() && parts_.back() == 0) parts_.pop_back();
        validate();
    }

    const std::vector<int>& parts() const { return parts_; }
    std::size_t length() const { return parts_.size(); }
    int size() const { return std::accumulate(parts_.begin(), parts_.end(), 0); }
    int part(std::size_t i) const { return i < parts_.size() ? parts_[i] : 0; }
    bool empty() const { return parts_.empty(); }

    Partition conjugate() const {
        std::vector<int> c;
        for (int i = 0; !parts_.empty() && i < parts_[0]; ++i) {
            int n = 0;
            for (int p : parts_) n += (p > i) ? 1 : 0;
            c.push_back(n);
        }
        return Partition(std::move(c));
    }

    bool contains(const Partition& mu) const {
        for (std::size_t i = 0; i < mu.length(); ++i)
            if (part(i) < mu.part(i)) return false;
        return true;
    }

    bool all_parts_even() const {
        for (int p : parts_) if (p % 2 != 0) return false;
        return true;
    }

    friend bool operator==(const Partition& a, const Partition& b) { return a.parts_ == b.parts_; }
    friend auto operator<=>(const Partition& a, const Partition& b) { return a.parts_ <=> b.parts_; }

private:
    void validate() const {
        for (std::size_t i = 0; i < parts_.size(); ++i) {
            if (parts_[i] <= 0) throw std::invalid_argument("Partition: parts must be positive");
            if (i && parts_[i] > parts_[i - 1]) throw std::invalid_argument("Partition: not weakly decreasing");
        }
    }
    std::vector<int> parts_;
};

/// All partitions of n with at most max_len parts and parts <= max_part.
inline void enumerate_partitions(int n, int max_len, int max_part,
                                 std::vector<int>& cur, std::vector<Partition>& out) {
    if (n == 0) { out.emplace_back(cur); return; }
    if (max_len == 0) return;
    int hi = std::min(n, max_part);
    int lo = (n + max_len - 1) / max_len;  // smallest feasible first part
    for (int p = hi; p >= lo && p >= 1; --p) {
        cur.push_back(p);
        enumerate_partitions(n - p, max_len - 1, p, cur, out);
        cur.pop_back();
    }
}

inline std::vector<Partition> partitions_of(int n, int max_len, int max_part) {
    std::vector<Partition> out;
    std::vector<int> cur;
    enumerate_partitions(n, max_len, max_part, cur, out);
    return out;
}

/// Dominant gl(n) weight: weakly decreasing integer vector of fixed rank.
class GLWeight {
public:
    GLWeight() = default;
    GLWeight(std::initializer_list<int> e) : entries_(e) { validate(); }
    explicit GLWeight(std::vector<int> e) : entries_(std::move(e)) { validate(); }
    static GLWeight zero(std::size_t rank) { return GLWeight(std::vector<int>(rank, 0)); }
    static GLWeight from_partition(const Partition& p, std::size_t rank) {
        if (p.length() > rank) throw std::invalid_argument("GLWeight: partition longer than rank");
        std::vector<int> e(rank, 0);
        for (std::size_t i = 0; i < p.length(); ++i) e[i] = p.parts()[i];
        return GLWeight(std::move(e));
    }
    /// (lambda_plus, 0.., -reverse(lambda_minus)) when it fits in the rank.
    static GLWeight mixed(const Partition& plus, const Partition& minus, std::size_t rank) {
        if (plus.length() + minus.length() > rank)
            throw std::invalid_argument("GLWeight::mixed: parts exceed rank");
        std::vector<int> e(rank, 0);
        for (std::size_t i = 0; i < plus.length(); ++i) e[i] = plus.parts()[i];
        for (std::size_t i = 0; i < minus.length(); ++i) e[rank - 1 - i] = -minus.parts()[i];
        return GLWeight(std::move(e));
    }

    const std::vector<int>& entries() const { return entries_; }
    std::size_t rank() const { return entries_.size(); }
    int sum() const { return std::accumulate(entries_.begin(), entries_.end(), 0); }
    bool is_polynomial() const { return entries_.empty() || entries_.back() >= 0; }

    /// Positive part |.|^+ and negative part sizes; first-occurrence degree
    /// of the corresponding theta series label is their sum.
    int positive_size() const {
        int s = 0;
        for (int e : entries_) if (e > 0) s += e;
        return s;
    }
    int negative_size() const {
        int s = 0;
        for (int e : entries_) if (e < 0) s -= e;
        return s;
    }

    Partition positive_partition() const {
        std::vector<int> p;
        for (int e : entries_) if (e > 0) p.push_back(e);
        return Partition(std::move(p));
    }
    Partition negative_partition() const {
        std::vector<int> p;
        for (auto it = entries_.rbegin(); it != entries_.rend(); ++it)
            if (*it < 0) p.push_back(-*it);
        return Partition(std::move(p));
    }

    GLWeight shifted(int c) const {
        std::vector<int> e = entries_;
        for (int& x : e) x += c;
        return GLWeight(std::move(e));
    }

    friend bool operator==(const GLWeight& a, const GLWeight& b) { return a.entries_ == b.entries_; }
    friend auto operator<=>(const GLWeight& a, const GLWeight& b) { return a.entries_ <=> b.entries_; }

private:
    void validate() const {
        for (std::size_t i = 1; i < entries_.size(); ++i)
            if (entries_[i] > entries_[i - 1])
                throw std::invalid_argument("GLWeight: not weakly decreasing");
    }
    std::vector<int> entries_;
};

namespace detail {

/// Littlewood-Richardson coefficient c^lam_{mu nu} by enumeration of LR
/// skew tableaux of shape lam/mu and content nu.  Rows are filled
/// right-to-left so that cells are visited in reverse-reading-word order
/// and the lattice condition becomes a running prefix check.
inline long lr_fill(const std::vector<int>& lam, const std::vector<int>& mu,
                    const std::vector<int>& nu,
                    std::vector<std::vector<int>>& fill, std::vector<int>& used,
                    std::size_t row, long pos) {
    if (row == lam.size()) return 1;  // used == nu is automatic: counts are capped
    long inner = row < mu.size() ? mu[row] : 0;
    long outer = lam[row];
    if (pos < inner) {
        long next_start = (row + 1 < lam.size()) ? lam[row + 1] - 1 : -1;
        return lr_fill(lam, mu, nu, fill, used, row + 1, next_start);
    }
    long total = 0;
    for (int v = 0; v < static_cast<int>(nu.size()); ++v) {
        if (used[v] >= nu[v]) continue;
        // row weakly increases left to right: cell to the right already set
        if (pos + 1 < outer && v > fill[row][pos + 1]) continue;
        // column strictly increases downward (cell above is skew iff >= mu[row-1])
        if (row > 0) {
            long up_inner = (row - 1) < mu.size() ? mu[row - 1] : 0;
            if (pos >= up_inner && fill[row - 1][pos] >= v) continue;
        }
        // lattice word: before placing v, strictly fewer v's than (v-1)'s
        if (v > 0 && used[v] >= used[v - 1]) continue;
        fill[row][pos] = v;
        ++used[v];
        total += lr_fill(lam, mu, nu, fill, used, row, pos - 1);
        --used[v];
        fill[row][pos] = -1;
    }
    return total;
}

} // namespace detail

/// c^lam_{mu nu}: 0 unless |lam| = |mu| + |nu| and mu, nu fit inside lam.
inline long lr_coefficient(const Partition& lam, const Partition& mu, const Partition& nu) {
    if (lam.size() != mu.size() + nu.size()) return 0;
    if (!lam.contains(mu)) return 0;
    if (nu.empty()) return lam == mu ? 1 : 0;
    static std::map<std::tuple<std::vector<int>, std::vector<int>, std::vector<int>>, long> memo;
    auto key = std::make_tuple(lam.parts(), mu.parts(), nu.parts());
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;

    std::vector<std::vector<int>> fill(lam.length());
    for (std::size_t r = 0; r < lam.length(); ++r) fill[r].assign(lam.parts()[r], -1);
    std::vector<int> used(nu.length(), 0);
    long c = detail::lr_fill(lam.parts(), mu.parts(), nu.parts(), fill, used, 0,
                             lam.parts()[0] - 1);
    memo[key] = c;
    return c;
}

/// Weyl dimension of the U(n) irreducible with highest weight w.
inline BigInt weyl_dim(const GLWeight& w) {
    const auto& e = w.entries();
    std::size_t n = e.size();
    BigInt num = 1, den = 1;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            num *= BigInt(e[i] - e[j] + static_cast<int>(j - i));
            den *= BigInt(static_cast<int>(j - i));
        }
    return num / den;
}

/// Expansion of F^A (x) F^B as U(n) representations: dominant weight -> mult.
/// Mixed (non-polynomial) weights are handled by det-twisting into
/// partitions, applying LR, and shifting back.
inline std::map<GLWeight, long> gln_tensor_expand(const GLWeight& a, const GLWeight& b) {
    if (a.rank() != b.rank()) throw std::invalid_argument("gln_tensor_expand: rank mismatch");
    std::size_t n = a.rank();
    int ca = a.entries().empty() ? 0 : std::max(0, -a.entries().back());
    int cb = b.entries().empty() ? 0 : std::max(0, -b.entries().back());
    Partition pa(std::vector<int>(a.shifted(ca).entries()));
    Partition pb(std::vector<int>(b.shifted(cb).entries()));
    std::map<GLWeight, long> out;
    int total = pa.size() + pb.size();
    // enumerate candidate lam with |lam| = |pa|+|pb|, <= n rows
    for (const Partition& lam : partitions_of(total, static_cast<int>(n),
                                              total == 0 ? 1 : total)) {
        long c = lr_coefficient(lam, pa, pb);
        if (c > 0) out[GLWeight::from_partition(lam, n).shifted(-ca - cb)] += c;
    }
    return out;
}

/// [F^A (x) F^B : F^C] for dominant gl(n) weights.
inline long gln_tensor_mult(const GLWeight& a, const GLWeight& b, const GLWeight& c) {
    if (a.sum() + b.sum() != c.sum()) return 0;
    int ca = a.entries().empty() ? 0 : std::max(0, -a.entries().back());
    int cb = b.entries().empty() ? 0 : std::max(0, -b.entries().back());
    GLWeight cs = c.shifted(ca + cb);
    if (!cs.is_polynomial()) return 0;
    Partition pa(std::vector<int>(a.shifted(ca).entries()));
    Partition pb(std::vector<int>(b.shifted(cb).entries()));
    Partition pc(std::vector<int>(cs.entries()));
    return lr_coefficient(pc, pa, pb);
}

/// [F^alpha (x) (F^beta)^* : F^w] over gl(n), via the complement trick:
/// (F^beta)^* = F^{(c-b_n,...,c-b_1)} (x) det^{-c}.
inline long mixed_tensor_mult(const Partition& alpha, const Partition& beta,
                              const GLWeight& w) {
    std::size_t n = w.rank();
    if (alpha.length() > n || beta.length() > n) return 0;
    int c = std::max(beta.part(0), w.entries().empty() ? 0 : -w.entries().back());
    std::vector<int> comp(n);
    for (std::size_t i = 0; i < n; ++i) comp[i] = c - beta.part(n - 1 - i);
    GLWeight ws = w.shifted(c);
    if (!ws.is_polynomial()) return 0;
    Partition pw(std::vector<int>(ws.entries()));
    Partition pcomp(std::move(comp));
    Partition pa = alpha;
    return lr_coefficient(pw, pa, pcomp);
}

/// Stable branching U(n) -> U(r) x U(s): multiplicity of (mu, nu) is
/// c^lam_{mu nu}.  Mixed input weights are det-normalised first.
inline std::map<std::pair<GLWeight, GLWeight>, long>
branch_gl_to_glgl(const GLWeight& lam, std::size_t r, std::size_t s) {
    if (r + s != lam.rank()) throw std::invalid_argument("branch_gl_to_glgl: r + s != rank");
    int c = lam.entries().empty() ? 0 : std::max(0, -lam.entries().back());
    Partition plam(std::vector<int>(lam.shifted(c).entries()));
    std::map<std::pair<GLWeight, GLWeight>, long> out;
    int total = plam.size();
    for (int k = 0; k <= total; ++k) {
        auto mus = partitions_of(k, static_cast<int>(r), std::max(k, 1));
        auto nus = partitions_of(total - k, static_cast<int>(s), std::max(total - k, 1));
        for (const auto& mu : mus)
            for (const auto& nu : nus) {
                long cc = lr_coefficient(plam, mu, nu);
                if (cc > 0)
                    out[{GLWeight::from_partition(mu, r).shifted(-c),
                         GLWeight::from_partition(nu, s).shifted(-c)}] += cc;
            }
    }
    return out;
}

enum class OCharacter { trivial, det };

/// Multiplicity of the trivial (resp. det) character of O(m) in the
/// polynomial GL(m) representation F^lam, by Littlewood's restriction
/// rule: sum over even-row delta of c^lam_{mu delta} with mu = () or (1^m).
/// For one-dimensional targets the rule is exact for every lam of length
/// <= m; beyond that the caller gets a hard error, never an approximation.
inline long branch_gl_to_o(const Partition& lam, int m, OCharacter which) {
    if (m < 0) throw std::invalid_argument("branch_gl_to_o: negative m");
    if (static_cast<int>(lam.length()) > m)
        throw std::domain_error("branch_gl_to_o: unstable (length exceeds m); use the brute-force oracle");
    Partition mu = (which == OCharacter::trivial)
                       ? Partition{}
                       : Partition(std::vector<int>(m, 1));
    if (which == OCharacter::det && m == 0)
        return lam.empty() ? 1 : 0;  // O(0): only the trivial character
    long total = 0;
    int rest = lam.size() - mu.size();
    if (rest < 0) return 0;
    for (const Partition& delta : partitions_of(rest, static_cast<int>(lam.length()),
                                                rest == 0 ? 1 : rest)) {
        if (!delta.all_parts_even()) continue;
        total += lr_coefficient(lam, mu, delta);
    }
    return total;
}

/// Multiplicity of the trivial Sp(2m) type in F^lam (Littlewood: sum over
/// deltas with even columns).  Refuses outside the stable range l(lam) <= m.
inline long branch_gl_to_sp(const Partition& lam, int two_m) {
    if (two_m < 0 || two_m % 2 != 0) throw std::invalid_argument("branch_gl_to_sp: need even 2m >= 0");
    int m = two_m / 2;
    if (static_cast<int>(lam.length()) > m)
        throw std::domain_error("branch_gl_to_sp: unstable (length exceeds m); use the brute-force oracle");
    long total = 0;
    int rest = lam.size();
    auto deltas = partitions_of(rest, static_cast<int>(lam.length()), rest == 0 ? 1 : rest);
    for (const Partition& delta : deltas) {
        if (!delta.conjugate().all_parts_even()) continue;
        total += lr_coefficient(lam, Partition{}, delta);
    }
    return total;
}

/// Multiplicity of det^xi in a possibly mixed U(m) weight restricted to
/// O(m): det-twist into a partition first.
inline long branch_mixed_to_o_char(const GLWeight& w, int parity) {
    int m = static_cast<int>(w.rank());
    int c = w.entries().empty() ? 0 : std::max(0, -w.entries().back());
    GLWeight ws = w.shifted(c);
    Partition p(std::vector<int>(ws.entries()));
    int target = ((parity + c) % 2 + 2) % 2;
    return branch_gl_to_o(p, m, target == 0 ? OCharacter::trivial : OCharacter::det);
}

/// Infinitesimal character: the sorted rho-shifted vector, rho = ((n-1)/2,
/// (n-3)/2, ...).  Stored weakly decreasing; the unique orbit representative.
class InfinitesimalCharacter {
public:
    InfinitesimalCharacter() = default;
    explicit InfinitesimalCharacter(std::vector<Rational> sorted_entries)
        : entries_(std::move(sorted_entries)) {
        std::sort(entries_.begin(), entries_.end(),
                  [](const Rational& a, const Rational& b) { return a > b; });
    }
    const std::vector<Rational>& entries() const { return entries_; }
    friend bool operator==(const InfinitesimalCharacter& a, const InfinitesimalCharacter& b) {
        return a.entries_ == b.entries_;
    }
    friend auto operator<=>(const InfinitesimalCharacter& a, const InfinitesimalCharacter& b) {
        return a.entries_ <=> b.entries_;
    }

private:
    std::vector<Rational> entries_;
};

inline std::vector<Rational> rho_vector(std::size_t n) {
    std::vector<Rational> r;
    for (std::size_t i = 0; i < n; ++i)
        r.push_back(Rational(static_cast<long>(n) - 1 - 2 * static_cast<long>(i), 2));
    return r;
}

/// rho-shift of a weight-plus-shift vector.  The input is brought to the
/// dominant chamber first, so any permutation of the entries yields the
/// identical representative.
inline InfinitesimalCharacter infinitesimal_character(const std::vector<Rational>& w) {
    std::vector<Rational> v = w;
    std::sort(v.begin(), v.end(), [](const Rational& a, const Rational& b) { return a > b; });
    auto rho = rho_vector(w.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] += rho[i];
    return InfinitesimalCharacter(std::move(v));
}

/// Infinitesimal character of a lowest-weight module from the weight
/// vector of its lowest-weight vector: the orbit of (lambda_0 - rho),
/// positionally on the given vector.
inline InfinitesimalCharacter lowest_weight_infchar(const std::vector<Rational>& lambda0) {
    std::vector<Rational> v = lambda0;
    auto rho = rho_vector(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] -= rho[i];
    return InfinitesimalCharacter(std::move(v));
}

inline InfinitesimalCharacter infinitesimal_character(const GLWeight& w, const Rational& shift) {
    std::vector<Rational> v;
    for (int e : w.entries()) v.push_back(Rational(e) + shift);
    return infinitesimal_character(v);
}

} // namespace thetak

#endif
