#ifndef THETAK_KTYPE_HPP
#define THETAK_KTYPE_HPP

#include "thetak/partition.hpp"
#include "thetak/rational.hpp"

#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace thetak {

/// One factor of a compact group: U(n), or O(n) with its component group.
struct UFactor {
    std::size_t rank = 0;
};
struct OFactor {
    std::size_t n = 0;
};
using GroupFactor = std::variant<UFactor, OFactor>;

struct GroupDescriptor {
    std::vector<GroupFactor> factors;

    static GroupDescriptor u(std::size_t n) { return {{UFactor{n}}}; }
    static GroupDescriptor u_u(std::size_t a, std::size_t b) { return {{UFactor{a}, UFactor{b}}}; }
    static GroupDescriptor o(std::size_t n) { return {{OFactor{n}}}; }
    static GroupDescriptor o_o(std::size_t p, std::size_t q) { return {{OFactor{p}, OFactor{q}}}; }

    friend bool operator==(const GroupDescriptor& a, const GroupDescriptor& b) {
        if (a.factors.size() != b.factors.size()) return false;
        for (std::size_t i = 0; i < a.factors.size(); ++i) {
            if (a.factors[i].index() != b.factors[i].index()) return false;
            if (std::holds_alternative<UFactor>(a.factors[i])) {
                if (std::get<UFactor>(a.factors[i]).rank != std::get<UFactor>(b.factors[i]).rank)
                    return false;
            } else if (std::get<OFactor>(a.factors[i]).n != std::get<OFactor>(b.factors[i]).n) {
                return false;
            }
        }
        return true;
    }
};

/// Label data for a single U(n~) factor: integral dominant weight plus a
/// half-integer central shift, normalised so shift is 0 or 1/2 (integer
/// parts are folded into the weight).  Equality is structural.
struct UTypeLabel {
    GLWeight weight;
    Rational shift;  // 0 or 1/2 after normalisation

    UTypeLabel() = default;
    UTypeLabel(GLWeight w, Rational s) : weight(std::move(w)), shift(std::move(s)) { normalize(); }

    void normalize() {
        BigInt f = shift.floor();
        if (f != 0) {
            long d = static_cast<long>(f);
            weight = weight.shifted(d);
            shift = shift - Rational(BigInt(f));
        }
        if (!(shift == Rational(0) || shift == Rational(1, 2)))
            throw std::invalid_argument("UTypeLabel: shift must be half-integral");
    }

    /// Exact torus eigenvalues weight + shift, entry by entry.
    std::vector<Rational> eigenvalues() const {
        std::vector<Rational> v;
        for (int e : weight.entries()) v.push_back(Rational(e) + shift);
        return v;
    }
    Rational central() const {
        Rational c(0);
        for (const auto& e : eigenvalues()) c += e;
        return c;
    }

    friend bool operator==(const UTypeLabel& a, const UTypeLabel& b) {
        return a.weight == b.weight && a.shift == b.shift;
    }
    friend auto operator<=>(const UTypeLabel& a, const UTypeLabel& b) {
        if (auto c = a.weight <=> b.weight; c != 0) return c;
        return a.shift <=> b.shift;
    }
};

/// Label for an O(n) factor: partition (with lam'_1 + lam'_2 <= n) and a
/// sign character of the component group.
struct OTypeLabel {
    Partition lam;
    int sign = 1;  // +1 or -1

    friend bool operator==(const OTypeLabel& a, const OTypeLabel& b) {
        return a.lam == b.lam && a.sign == b.sign;
    }
    friend auto operator<=>(const OTypeLabel& a, const OTypeLabel& b) {
        if (auto c = a.lam <=> b.lam; c != 0) return c;
        return a.sign <=> b.sign;
    }
};

using FactorLabel = std::variant<UTypeLabel, OTypeLabel>;

/// Highest-weight label of an irreducible type of a product of U and O
/// factors, with double-cover bookkeeping carried as half-integer shifts.
struct KTypeLabel {
    std::vector<FactorLabel> factors;

    static KTypeLabel single_u(GLWeight w, Rational shift) {
        KTypeLabel k;
        k.factors.emplace_back(UTypeLabel(std::move(w), std::move(shift)));
        return k;
    }

    friend bool operator==(const KTypeLabel& a, const KTypeLabel& b) {
        return a.factors == b.factors;
    }
    friend auto operator<=>(const KTypeLabel& a, const KTypeLabel& b) {
        return a.factors <=> b.factors;
    }

    std::string str() const {
        std::ostringstream os;
        os << '(';
        for (std::size_t i = 0; i < factors.size(); ++i) {
            if (i) os << " ; ";
            if (std::holds_alternative<UTypeLabel>(factors[i])) {
                const auto& u = std::get<UTypeLabel>(factors[i]);
                auto ev = u.eigenvalues();
                os << '[';
                for (std::size_t j = 0; j < ev.size(); ++j) {
                    if (j) os << ',';
                    os << ev[j].str();
                }
                os << ']';
            } else {
                const auto& o = std::get<OTypeLabel>(factors[i]);
                os << "O[";
                for (std::size_t j = 0; j < o.lam.parts().size(); ++j) {
                    if (j) os << ',';
                    os << o.lam.parts()[j];
                }
                os << (o.sign > 0 ? "]+" : "]-");
            }
        }
        os << ')';
        return os.str();
    }
};

/// Multiplicity function KTypeLabel -> positive integer with an explicit
/// truncation horizon; optionally graded by Fock degree.  A series claims
/// completeness only for labels whose first occurrence degree is <= horizon.
class CharacterSeries {
public:
    CharacterSeries() = default;
    explicit CharacterSeries(int horizon) : horizon_(horizon) {}

    int horizon() const { return horizon_; }
    void set_horizon(int h) { horizon_ = h; }

    void add(const KTypeLabel& label, long mult, int degree) {
        if (mult == 0) return;
        if (mult < 0) throw std::invalid_argument("CharacterSeries: negative multiplicity");
        mult_[label] += mult;
        graded_[{degree, label}] += mult;
        auto it = first_deg_.find(label);
        if (it == first_deg_.end() || degree < it->second) first_deg_[label] = degree;
    }

    long multiplicity(const KTypeLabel& label) const {
        auto it = mult_.find(label);
        return it == mult_.end() ? 0 : it->second;
    }
    const std::map<KTypeLabel, long>& multiplicities() const { return mult_; }
    const std::map<std::pair<int, KTypeLabel>, long>& graded() const { return graded_; }
    std::optional<int> first_degree(const KTypeLabel& label) const {
        auto it = first_deg_.find(label);
        if (it == first_deg_.end()) return std::nullopt;
        return it->second;
    }
    bool empty() const { return mult_.empty(); }
    std::size_t label_count() const { return mult_.size(); }

    friend bool operator==(const CharacterSeries& a, const CharacterSeries& b) {
        return a.horizon_ == b.horizon_ && a.mult_ == b.mult_;
    }

private:
    int horizon_ = 0;
    std::map<KTypeLabel, long> mult_;
    std::map<std::pair<int, KTypeLabel>, long> graded_;
    std::map<KTypeLabel, int> first_deg_;
};

struct SeriesDifference {
    KTypeLabel label;
    long lhs = 0, rhs = 0;
};

struct DifferenceReport {
    std::vector<SeriesDifference> diffs;
    int compared_horizon = 0;
    bool empty() const { return diffs.empty(); }
};

/// Pointwise comparison restricted to the common provably-complete region:
/// labels first occurring beyond min(horizons) are ignored.
inline DifferenceReport series_difference(const CharacterSeries& a, const CharacterSeries& b) {
    DifferenceReport rep;
    rep.compared_horizon = std::min(a.horizon(), b.horizon());
    auto within = [&](const CharacterSeries& s, const KTypeLabel& l) {
        auto d = s.first_degree(l);
        return d.has_value() && *d <= rep.compared_horizon;
    };
    std::map<KTypeLabel, std::pair<long, long>> merged;
    for (const auto& [l, m] : a.multiplicities())
        if (within(a, l)) merged[l].first = m;
    for (const auto& [l, m] : b.multiplicities())
        if (within(b, l)) merged[l].second = m;
    for (const auto& [l, lm] : merged)
        if (lm.first != lm.second) rep.diffs.push_back({l, lm.first, lm.second});
    return rep;
}

enum class SeriesOp { sum, pointwise_min, difference_report };

struct SeriesCombineResult {
    std::optional<CharacterSeries> series;
    std::optional<DifferenceReport> report;
};

inline CharacterSeries series_sum(const CharacterSeries& a, const CharacterSeries& b) {
    if (a.horizon() != b.horizon())
        throw std::invalid_argument("series_sum: horizon mismatch");
    CharacterSeries out(a.horizon());
    for (const auto& [dl, m] : a.graded()) out.add(dl.second, m, dl.first);
    for (const auto& [dl, m] : b.graded()) out.add(dl.second, m, dl.first);
    return out;
}

inline CharacterSeries series_pointwise_min(const CharacterSeries& a, const CharacterSeries& b) {
    if (a.horizon() != b.horizon())
        throw std::invalid_argument("series_pointwise_min: horizon mismatch");
    CharacterSeries out(a.horizon());
    for (const auto& [l, m] : a.multiplicities()) {
        long n = std::min(m, b.multiplicity(l));
        if (n > 0) out.add(l, n, a.first_degree(l).value_or(0));
    }
    return out;
}

/// Dispatch form: sum and pointwise_min yield a series, difference_report
/// yields the label-by-label mismatch list.
inline SeriesCombineResult series_combine(const CharacterSeries& a, const CharacterSeries& b,
                                          SeriesOp op) {
    SeriesCombineResult r;
    switch (op) {
        case SeriesOp::sum: r.series = series_sum(a, b); break;
        case SeriesOp::pointwise_min: r.series = series_pointwise_min(a, b); break;
        case SeriesOp::difference_report: r.report = series_difference(a, b); break;
    }
    return r;
}

struct MultiplicityFreeResult {
    bool free = true;
    std::vector<std::pair<KTypeLabel, long>> violations;
};

inline MultiplicityFreeResult multiplicity_free_check(const CharacterSeries& s) {
    MultiplicityFreeResult r;
    for (const auto& [l, m] : s.multiplicities())
        if (m > 1) {
            r.free = false;
            r.violations.push_back({l, m});
        }
    return r;
}

} // namespace thetak

#endif
