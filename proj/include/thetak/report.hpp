#ifndef THETAK_REPORT_HPP
#define THETAK_REPORT_HPP

#include "thetak/spectra.hpp"
#include "thetak/transfer.hpp"
#include "thetak/verifier.hpp"

#include <json.hpp>

namespace thetak {

using Json = nlohmann::ordered_json;

/// Labels render as per-factor eigenvalue vectors with exact fraction
/// strings; signs and partitions for O factors.
inline Json to_json(const KTypeLabel& l) {
    Json factors = Json::array();
    for (const auto& f : l.factors) {
        if (std::holds_alternative<UTypeLabel>(f)) {
            const auto& u = std::get<UTypeLabel>(f);
            Json ev = Json::array();
            for (const auto& e : u.eigenvalues()) ev.push_back(e.str());
            factors.push_back({{"type", "U"}, {"eigenvalues", ev}});
        } else {
            const auto& o = std::get<OTypeLabel>(f);
            Json parts = Json::array();
            for (int p : o.lam.parts()) parts.push_back(p);
            factors.push_back({{"type", "O"}, {"partition", parts}, {"sign", o.sign}});
        }
    }
    return factors;
}

inline Json to_json(const CharacterSeries& s) {
    Json out;
    out["horizon"] = s.horizon();
    Json entries = Json::array();
    for (const auto& [l, m] : s.multiplicities()) {
        Json e;
        e["label"] = to_json(l);
        e["text"] = l.str();
        e["multiplicity"] = m;
        auto d = s.first_degree(l);
        if (d) e["first_degree"] = *d;
        entries.push_back(e);
    }
    out["entries"] = entries;
    return out;
}

inline Json to_json(const DifferenceReport& d) {
    Json out;
    out["compared_horizon"] = d.compared_horizon;
    Json diffs = Json::array();
    for (const auto& x : d.diffs)
        diffs.push_back({{"label", x.label.str()}, {"lhs", x.lhs}, {"rhs", x.rhs}});
    out["differences"] = diffs;
    return out;
}

inline Json to_json(const VerifyReport& r) {
    Json out;
    out["config"] = r.config;
    out["horizon"] = r.horizon;
    out["lhs"] = to_json(r.lhs);
    out["rhs"] = to_json(r.rhs);
    out["difference"] = to_json(r.difference);
    Json wb = Json::array();
    for (const auto& [w, terms] : r.per_w_breakdown)
        wb.push_back({{"w", w}, {"terms", terms}});
    out["per_w_breakdown"] = wb;
    out["uniqueness_ok"] = r.uniqueness_ok;
    out["verdict"] = r.verdict ? "match" : "mismatch";
    out["notes"] = r.notes;
    return out;
}

inline Json to_json(const Ex2Report& r) {
    Json out;
    out["config"] = r.config;
    out["horizon"] = r.horizon;
    out["target_stable"] = r.target_stable;
    out["vanishing_ok"] = r.vanishing_ok;
    Json sizes = Json::array();
    for (const auto& [j, n] : r.gamma_sizes) sizes.push_back({{"j", j}, {"labels", n}});
    out["gamma_sizes"] = sizes;
    out["lhs_at_j0"] = to_json(r.lhs_at_j0);
    out["rhs"] = to_json(r.rhs);
    out["difference"] = to_json(r.difference);
    out["copies_above_j0"] = r.copies_above_j0;
    out["cover_normalization_det_twist"] = r.cover_twist;
    out["verdict"] = r.verdict ? "match" : "mismatch";
    out["notes"] = r.notes;
    return out;
}

inline Json to_json(const SpanCheckReport& r) {
    Json out;
    out["config"] = r.config;
    out["k"] = r.k;
    out["k_prime"] = r.k_prime;
    out["dim_lhs"] = static_cast<long>(r.dim_lhs);
    out["dim_rhs"] = static_cast<long>(r.dim_rhs);
    out["verdict"] = to_string(r.verdict);
    out["two_sided_with_slack"] = r.two_sided_with_slack;
    out["notes"] = r.notes;
    return out;
}

inline Json to_json(const ScalarActionReport& r) {
    Json out;
    out["config"] = r.config;
    out["all_scalar"] = r.all_scalar;
    out["degree_independent"] = r.degree_independent;
    Json sc = Json::array();
    for (const auto& [name, deg, val] : r.scalars)
        sc.push_back({{"generator", name}, {"degree", deg}, {"scalar", val.str()}});
    out["scalars"] = sc;
    out["notes"] = r.notes;
    return out;
}

inline Json to_json(const InfcharReport& r) {
    Json out;
    out["config"] = r.config;
    out["center_dim"] = static_cast<long>(r.center_dim);
    out["all_scalar"] = r.all_scalar;
    out["witnesses_found"] = r.witnesses_found;
    Json sc = Json::array();
    for (const auto& [zi, tag, val] : r.scalars)
        sc.push_back({{"element", static_cast<long>(zi)}, {"character", tag},
                      {"scalar", val.str()}});
    out["scalars"] = sc;
    return out;
}

/// Matrix-market style dump of an operator matrix: exact fraction strings.
inline Json matrix_dump(const SparseMatrix& m) {
    Json out;
    out["rows"] = static_cast<long>(m.rows());
    out["cols"] = static_cast<long>(m.cols());
    Json entries = Json::array();
    for (const auto& [rc, v] : m.entries())
        entries.push_back({{"row", static_cast<long>(rc.first)},
                           {"col", static_cast<long>(rc.second)},
                           {"re", v.re().str()},
                           {"im", v.im().str()}});
    out["entries"] = entries;
    return out;
}

} // namespace thetak

#endif
