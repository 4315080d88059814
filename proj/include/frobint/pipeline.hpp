#ifndef FROBINT_PIPELINE_HPP
#define FROBINT_PIPELINE_HPP

#include "frobint/endo.hpp"
#include "frobint/fixture.hpp"
#include "frobint/sigma.hpp"

#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace frobint {

struct TableRow {
    std::int64_t p = 0;
    std::optional<RQInt> ap;
    std::optional<RQInt> u, b;
    std::string fac_bp = "-", fac_bOL = "-", marks = "-";
    std::string bail_reason;  // empty when the row is complete
    std::optional<SigmaMatrix> sigma;

    bool has_data() const { return b.has_value(); }
};

// "*" non-ordinary, "**" ordinary but not absolutely simple; only rows with a_p irrational are marked.
inline std::string marks_for(const FrobClass& c) {
    if (!c.is_fp_simple || c.is_scalar) return "-";
    if (!c.is_ordinary) return "*";
    if (!c.is_abs_simple) return "**";
    return "-";
}

inline std::string fac_of(const RQField& K, const RQIdeal& b) { return fac_to_string(K.factor_ideal(b)); }

// Fills b_p, u_p, sigma from an order spec; false if the sigma check fails.
inline bool attach_spec(const RQField& K, TableRow& row, const OrderSpec& s) {
    const SigmaMatrix m = build_sigma(K, s);
    if (!verify_sigma(K, m, s).ok()) return false;
    row.u = s.u;
    row.b = s.b_gen;
    row.fac_bp = fac_of(K, s.b);
    row.sigma = m;
    return true;
}

inline TableRow eigen_row(const RQField& K, std::int64_t p, RQInt ap) {
    TableRow row;
    row.p = p;
    row.ap = ap;
    try {
        const FrobData f = make_hp(K, ap, p);
        const FrobClass c = classify(K, f);
        row.marks = marks_for(c);
        if (c.is_scalar) {
            row.bail_reason = bail_name(BailReason::Scalar);
            return row;
        }
        const ConductorResult cond = compute_bOL(K, f);
        row.fac_bOL = fac_to_string(cond.factorization);
        if (cond.b_OL.is_unit()) {
            if (!attach_spec(K, row, make_order_spec(K, K.unit_ideal(), f))) row.bail_reason = "SIGMA_FAILED";
        } else if (c.bail != BailReason::None) {
            row.bail_reason = bail_name(c.bail);
        } else {
            row.bail_reason = "NEEDS_CURVE";
        }
    } catch (const std::exception& e) {
        row.bail_reason = std::string("ERROR: ") + e.what();
    }
    return row;
}

inline std::vector<TableRow> run_eigen_mode(const Fixture& fx) {
    const RQField K = fx.field();
    std::vector<TableRow> rows;
    for (const auto& r : fx.rows) rows.push_back(eigen_row(K, r.p, r.ap));
    return rows;
}

struct CurveOptions {
    std::int64_t pmin = 2, pmax = 200;
    std::int64_t level = 0;  // primes dividing it are bad
    TorsionCaps caps;
    bool force_nonordinary = false;
};

inline bool is_prime(std::int64_t n) {
    if (n < 2) return false;
    for (std::int64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// c1 > 0, tie c0 >= 0.
inline RQInt canonical_conjugate(const ApPair& pr) {
    auto key = [](RQInt x) { return std::make_pair(x.c1, x.c0); };
    return key(pr.first) >= key(pr.second) ? pr.first : pr.second;
}

inline const FixtureRow* fixture_row(const Fixture* fx, std::int64_t p) {
    if (!fx) return nullptr;
    for (const auto& r : fx->rows)
        if (r.p == p) return &r;
    return nullptr;
}

inline TableRow curve_row(const RQField& K, const CurveModel& model, std::int64_t p, const CurveOptions& opt,
                          const Fixture* fx) {
    TableRow row;
    row.p = p;
    if ((opt.level != 0 && opt.level % p == 0) || !good_reduction_check(model, p)) {
        row.bail_reason = bail_name(BailReason::BadReduction);
        return row;
    }
    try {
        const WeilQuartic w = curve_weil(model, p);
        ApPair pr;
        try {
            pr = recover_ap(K, w);
        } catch (const FrobError&) {
            row.bail_reason = bail_name(BailReason::NotRM);
            return row;
        }
        RQInt ap = canonical_conjugate(pr);
        if (const FixtureRow* fr = fixture_row(fx, p)) {
            if (fr->ap == pr.first || fr->ap == pr.second)
                ap = fr->ap;
            else
                row.bail_reason = "AP_MISMATCH";
        }
        row.ap = ap;
        const FrobData f = make_hp(K, ap, p);
        const FrobClass c = classify(K, f);
        row.marks = marks_for(c);
        if (c.is_scalar) {
            row.bail_reason = bail_name(BailReason::Scalar);
            return row;
        }
        const ConductorResult cond = compute_bOL(K, f);
        row.fac_bOL = fac_to_string(cond.factorization);
        if (!row.bail_reason.empty()) return row;
        if (cond.b_OL.is_unit()) {
            if (!attach_spec(K, row, make_order_spec(K, K.unit_ideal(), f))) row.bail_reason = "SIGMA_FAILED";
            return row;
        }
        const bool forceable = c.bail == BailReason::NotOrdinary || c.bail == BailReason::NotAbsSimple;
        if (c.bail != BailReason::None && !(forceable && opt.force_nonordinary)) {
            row.bail_reason = bail_name(c.bail);
            return row;
        }
        CurveContext ctx(model, p, w, opt.caps);
        const BpResult r = determine_bp(K, f, cond, ctx);
        if (!r.ok) {
            std::string why = r.reason;
            if (why.rfind("Inconclusive(", 0) == 0) why = why.substr(13, why.size() - 14);
            row.bail_reason = std::string(bail_name(BailReason::Inconclusive)) + ": " + why;
            return row;
        }
        if (!attach_spec(K, row, r.spec)) row.bail_reason = "SIGMA_FAILED";
        if (c.bail != BailReason::None) {
            row.marks += "!";
            row.bail_reason = std::string("UNTRUSTED: ") + bail_name(c.bail);
        }
    } catch (const BudgetExceeded& e) {
        row.bail_reason = std::string("BUDGET: ") + e.what();
    } catch (const std::exception& e) {
        row.bail_reason = std::string("ERROR: ") + e.what();
    }
    return row;
}

inline std::vector<TableRow> run_curve_mode(const RQField& K, const CurveModel& model, const CurveOptions& opt,
                                            const Fixture* fx = nullptr) {
    std::vector<TableRow> rows;
    for (std::int64_t p = std::max<std::int64_t>(opt.pmin, 2); p <= opt.pmax; ++p)
        if (is_prime(p)) rows.push_back(curve_row(K, model, p, opt, fx));
    return rows;
}

// Rows a printed table would carry: proper b_OL, or no b_OL at all (scalar).
inline bool is_interesting(const TableRow& r) {
    return r.ap.has_value() && r.fac_bOL != "(1)";
}

enum class TableFormat { Tsv, Markdown };

inline std::string render_table(const std::vector<TableRow>& rows, TableFormat fmt, bool with_reasons = false) {
    auto cells = [&](const TableRow& r) {
        std::vector<std::string> c{std::to_string(r.p),
                                   r.ap ? RQField::format(*r.ap) : "-",
                                   r.u ? RQField::format(*r.u) : "-",
                                   r.b ? RQField::format(*r.b) : "-",
                                   r.fac_bp,
                                   r.fac_bOL,
                                   r.marks};
        if (with_reasons) c.push_back(r.bail_reason.empty() ? "-" : r.bail_reason);
        return c;
    };
    std::vector<std::string> head{"p", "a_p", "u_p", "b_p", "fac_bp", "fac_bOL", "marks"};
    if (with_reasons) head.push_back("reason");
    std::ostringstream out;
    if (fmt == TableFormat::Tsv) {
        auto line = [&](const std::vector<std::string>& c) {
            for (std::size_t i = 0; i < c.size(); ++i) out << (i ? "\t" : "") << c[i];
            out << '\n';
        };
        line(head);
        for (const auto& r : rows) line(cells(r));
    } else {
        auto esc = [](const std::string& s) { return s == "-" ? s : "`" + s + "`"; };
        auto line = [&](const std::vector<std::string>& c, bool code) {
            out << '|';
            for (std::size_t i = 0; i < c.size(); ++i) out << ' ' << (code && i ? esc(c[i]) : c[i]) << " |";
            out << '\n';
        };
        head[4] = "Fac(b_p)";
        head[5] = "Fac(b_OL)";
        line(head, false);
        out << '|';
        for (std::size_t i = 0; i < head.size(); ++i) out << " --- |";
        out << '\n';
        for (const auto& r : rows) line(cells(r), true);
    }
    return out.str();
}

// Printed split-prime labels to ours: swapped[ell] means l{ell}_1 <-> l{ell}_2.
using LabelMap = std::map<std::int64_t, bool>;

inline std::vector<PrimeFactor> apply_label_map(const RQField& K, std::vector<PrimeFactor> fac, const LabelMap& m) {
    for (auto& f : fac) {
        auto it = m.find(f.label.ell);
        if (f.label.type == SplitType::Split && it != m.end() && it->second) {
            f.label.index = 3 - f.label.index;
            f.prime = K.prime_by_label(f.label);
        }
    }
    return fac;
}

// Evidence from printed b_p elements, whose factorization does not depend on labels.
inline LabelMap infer_label_map(const Fixture& fx) {
    const RQField K = fx.field();
    LabelMap m;
    for (const auto& r : fx.rows) {
        if (!r.b) continue;
        for (const auto& f : K.parse_factorization(r.fac_bp)) {
            if (f.label.type != SplitType::Split || m.count(f.label.ell)) continue;
            const int v = K.valuation(f.prime, K.ideal(*r.b));
            m[f.label.ell] = v != f.exp;
        }
    }
    return m;
}

enum class DiffKind { Exact, Conjugate, LabelSwap, UClass, Mismatch };

inline const char* diff_name(DiffKind k) {
    switch (k) {
        case DiffKind::Exact: return "exact";
        case DiffKind::Conjugate: return "conjugate";
        case DiffKind::LabelSwap: return "label-swap";
        case DiffKind::UClass: return "u-class";
        case DiffKind::Mismatch: return "mismatch";
    }
    return "";
}

struct RowDiff {
    std::int64_t p = 0;
    DiffKind kind = DiffKind::Exact;
    bool compared_bp = false;  // both sides carry b_p
    bool missing_bp = false;   // fixture has b_p, row is a dash
    std::vector<std::string> notes;
};

struct DiffReport {
    std::vector<RowDiff> rows;
    std::vector<std::int64_t> absent;  // fixture primes with no computed row
    std::size_t count(DiffKind k) const {
        std::size_t n = 0;
        for (const auto& r : rows) n += r.kind == k;
        return n;
    }
    bool ok() const { return count(DiffKind::Mismatch) == 0 && absent.empty(); }
    std::string str() const {
        std::ostringstream out;
        for (const auto& r : rows) {
            if (r.kind == DiffKind::Exact && r.notes.empty()) continue;
            out << r.p << '\t' << diff_name(r.kind);
            for (const auto& n : r.notes) out << '\t' << n;
            out << '\n';
        }
        for (auto p : absent) out << p << "\tabsent\n";
        out << "exact " << count(DiffKind::Exact) << ", conjugate " << count(DiffKind::Conjugate) << ", label-swap "
            << count(DiffKind::LabelSwap) << ", u-class " << count(DiffKind::UClass) << ", mismatch "
            << count(DiffKind::Mismatch) << '\n';
        return out.str();
    }
};

inline RowDiff diff_row(const RQField& K, const TableRow& row, const FixtureRow& fr, const LabelMap& lm,
                        bool compare_marks) {
    RowDiff d;
    d.p = row.p;
    auto bump = [&](DiffKind k, std::string note) {
        d.kind = std::max(d.kind, k);
        if (!note.empty()) d.notes.push_back(std::move(note));
    };
    bool conj = false;
    if (!row.ap) {
        bump(DiffKind::Mismatch, "a_p missing (" + row.bail_reason + ")");
        return d;
    }
    if (!(*row.ap == fr.ap)) {
        if (K.conj(*row.ap) == fr.ap) {
            conj = true;
            bump(DiffKind::Conjugate, "");
        } else {
            bump(DiffKind::Mismatch, "a_p " + RQField::format(*row.ap) + " vs " + RQField::format(fr.ap));
            return d;
        }
    }
    if (fr.fac_bOL != "-" || row.fac_bOL != "-") {
        if (fr.fac_bOL == "-" || row.fac_bOL == "-") {
            bump(DiffKind::Mismatch, "fac_bOL " + row.fac_bOL + " vs " + fr.fac_bOL);
        } else {
            const auto printed = K.parse_factorization(fr.fac_bOL);
            RQIdeal ours = K.ideal_of_factors(K.parse_factorization(row.fac_bOL));
            if (conj) ours = K.conj(ours);
            if (K.ideal_of_factors(printed) != ours) {
                if (K.ideal_of_factors(apply_label_map(K, printed, lm)) == ours)
                    bump(DiffKind::LabelSwap, "");
                else
                    bump(DiffKind::Mismatch, "fac_bOL " + row.fac_bOL + " vs " + fr.fac_bOL);
            }
        }
    }
    if (fr.b && row.b) {
        d.compared_bp = true;
        const RQInt u = conj ? K.conj(*row.u) : *row.u;
        const RQIdeal b = K.ideal(conj ? K.conj(*row.b) : *row.b);
        if (!(b == K.ideal(*fr.b))) {
            bump(DiffKind::Mismatch, "b_p " + RQField::format(*row.b) + " vs " + RQField::format(*fr.b));
        } else if (!(u == *fr.u)) {
            if (K.contains(b, K.sub(u, *fr.u)))
                bump(DiffKind::UClass, "");
            else
                bump(DiffKind::Mismatch, "u_p " + RQField::format(*row.u) + " vs " + RQField::format(*fr.u));
        }
    } else if (fr.b) {
        d.missing_bp = true;
        d.notes.push_back("b_p not computed (" + row.bail_reason + ")");
    } else if (row.b && fr.fac_bOL != "-" && !K.parse_factorization(fr.fac_bOL).empty()) {
        d.notes.push_back("b_p computed where the fixture has none");
    }
    if (compare_marks) {
        const std::string ours = row.marks.substr(0, row.marks.find('!'));
        if (ours != fr.marks)
            bump(DiffKind::Mismatch, "marks " + row.marks + " vs " + fr.marks);
    }
    return d;
}

// Split primes with no printed b_p evidence get whichever orientation agrees with more Fac(b_OL) entries.
inline LabelMap complete_label_map(const Fixture& fx, const std::vector<TableRow>& rows, LabelMap lm) {
    const RQField K = fx.field();
    std::set<std::int64_t> open;
    for (const auto& r : fx.rows)
        if (r.fac_bOL != "-")
            for (const auto& f : K.parse_factorization(r.fac_bOL))
                if (f.label.type == SplitType::Split && !lm.count(f.label.ell)) open.insert(f.label.ell);
    for (std::int64_t ell : open) {
        int score[2] = {0, 0};
        for (int s = 0; s < 2; ++s) {
            LabelMap trial = lm;
            trial[ell] = s == 1;
            for (const auto& fr : fx.rows) {
                auto it = std::find_if(rows.begin(), rows.end(), [&](const TableRow& r) { return r.p == fr.p; });
                if (it == rows.end() || fr.fac_bOL == "-" || it->fac_bOL == "-") continue;
                if (fr.fac_bOL.find("l" + std::to_string(ell) + "_") == std::string::npos) continue;
                score[s] += diff_row(K, *it, fr, trial, false).kind != DiffKind::Mismatch;
            }
        }
        lm[ell] = score[1] > score[0];
    }
    return lm;
}

inline DiffReport diff_against_fixture(const std::vector<TableRow>& rows, const Fixture& fx, bool compare_marks = true) {
    const RQField K = fx.field();
    const LabelMap lm = complete_label_map(fx, rows, infer_label_map(fx));
    DiffReport rep;
    for (const auto& fr : fx.rows) {
        auto it = std::find_if(rows.begin(), rows.end(), [&](const TableRow& r) { return r.p == fr.p; });
        if (it == rows.end()) {
            rep.absent.push_back(fr.p);
            continue;
        }
        rep.rows.push_back(diff_row(K, *it, fr, lm, compare_marks));
    }
    return rep;
}

// Printed data consistency for one row with (u_p, b_p).
struct RowConsistency {
    bool basis = false, divides_bOL = false, sigma_charpoly = false, cofactor_integral = false;
    bool ok() const { return basis && divides_bOL && sigma_charpoly && cofactor_integral; }
};

inline RowConsistency check_printed_row(const RQField& K, const FixtureRow& r) {
    RowConsistency c;
    if (!r.b || !r.u) return c;
    const FrobData f = make_hp(K, r.ap, r.p);
    const RQIdeal b = K.ideal(*r.b);
    c.basis = basis_conditions(K, b, f, *r.u);
    c.divides_bOL = !f.disc.is_zero() && K.divides(b, compute_bOL(K, f).b_OL);
    try {
        const OrderSpec s{b, *r.b, *r.u, f};
        const SigmaMatrix m = build_sigma(K, s);
        const SigmaReport rep = verify_sigma(K, m, s);
        c.sigma_charpoly = rep.trace_ok && rep.det_ok;
        c.cofactor_integral = rep.cofactor_integral;
    } catch (const SigmaError&) {
    }
    return c;
}

struct PatternCheck {
    std::string name;
    bool ok = true;
    std::vector<std::int64_t> offenders;
};

// Observed divisibility patterns on rows with data and no mark.
inline std::vector<PatternCheck> pattern_assertions(const Fixture& fx) {
    const RQField K = fx.field();
    const LabelMap lm = infer_label_map(fx);
    auto prime = [&](PrimeLabel lab) {
        auto it = lm.find(lab.ell);
        if (lab.type == SplitType::Split && it != lm.end() && it->second) lab.index = 3 - lab.index;
        return K.prime_by_label(lab);
    };
    std::vector<const FixtureRow*> data;
    for (const auto& r : fx.rows)
        if (r.has_data() && !r.marked()) data.push_back(&r);
    std::vector<PatternCheck> out;
    auto divisibility = [&](std::string name, std::int64_t mod, const RQIdeal& P) {
        PatternCheck c{std::move(name), true, {}};
        for (const FixtureRow* r : data)
            if (r->p % mod == 1 && !K.divides(P, K.ideal(*r->b))) c.offenders.push_back(r->p);
        c.ok = c.offenders.empty();
        out.push_back(c);
    };
    auto two_set = [&](std::set<std::int64_t> want) {
        PatternCheck c{"(2) | b_p exactly on the expected primes", true, {}};
        const RQIdeal two = K.ideal(RQInt{2, 0});
        std::set<std::int64_t> got;
        for (const FixtureRow* r : data)
            if (K.divides(two, K.ideal(*r->b))) got.insert(r->p);
        for (auto p : got)
            if (!want.count(p)) c.offenders.push_back(p);
        for (auto p : want)
            if (!got.count(p)) c.offenders.push_back(p);
        c.ok = c.offenders.empty();
        out.push_back(c);
    };
    if (fx.level == 23) divisibility("p = 1 mod 11 => l11_1 | b_p", 11, prime({11, SplitType::Split, 1}));
    if (fx.level == 125) {
        divisibility("p = 1 mod 5 => l5 | b_p", 5, prime({5, SplitType::Ramified, 1}));
        two_set({887, 1657, 1699});
    }
    if (fx.level == 133) two_set({839, 941, 1663, 1783, 1789});
    return out;
}

// Display field for the bundled levels.
inline std::optional<std::string> default_minpoly(std::int64_t level) {
    switch (level) {
        case 23:
        case 125: return "x^2+x-1";
        case 133: return "x^2+3*x+1";
        default: return std::nullopt;
    }
}

}  // namespace frobint

#endif
