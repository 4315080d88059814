#ifndef FROBINT_ORDERS_HPP
#define FROBINT_ORDERS_HPP

#include "frobint/frobenius.hpp"
#include "frobint/rq_field.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <vector>

namespace frobint {

struct OrderError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct OrderSpec {
    RQIdeal b;
    RQInt b_gen;
    RQInt u;
    FrobData frob;
};

struct ConductorResult {
    RQIdeal b_OL;
    std::vector<PrimeFactor> factorization;  // exponents of b_OL
    std::map<PrimeLabel, RQInt> witness;    // u valid modulo each full prime power
};

// Both conditions for u modulo b: 2u - a_p in b, u^2 - a_p u + s_p in b^2.
inline bool basis_conditions(const RQField& K, const RQIdeal& b, const FrobData& f, RQInt u) {
    if (!K.contains(b, K.sub(K.scale(u, 2), f.ap))) return false;
    const RQInt h = K.add(K.sub(K.mul(u, u), K.mul(f.ap, u)), f.sp);
    return K.contains(K.mul(b, b), h);
}

inline std::optional<RQInt> search_u(const RQField& K, const RQIdeal& b, const FrobData& f) {
    for (const RQInt& u : K.residue_system(b))
        if (basis_conditions(K, b, f, u)) return u;
    return std::nullopt;
}

// v_P of the principal ideal (x).
inline int elem_valuation(const RQField& K, const RQIdeal& P, RQInt x) {
    if (x.is_zero()) throw OrderError("valuation of zero");
    return K.valuation(P, K.ideal(x));
}

// Exponent of P in b_OL, with the witness u for P^e when e > 0.
inline std::pair<int, std::optional<RQInt>> conductor_exponent_witness(const RQField& K, const RQIdeal& P,
                                                                        const PrimeLabel& lab, const FrobData& f) {
    if (f.disc.is_zero()) throw OrderError("DiscZero");
    const int v = elem_valuation(K, P, f.disc);
    if (lab.ell != 2) {
        const int e = v / 2;
        if (e == 0) return {0, std::nullopt};
        return {e, search_u(K, K.pow(P, e), f)};
    }
    int e = 0;
    std::optional<RQInt> w;
    for (int e2 = 1; e2 <= v / 2; ++e2) {
        auto u = search_u(K, K.pow(P, e2), f);
        if (!u) break;
        e = e2;
        w = u;
    }
    return {e, w};
}

inline int conductor_exponent(const RQField& K, const RQIdeal& P, const PrimeLabel& lab, const FrobData& f) {
    return conductor_exponent_witness(K, P, lab, f).first;
}

inline ConductorResult compute_bOL(const RQField& K, const FrobData& f) {
    if (f.disc.is_zero()) throw OrderError("DiscZero");
    ConductorResult r;
    r.b_OL = K.unit_ideal();
    const std::int64_t N = std::llabs(K.norm(f.disc));
    for (auto [ell, e] : factor_integer(static_cast<std::uint64_t>(N))) {
        for (const auto& [P, lab] : K.prime_above(static_cast<std::int64_t>(ell))) {
            auto [ex, w] = conductor_exponent_witness(K, P, lab, f);
            if (ex == 0) continue;
            if (!w) throw OrderError("conductor witness missing");
            r.factorization.push_back({P, ex, lab});
            r.witness[lab] = *w;
            r.b_OL = K.mul(r.b_OL, K.pow(P, ex));
        }
    }
    return r;
}

// u valid modulo b (b | b_OL), canonical modulo b.
inline RQInt find_u(const RQField& K, const RQIdeal& b, const FrobData& f) {
    if (b.is_unit()) return RQInt{0, 0};
    std::optional<RQInt> u;
    if (b.norm() <= 10000) {
        u = search_u(K, b, f);
    } else {
        // CRT over prime-power parts.
        RQInt acc{0, 0};
        RQIdeal M = K.unit_ideal();
        for (const auto& pf : K.factor_ideal(b)) {
            const RQIdeal Q = K.pow(pf.prime, pf.exp);
            auto w = search_u(K, Q, f);
            if (!w) throw OrderError("NoWitness");
            if (M.is_unit()) {
                acc = *w;
            } else {
                auto [x, y] = K.split_one(M, Q);  // x in M, y in Q
                acc = K.add(K.mul(acc, y), K.mul(*w, x));
            }
            M = K.mul(M, Q);
            acc = K.reduce_mod(acc, M);
        }
        u = acc;
    }
    if (!u || !basis_conditions(K, b, f, *u)) throw OrderError("NoWitness");
    return K.reduce_mod(*u, b);
}

// All divisors of b_OL, norm descending (ties by HNF for determinism).
inline std::vector<RQIdeal> order_divisors(const RQField& K, const ConductorResult& c) {
    std::vector<RQIdeal> out{K.unit_ideal()};
    for (const auto& pf : c.factorization) {
        std::vector<RQIdeal> next;
        for (const auto& d : out) {
            RQIdeal x = d;
            for (int e = 0; e <= pf.exp; ++e) {
                next.push_back(x);
                x = K.mul(x, pf.prime);
            }
        }
        out = std::move(next);
    }
    std::sort(out.begin(), out.end(), [](const RQIdeal& x, const RQIdeal& y) {
        if (x.norm() != y.norm()) return x.norm() > y.norm();
        return x < y;
    });
    return out;
}

inline OrderSpec make_order_spec(const RQField& K, const RQIdeal& b, const FrobData& f) {
    OrderSpec s;
    s.b = b;
    s.b_gen = b.is_unit() ? RQInt{1, 0} : K.find_generator(b);
    s.u = find_u(K, b, f);
    s.frob = f;
    return s;
}

}  // namespace frobint

#endif
