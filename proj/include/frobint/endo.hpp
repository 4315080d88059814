#ifndef FROBINT_ENDO_HPP
#define FROBINT_ENDO_HPP

#include "frobint/jacobian.hpp"
#include "frobint/orders.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace frobint {

struct EmbeddingFailed : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// g(pi)/n with g reduced modulo h4.
struct PiExpression {
    ZPoly g;
    BigInt n = 1;
    friend bool operator==(const PiExpression&, const PiExpression&) = default;
};

// Q[x]/(h4) with x the Frobenius.
class PiAlgebra {
public:
    explicit PiAlgebra(const WeilQuartic& w) : w_(w), h4_(to_q(w.h4())) {}

    const WeilQuartic& weil() const { return w_; }
    QPoly reduce(const QPoly& a) const { return divmod(a, h4_).second; }
    QPoly mul(const QPoly& a, const QPoly& b) const { return reduce(a * b); }
    QPoly pi() const { return QPoly({BigRat(0), BigRat(1)}); }

    // pi + q/pi, using pi^{-1} = -(pi^3 - s1 pi^2 + s2 pi - q s1)/q^2
    QPoly trace_elem() const {
        const BigRat q = w_.q;
        return QPoly({BigRat(q * w_.s1) / q, BigRat(q - w_.s2) / q, BigRat(w_.s1) / q, BigRat(-1) / q});
    }

    static PiExpression to_expression(const QPoly& a) {
        BigInt n = 1;
        for (const auto& c : a.c) n = boost::multiprecision::lcm(n, boost::multiprecision::denominator(c));
        std::vector<BigInt> g;
        BigInt content = 0;
        for (const auto& c : a.c) {
            g.push_back(boost::multiprecision::numerator(c) * (n / boost::multiprecision::denominator(c)));
            content = boost::multiprecision::gcd(content, g.back());
        }
        const BigInt d = boost::multiprecision::gcd(content, n);
        if (d > 1) {
            for (auto& x : g) x /= d;
            n /= d;
        }
        return {ZPoly(std::move(g)), n};
    }

private:
    WeilQuartic w_;
    QPoly h4_;
};

// Image of the display generator a, from a_p = c0 + c1 a and a_p = pi + q/pi.
inline QPoly embed_gen_poly(const PiAlgebra& A, const RQField& K, RQInt ap) {
    if (ap.c1 == 0) throw EmbeddingFailed("a_p is rational");
    const QPoly alpha = A.trace_elem();
    const QPoly gen = (BigRat(1) / BigRat(ap.c1)) * (alpha - QPoly({BigRat(ap.c0)}));
    const QPoly rel = A.reduce(A.mul(gen, gen) + BigRat(K.t()) * gen + QPoly({BigRat(K.n())}));
    if (!rel.is_zero()) throw EmbeddingFailed("a_p is not compatible with h4");
    return gen;
}

inline PiExpression embed_field_gen(const WeilQuartic& w, const RQField& K, RQInt ap) {
    const PiAlgebra A(w);
    return PiAlgebra::to_expression(embed_gen_poly(A, K, ap));
}

inline QPoly embed_elem(const QPoly& gen, RQInt x) { return QPoly({BigRat(x.c0)}) + BigRat(x.c1) * gen; }

// (pi - u)/b = (pi - u) conj(b) / N(b)
inline PiExpression to_pi_numerator(const RQField& K, const WeilQuartic& w, RQInt ap, RQInt u, RQInt b) {
    if (b.is_zero()) throw EmbeddingFailed("to_pi_numerator: b = 0");
    const PiAlgebra A(w);
    const QPoly gen = embed_gen_poly(A, K, ap);
    const QPoly num = A.mul(A.pi() - embed_elem(gen, u), embed_elem(gen, K.conj(b)));
    return PiAlgebra::to_expression((BigRat(1) / BigRat(K.norm(b))) * num);
}

// Least k <= kmax with x^k = 1 in (Z/n)[x]/(h4).
inline std::optional<int> torsion_field_degree(const WeilQuartic& w, const BigInt& n, int kmax) {
    if (n == 1) return 1;
    const ZPoly h = w.h4();
    auto md = [&](const BigInt& x) {
        BigInt r = x % n;
        return r < 0 ? r + n : r;
    };
    std::array<BigInt, 4> cur{md(0), md(1), md(0), md(0)};
    for (int k = 1; k <= kmax; ++k) {
        if (cur[0] == md(1) && cur[1] == 0 && cur[2] == 0 && cur[3] == 0) return k;
        // multiply by x; x^4 = -(h0 + h1 x + h2 x^2 + h3 x^3)
        const BigInt top = cur[3];
        for (int i = 3; i > 0; --i) cur[i] = md(cur[i - 1] - top * h.coef(i));
        cur[0] = md(-top * h.coef(0));
    }
    return std::nullopt;
}

struct TorsionCaps {
    int kmax = 36;
    int budget = 64;
    std::size_t enum_cap = 20000;
    std::uint64_t seed = 1;
};

// Curve, prime and Weil data, with Jacobians cached by working degree.
class CurveContext {
public:
    CurveContext(CurveModel c, std::int64_t p, WeilQuartic w, TorsionCaps caps = {})
        : model_(std::move(c)), p_(p), w_(w), caps_(caps), rng_(caps.seed ^ (static_cast<std::uint64_t>(p) << 20)) {}
    CurveContext(CurveModel c, std::int64_t p, TorsionCaps caps = {})
        : CurveContext(c, p, curve_weil(c, p), caps) {}

    const CurveModel& model() const { return model_; }
    std::int64_t p() const { return p_; }
    const WeilQuartic& weil() const { return w_; }
    const TorsionCaps& caps() const { return caps_; }
    std::mt19937_64& rng() { return rng_; }

    int working_degree(int k) const { return frobint::working_degree(model_, p_, k); }
    const Jacobian& jacobian(int k) {
        const int kk = working_degree(k);
        auto it = cache_.find(kk);
        if (it == cache_.end()) it = cache_.emplace(kk, std::make_unique<Jacobian>(make_jacobian(model_, p_, kk))).first;
        return *it->second;
    }

private:
    CurveModel model_;
    std::int64_t p_;
    WeilQuartic w_;
    TorsionCaps caps_;
    std::mt19937_64 rng_;
    std::map<int, std::unique_ptr<Jacobian>> cache_;
};

struct TorsionSample {
    bool full = false;
    std::string reason;
    std::vector<MumfordDiv> gens;  // generators of the spanned subgroup, all killed by n
    std::uint64_t subgroup_size = 1;
    int field_degree = 0;
    int draws = 0;
};

// (x^k - 1)/n reduced mod h4, when x^k = 1 in (Z/n)[x]/(h4).
inline std::optional<std::vector<BigInt>> frobenius_cofactor(const WeilQuartic& w, int k, const BigInt& n) {
    const ZPoly h = w.h4();
    std::array<BigInt, 4> cur{0, 1, 0, 0};
    for (int i = 1; i < k; ++i) {
        const BigInt top = cur[3];
        for (int j = 3; j > 0; --j) cur[j] = cur[j - 1] - top * h.coef(j);
        cur[0] = -top * h.coef(0);
    }
    cur[0] -= 1;
    std::vector<BigInt> g;
    for (const auto& c : cur) {
        if (c % n != 0) return std::nullopt;
        g.push_back(c / n);
    }
    return g;
}

// Random points of J[ell^e]. On J(F_{p^k}) the endomorphism (pi^k - 1)/ell^e maps
// onto J[ell^e], so images of random points are uniform there.
inline TorsionSample sample_torsion(CurveContext& ctx, std::int64_t ell, int e, int budget) {
    TorsionSample s;
    BigInt n = 1;
    for (int i = 0; i < e; ++i) n *= ell;
    if (n == 1) {
        s.full = true;
        s.field_degree = 1;
        s.gens.push_back(ctx.jacobian(1).zero());
        return s;
    }
    const BigInt full = n * n * n * n;
    const bool enumerable = full <= BigInt(ctx.caps().enum_cap);
    const auto k = torsion_field_degree(ctx.weil(), n, ctx.caps().kmax);
    if (!k || ctx.working_degree(*k) > kMaxExt) {
        s.reason = "TorsionFieldTooLarge";
        return s;
    }
    const Jacobian& J = ctx.jacobian(*k);
    s.field_degree = J.ext_degree();
    const auto g = frobenius_cofactor(ctx.weil(), J.ext_degree(), n);
    if (!g) {
        s.reason = "TorsionFieldTooLarge";
        return s;
    }
    if (!enumerable) {
        // Too large to certify a span; the points can still serve as witnesses.
        for (; s.draws < budget; ++s.draws) {
            const MumfordDiv Q = J.apply_poly(*g, J.random(ctx.rng()));
            if (!J.is_zero(J.mul(Q, n))) throw std::logic_error("sample_torsion: point not killed by n");
            if (!J.is_zero(Q)) s.gens.push_back(Q);
        }
        s.reason = "TorsionTooLarge";
        return s;
    }
    SubgroupBuilder H(J, ctx.caps().enum_cap);
    for (; s.draws < budget && H.size() < static_cast<std::size_t>(full); ++s.draws) {
        MumfordDiv Q = J.apply_poly(*g, J.random(ctx.rng()));
        if (!J.is_zero(J.mul(Q, n))) throw std::logic_error("sample_torsion: point not killed by n");
        for (int i = 0; i < 4 && !J.is_zero(Q); ++i, Q = J.frob(Q)) {
            if (H.contains(Q)) continue;
            if (!H.add_generator(Q)) {
                s.reason = "TorsionTooLarge";
                return s;
            }
            s.gens.push_back(Q);
        }
    }
    s.subgroup_size = H.size();
    s.full = H.size() == static_cast<std::size_t>(full);
    if (!s.full) s.reason = "BudgetExhausted";
    return s;
}

enum class Membership { Member, NonMember, Inconclusive };

inline const char* membership_name(Membership m) {
    switch (m) {
        case Membership::Member: return "Member";
        case Membership::NonMember: return "NonMember";
        case Membership::Inconclusive: return "Inconclusive";
    }
    return "";
}

struct MembershipVerdict {
    Membership kind = Membership::Inconclusive;
    std::string reason;
    int points_tested = 0;
    int field_degree = 0;
    std::int64_t ell = 0;  // prime of the deciding test, if any
    std::optional<MumfordDiv> witness;
};

// g(pi)/n in End, tested one prime at a time. The p-part of n is skipped: for an
// ordinary surface End is maximal at p. With only_primes set, other primes are
// assumed to pass.
inline MembershipVerdict kills_torsion(const PiExpression& e, CurveContext& ctx,
                                       const std::optional<std::vector<std::int64_t>>& only_primes = std::nullopt) {
    MembershipVerdict v;
    BigInt n = e.n;
    while (n % ctx.p() == 0) n /= ctx.p();
    if (n == 1) {
        v.kind = Membership::Member;
        return v;
    }
    if (n > BigInt(std::numeric_limits<std::int64_t>::max())) {
        v.reason = "DenominatorTooLarge";
        return v;
    }
    bool inconclusive = false;
    for (auto [ell, ex] : factor_integer(static_cast<std::uint64_t>(n))) {
        const auto l = static_cast<std::int64_t>(ell);
        if (only_primes && std::find(only_primes->begin(), only_primes->end(), l) == only_primes->end()) continue;
        BigInt le = 1;
        for (int i = 0; i < ex; ++i) le *= l;
        const TorsionSample s = sample_torsion(ctx, l, ex, ctx.caps().budget);
        v.field_degree = std::max(v.field_degree, s.field_degree);
        if (s.gens.empty() && !s.full) {
            inconclusive = true;
            if (v.reason.empty()) v.reason = s.reason;
            continue;
        }
        std::vector<BigInt> g;
        for (const auto& c : e.g.c) {
            BigInt r = c % le;
            g.push_back(r < 0 ? r + le : r);
        }
        const Jacobian& J = ctx.jacobian(s.field_degree ? s.field_degree : 1);
        for (const auto& P : s.gens) {
            ++v.points_tested;
            if (!J.is_zero(J.apply_poly(g, P))) {
                v.kind = Membership::NonMember;
                v.ell = l;
                v.witness = P;
                v.reason.clear();
                return v;
            }
        }
        if (!s.full) {
            inconclusive = true;
            if (v.reason.empty()) v.reason = s.reason;
        }
    }
    v.kind = inconclusive ? Membership::Inconclusive : Membership::Member;
    return v;
}

struct BpResult {
    bool ok = false;
    std::string reason;
    OrderSpec spec;
    std::vector<std::pair<RQIdeal, MembershipVerdict>> log;
};

// Among u + b t for small t, the representative whose numerator has the smallest
// denominator at the primes dividing N(b).
inline PiExpression best_numerator(const RQField& K, const WeilQuartic& w, const OrderSpec& s,
                                   const std::vector<std::int64_t>& primes) {
    auto local = [&](const PiExpression& e) {
        BigInt r = 1;
        for (std::int64_t l : primes) {
            BigInt n = e.n;
            while (n % l == 0) {
                n /= l;
                r *= l;
            }
        }
        return r;
    };
    std::optional<PiExpression> best;
    BigInt best_score = 0;
    for (std::int64_t t1 = 0; t1 <= 2; ++t1)
        for (std::int64_t t0 = -2; t0 <= 2; ++t0) {
            const RQInt u = K.add(s.u, K.mul(s.b_gen, RQInt{t0, t1}));
            const PiExpression e = to_pi_numerator(K, w, s.frob.ap, u, s.b_gen);
            const BigInt sc = local(e);
            if (!best || sc < best_score) {
                best = e;
                best_score = sc;
            }
        }
    return *best;
}

inline std::vector<std::int64_t> norm_primes(const RQIdeal& b) {
    std::vector<std::int64_t> out;
    for (auto [l, e] : factor_integer(static_cast<std::uint64_t>(b.norm()))) out.push_back(static_cast<std::int64_t>(l));
    return out;
}

// Membership of (pi - u)/b; primes prime to N(b) pass because O_E acts.
inline MembershipVerdict test_divisor(const RQField& K, const OrderSpec& s, CurveContext& ctx) {
    if (s.b.is_unit()) return MembershipVerdict{Membership::Member, "", 0, 0, 0, std::nullopt};
    const auto primes = norm_primes(s.b);
    return kills_torsion(best_numerator(K, ctx.weil(), s, primes), ctx, primes);
}

// Norm-maximal divisor of b_OL whose (pi - u)/b is an endomorphism.
inline BpResult determine_bp(const RQField& K, const FrobData& f, const ConductorResult& cond, CurveContext& ctx) {
    BpResult r;
    if (cond.b_OL.is_unit()) {
        r.ok = true;
        r.spec = make_order_spec(K, K.unit_ideal(), f);
        return r;
    }
    std::vector<RQIdeal> divs = order_divisors(K, cond);
    std::sort(divs.begin(), divs.end(), [](const RQIdeal& x, const RQIdeal& y) {
        if (x.norm() != y.norm()) return x.norm() > y.norm();
        return x < y;
    });
    std::optional<RQIdeal> found;
    for (const RQIdeal& b : divs) {
        if (b.is_unit()) {
            found = b;
            break;
        }
        const OrderSpec s = make_order_spec(K, b, f);
        const MembershipVerdict v = test_divisor(K, s, ctx);
        r.log.push_back({b, v});
        if (v.kind == Membership::Member) {
            found = b;
            break;
        }
        if (v.kind == Membership::Inconclusive) {
            r.reason = "Inconclusive(" + v.reason + ")";
            return r;
        }
    }
    r.spec = make_order_spec(K, *found, f);
    for (const RQIdeal& d : divs) {
        if (d.is_unit() || d == *found || !K.divides(d, *found)) continue;
        const MembershipVerdict v = test_divisor(K, make_order_spec(K, d, f), ctx);
        r.log.push_back({d, v});
        if (v.kind == Membership::NonMember) {
            r.reason = "MonotonicityViolated";
            return r;
        }
        if (v.kind == Membership::Inconclusive) {
            r.reason = "Inconclusive(" + v.reason + ")";
            return r;
        }
    }
    r.ok = true;
    return r;
}

}  // namespace frobint

#endif
