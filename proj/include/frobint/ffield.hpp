#ifndef FROBINT_FFIELD_HPP
#define FROBINT_FFIELD_HPP

#include "frobint/arith.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

namespace frobint {

constexpr int kMaxExt = 72;

// Element of F_{p^k}: coefficients of a polynomial of degree < k in the field generator.
struct FqElem {
    std::array<std::uint32_t, kMaxExt> c{};
};

namespace detail {

using FpPoly = std::vector<std::int64_t>;  // coefficients in [0, p), lowest first

inline void fp_trim(FpPoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

inline FpPoly fp_mulmod(const FpPoly& a, const FpPoly& b, const FpPoly& f, std::int64_t p) {
    if (a.empty() || b.empty()) return {};
    std::vector<std::int64_t> r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
    const int n = static_cast<int>(f.size()) - 1;
    const std::int64_t linv = inv_mod(f.back(), p);
    for (int i = static_cast<int>(r.size()) - 1; i >= n; --i) {
        std::int64_t t = r[i] * linv % p;
        if (!t) continue;
        for (int j = 0; j <= n; ++j) r[i - n + j] = mod_pos(r[i - n + j] - t * f[j], p);
    }
    if (static_cast<int>(r.size()) > n) r.resize(n);
    fp_trim(r);
    return r;
}

inline FpPoly fp_powmod(FpPoly base, std::uint64_t e, const FpPoly& f, std::int64_t p) {
    FpPoly r{1};
    while (e) {
        if (e & 1) r = fp_mulmod(r, base, f, p);
        base = fp_mulmod(base, base, f, p);
        e >>= 1;
    }
    return r;
}

inline FpPoly fp_mod(FpPoly a, const FpPoly& f, std::int64_t p) {
    return fp_mulmod(a, FpPoly{1}, f, p);
}

inline FpPoly fp_gcd(FpPoly a, FpPoly b, std::int64_t p) {
    fp_trim(a);
    fp_trim(b);
    while (!b.empty()) {
        const int n = static_cast<int>(b.size()) - 1;
        const std::int64_t linv = inv_mod(b.back(), p);
        for (int i = static_cast<int>(a.size()) - 1; i >= n; --i) {
            std::int64_t t = a[i] * linv % p;
            if (!t) continue;
            for (int j = 0; j <= n; ++j) a[i - n + j] = mod_pos(a[i - n + j] - t * b[j], p);
        }
        fp_trim(a);
        std::swap(a, b);
    }
    return a;
}

// Rabin's test for a monic f of degree k.
inline bool fp_is_irreducible(const FpPoly& f, std::int64_t p) {
    const int k = static_cast<int>(f.size()) - 1;
    if (k == 1) return true;
    FpPoly x{0, 1};
    std::vector<FpPoly> frob_pows(k + 1);  // x^{p^i} mod f
    frob_pows[0] = fp_mod(x, f, p);
    for (int i = 1; i <= k; ++i) frob_pows[i] = fp_powmod(frob_pows[i - 1], static_cast<std::uint64_t>(p), f, p);
    if (frob_pows[k] != fp_mod(x, f, p)) return false;
    for (auto [r, e] : factor_integer(static_cast<std::uint64_t>(k))) {
        FpPoly h = frob_pows[k / static_cast<int>(r)];
        h.resize(std::max<std::size_t>(h.size(), 2), 0);
        h[1] = mod_pos(h[1] - 1, p);
        fp_trim(h);
        if (fp_gcd(f, h, p).size() != 1) return false;
    }
    return true;
}

}  // namespace detail

// Lexicographically least monic irreducible of degree k over F_p, with the
// coefficient of x^{k-1} most significant.
inline std::vector<std::int64_t> find_irreducible(std::int64_t p, int k) {
    if (k < 1 || k > kMaxExt) throw ArithError("find_irreducible: degree out of range");
    std::vector<std::int64_t> f(k + 1, 0);
    f[k] = 1;
    for (;;) {
        if (detail::fp_is_irreducible(f, p)) return f;
        int i = 0;
        while (i < k && ++f[i] == p) f[i++] = 0;
        if (i == k) throw ArithError("find_irreducible: exhausted");
    }
}

class Fq {
public:
    using Elem = FqElem;

    Fq(std::int64_t p, int k) : p_(p), k_(k) {
        if (p < 2 || p >= 65536 || !is_prime(static_cast<std::uint64_t>(p)))
            throw ArithError("Fq: characteristic must be a prime below 2^16");
        modulus_ = find_irreducible(p, k);
        for (int j = 0; j < k; ++j)
            if (modulus_[j]) tail_.push_back({j, static_cast<std::uint64_t>(p - modulus_[j])});
        q_ = boost::multiprecision::pow(BigInt(p), static_cast<unsigned>(k));
        // Frobenius is F_p-linear: precompute the images of x^i.
        Elem xp = pow(gen(), static_cast<std::uint64_t>(p));
        frob_rows_.resize(k);
        frob_rows_[0] = one();
        for (int i = 1; i < k; ++i) frob_rows_[i] = mul(frob_rows_[i - 1], xp);
    }

    std::int64_t p() const { return p_; }
    int k() const { return k_; }
    const BigInt& order() const { return q_; }
    const std::vector<std::int64_t>& modulus() const { return modulus_; }

    Elem zero() const { return Elem{}; }
    Elem one() const {
        Elem r{};
        r.c[0] = 1;
        return r;
    }
    Elem gen() const {
        if (k_ == 1) return from_int(mod_pos(-modulus_[0], p_));
        Elem r{};
        r.c[1] = 1;
        return r;
    }
    Elem from_int(std::int64_t v) const {
        Elem r{};
        r.c[0] = static_cast<std::uint32_t>(mod_pos(v, p_));
        return r;
    }
    Elem from_coeffs(const std::vector<std::int64_t>& v) const {
        Elem r{};
        for (std::size_t i = 0; i < v.size() && i < static_cast<std::size_t>(k_); ++i)
            r.c[i] = static_cast<std::uint32_t>(mod_pos(v[i], p_));
        return r;
    }

    bool is_zero(const Elem& a) const {
        for (int i = 0; i < k_; ++i)
            if (a.c[i]) return false;
        return true;
    }
    bool is_one(const Elem& a) const {
        if (a.c[0] != 1) return false;
        for (int i = 1; i < k_; ++i)
            if (a.c[i]) return false;
        return true;
    }
    bool eq(const Elem& a, const Elem& b) const {
        for (int i = 0; i < k_; ++i)
            if (a.c[i] != b.c[i]) return false;
        return true;
    }
    // True iff a lies in the prime field.
    bool in_prime_field(const Elem& a) const {
        for (int i = 1; i < k_; ++i)
            if (a.c[i]) return false;
        return true;
    }

    Elem add(const Elem& a, const Elem& b) const {
        Elem r;
        const auto p = static_cast<std::uint32_t>(p_);
        for (int i = 0; i < k_; ++i) {
            std::uint32_t s = a.c[i] + b.c[i];
            r.c[i] = s >= p ? s - p : s;
        }
        return r;
    }
    Elem sub(const Elem& a, const Elem& b) const {
        Elem r;
        const auto p = static_cast<std::uint32_t>(p_);
        for (int i = 0; i < k_; ++i) r.c[i] = a.c[i] >= b.c[i] ? a.c[i] - b.c[i] : a.c[i] + p - b.c[i];
        return r;
    }
    Elem neg(const Elem& a) const { return sub(zero(), a); }
    Elem scale(const Elem& a, std::int64_t s) const {
        const auto sm = static_cast<std::uint64_t>(mod_pos(s, p_));
        Elem r;
        for (int i = 0; i < k_; ++i) r.c[i] = static_cast<std::uint32_t>(a.c[i] * sm % static_cast<std::uint64_t>(p_));
        return r;
    }

    Elem mul(const Elem& a, const Elem& b) const {
        const auto p = static_cast<std::uint64_t>(p_);
        if (k_ == 1) {
            Elem r;
            r.c[0] = static_cast<std::uint32_t>(static_cast<std::uint64_t>(a.c[0]) * b.c[0] % p);
            return r;
        }
        std::array<std::uint64_t, 2 * kMaxExt> acc{};
        for (int i = 0; i < k_; ++i) {
            const std::uint64_t ai = a.c[i];
            if (!ai) continue;
            for (int j = 0; j < k_; ++j) acc[i + j] += ai * b.c[j];
        }
        return reduce(acc);
    }
    Elem sqr(const Elem& a) const { return mul(a, a); }

    Elem inv(const Elem& a) const {
        if (is_zero(a)) throw ArithError("Fq: inverse of zero");
        if (k_ == 1) return from_int(inv_mod(a.c[0], p_));
        // Extended Euclid in F_p[x] against the modulus.
        detail::FpPoly r0 = modulus_, r1(a.c.begin(), a.c.begin() + k_);
        detail::fp_trim(r1);
        detail::FpPoly s0{}, s1{1};
        while (r1.size() > 1) {
            const int n = static_cast<int>(r1.size()) - 1;
            const std::int64_t linv = inv_mod(r1.back(), p_);
            detail::FpPoly q(r0.size() >= r1.size() ? r0.size() - r1.size() + 1 : 0, 0);
            for (int i = static_cast<int>(r0.size()) - 1; i >= n; --i) {
                std::int64_t t = r0[i] * linv % p_;
                q[i - n] = t;
                if (!t) continue;
                for (int j = 0; j <= n; ++j) r0[i - n + j] = mod_pos(r0[i - n + j] - t * r1[j], p_);
            }
            detail::fp_trim(r0);
            detail::FpPoly s2(std::max(s0.size(), q.size() + s1.size()), 0);
            for (std::size_t i = 0; i < s0.size(); ++i) s2[i] = s0[i];
            for (std::size_t i = 0; i < q.size(); ++i)
                for (std::size_t j = 0; j < s1.size(); ++j) s2[i + j] = mod_pos(s2[i + j] - q[i] * s1[j], p_);
            detail::fp_trim(s2);
            s0 = std::move(s1);
            s1 = std::move(s2);
            std::swap(r0, r1);
        }
        const std::int64_t c = inv_mod(r1[0], p_);
        Elem r{};
        for (std::size_t i = 0; i < s1.size(); ++i) r.c[i] = static_cast<std::uint32_t>(s1[i] * c % p_);
        return r;
    }
    Elem div(const Elem& a, const Elem& b) const { return mul(a, inv(b)); }

    Elem pow(Elem base, std::uint64_t e) const {
        Elem r = one();
        while (e) {
            if (e & 1) r = mul(r, base);
            base = sqr(base);
            e >>= 1;
        }
        return r;
    }
    Elem pow(const Elem& base, const BigInt& e) const {
        Elem r = one();
        if (e == 0) return r;
        for (int i = static_cast<int>(boost::multiprecision::msb(e)); i >= 0; --i) {
            r = sqr(r);
            if (boost::multiprecision::bit_test(e, i)) r = mul(r, base);
        }
        return r;
    }

    // a -> a^p
    Elem frob(const Elem& a) const {
        if (k_ == 1) return a;
        const auto p = static_cast<std::uint64_t>(p_);
        std::array<std::uint64_t, kMaxExt> acc{};
        for (int i = 0; i < k_; ++i) {
            const std::uint64_t ai = a.c[i];
            if (!ai) continue;
            const auto& row = frob_rows_[i].c;
            for (int j = 0; j < k_; ++j) acc[j] += ai * row[j];
        }
        Elem r;
        for (int j = 0; j < k_; ++j) r.c[j] = static_cast<std::uint32_t>(acc[j] % p);
        return r;
    }

    bool is_square(const Elem& a) const {
        if (is_zero(a)) return true;
        return is_one(pow(a, (q_ - 1) / 2));
    }

    template <class Rng>
    Elem random(Rng& rng) const {
        std::uniform_int_distribution<std::uint32_t> d(0, static_cast<std::uint32_t>(p_ - 1));
        Elem r{};
        for (int i = 0; i < k_; ++i) r.c[i] = d(rng);
        return r;
    }

    std::size_t hash(const Elem& a) const {
        std::uint64_t h = 1469598103934665603ull;
        for (int i = 0; i < k_; ++i) h = (h ^ a.c[i]) * 1099511628211ull;
        return static_cast<std::size_t>(h);
    }

private:
    Elem reduce(std::array<std::uint64_t, 2 * kMaxExt>& acc) const {
        const auto p = static_cast<std::uint64_t>(p_);
        for (int i = 2 * k_ - 2; i >= k_; --i) {
            const std::uint64_t t = acc[i] % p;
            if (!t) continue;
            for (const auto& [j, mj] : tail_) acc[i - k_ + j] += t * mj;
        }
        Elem r;
        for (int i = 0; i < k_; ++i) r.c[i] = static_cast<std::uint32_t>(acc[i] % p);
        return r;
    }

    std::int64_t p_;
    int k_;
    std::vector<std::int64_t> modulus_;
    std::vector<std::pair<int, std::uint64_t>> tail_;  // (j, p - m_j) for nonzero m_j, j < k
    BigInt q_;
    std::vector<Elem> frob_rows_;
};

// Polynomials over F_q, lowest degree first, always trimmed.
using FqPoly = std::vector<FqElem>;

class FqPolyRing {
public:
    explicit FqPolyRing(const Fq& F) : F(F) {}
    const Fq& F;

    void trim(FqPoly& a) const {
        while (!a.empty() && F.is_zero(a.back())) a.pop_back();
    }
    static int deg(const FqPoly& a) { return static_cast<int>(a.size()) - 1; }
    FqPoly constant(const FqElem& c) const {
        if (F.is_zero(c)) return {};
        return {c};
    }
    bool eq(const FqPoly& a, const FqPoly& b) const {
        if (a.size() != b.size()) return false;
        for (std::size_t i = 0; i < a.size(); ++i)
            if (!F.eq(a[i], b[i])) return false;
        return true;
    }
    FqPoly add(const FqPoly& a, const FqPoly& b) const {
        FqPoly r(std::max(a.size(), b.size()), F.zero());
        for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
        for (std::size_t i = 0; i < b.size(); ++i) r[i] = F.add(r[i], b[i]);
        trim(r);
        return r;
    }
    FqPoly sub(const FqPoly& a, const FqPoly& b) const {
        FqPoly r(std::max(a.size(), b.size()), F.zero());
        for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
        for (std::size_t i = 0; i < b.size(); ++i) r[i] = F.sub(r[i], b[i]);
        trim(r);
        return r;
    }
    FqPoly neg(const FqPoly& a) const {
        FqPoly r(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) r[i] = F.neg(a[i]);
        return r;
    }
    FqPoly scale(const FqPoly& a, const FqElem& s) const {
        if (F.is_zero(s)) return {};
        FqPoly r(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) r[i] = F.mul(a[i], s);
        return r;
    }
    FqPoly mul(const FqPoly& a, const FqPoly& b) const {
        if (a.empty() || b.empty()) return {};
        FqPoly r(a.size() + b.size() - 1, F.zero());
        for (std::size_t i = 0; i < a.size(); ++i)
            for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = F.add(r[i + j], F.mul(a[i], b[j]));
        trim(r);
        return r;
    }
    // Returns (quotient, remainder).
    std::pair<FqPoly, FqPoly> divmod(const FqPoly& a, const FqPoly& b) const {
        if (b.empty()) throw ArithError("FqPoly: division by zero");
        const int db = deg(b);
        if (deg(a) < db) return {{}, a};
        FqPoly r = a, q(a.size() - b.size() + 1, F.zero());
        const FqElem linv = F.inv(b.back());
        for (int i = deg(a); i >= db; --i) {
            if (F.is_zero(r[i])) continue;
            FqElem t = F.mul(r[i], linv);
            q[i - db] = t;
            for (int j = 0; j <= db; ++j) r[i - db + j] = F.sub(r[i - db + j], F.mul(t, b[j]));
        }
        r.resize(db);
        trim(r);
        trim(q);
        return {q, r};
    }
    FqPoly mod(const FqPoly& a, const FqPoly& b) const { return divmod(a, b).second; }
    FqPoly div_exact(const FqPoly& a, const FqPoly& b) const {
        auto [q, r] = divmod(a, b);
        if (!r.empty()) throw ArithError("FqPoly: inexact division");
        return q;
    }
    FqPoly monic(const FqPoly& a) const {
        if (a.empty()) return a;
        return scale(a, F.inv(a.back()));
    }
    // Returns (g, s, t) with s*a + t*b = g, g monic (or zero).
    std::tuple<FqPoly, FqPoly, FqPoly> xgcd(const FqPoly& a, const FqPoly& b) const {
        FqPoly r0 = a, r1 = b, s0 = {F.one()}, s1 = {}, t0 = {}, t1 = {F.one()};
        while (!r1.empty()) {
            auto [q, r] = divmod(r0, r1);
            r0 = std::move(r1);
            r1 = std::move(r);
            FqPoly s2 = sub(s0, mul(q, s1)), t2 = sub(t0, mul(q, t1));
            s0 = std::move(s1);
            s1 = std::move(s2);
            t0 = std::move(t1);
            t1 = std::move(t2);
        }
        if (r0.empty()) return {r0, s0, t0};
        FqElem li = F.inv(r0.back());
        return {scale(r0, li), scale(s0, li), scale(t0, li)};
    }
    FqPoly gcd(const FqPoly& a, const FqPoly& b) const { return std::get<0>(xgcd(a, b)); }

    FqElem eval(const FqPoly& a, const FqElem& x) const {
        FqElem acc = F.zero();
        for (auto it = a.rbegin(); it != a.rend(); ++it) acc = F.add(F.mul(acc, x), *it);
        return acc;
    }
    FqPoly mulmod(const FqPoly& a, const FqPoly& b, const FqPoly& m) const { return mod(mul(a, b), m); }
    FqPoly powmod(FqPoly base, const BigInt& e, const FqPoly& m) const {
        FqPoly r = mod({F.one()}, m);
        base = mod(base, m);
        if (e == 0) return r;
        for (int i = static_cast<int>(boost::multiprecision::msb(e)); i >= 0; --i) {
            r = mulmod(r, r, m);
            if (boost::multiprecision::bit_test(e, i)) r = mulmod(r, base, m);
        }
        return r;
    }

    // All roots in F_q of a nonzero polynomial (equal-degree splitting).
    template <class Rng>
    std::vector<FqElem> roots(const FqPoly& f, Rng& rng) const {
        FqPoly x = {F.zero(), F.one()};
        FqPoly xq = powmod(x, F.order(), f);
        FqPoly g = gcd(f, sub(xq, x));
        std::vector<FqElem> out;
        split_linear(g, rng, out);
        return out;
    }

private:
    template <class Rng>
    void split_linear(const FqPoly& g, Rng& rng, std::vector<FqElem>& out) const {
        if (deg(g) <= 0) return;
        if (deg(g) == 1) {
            out.push_back(F.neg(F.div(g[0], g[1])));
            return;
        }
        const BigInt e = (F.order() - 1) / 2;
        for (;;) {
            FqPoly h = {F.random(rng), F.one()};
            FqPoly w = sub(powmod(h, e, g), {F.one()});
            FqPoly d = gcd(g, w);
            if (deg(d) > 0 && deg(d) < deg(g)) {
                split_linear(d, rng, out);
                split_linear(div_exact(g, d), rng, out);
                return;
            }
        }
    }
};

// F_q[y]/(y^2 + alpha*y + beta) for an irreducible quadratic; elements are pairs (c0, c1).
class Fq2 {
public:
    struct Elem {
        FqElem c0, c1;
    };
    Fq2(const Fq& F, const FqElem& alpha, const FqElem& beta) : F(F), alpha_(alpha), beta_(beta) {
        order_ = F.order() * F.order();
    }
    const Fq& F;

    const BigInt& order() const { return order_; }
    Elem zero() const { return {F.zero(), F.zero()}; }
    Elem one() const { return {F.one(), F.zero()}; }
    bool is_zero(const Elem& a) const { return F.is_zero(a.c0) && F.is_zero(a.c1); }
    bool eq(const Elem& a, const Elem& b) const { return F.eq(a.c0, b.c0) && F.eq(a.c1, b.c1); }
    Elem add(const Elem& a, const Elem& b) const { return {F.add(a.c0, b.c0), F.add(a.c1, b.c1)}; }
    Elem sub(const Elem& a, const Elem& b) const { return {F.sub(a.c0, b.c0), F.sub(a.c1, b.c1)}; }
    Elem mul(const Elem& a, const Elem& b) const {
        // y^2 = -alpha*y - beta
        FqElem t00 = F.mul(a.c0, b.c0), t11 = F.mul(a.c1, b.c1);
        FqElem mid = F.add(F.mul(a.c0, b.c1), F.mul(a.c1, b.c0));
        return {F.sub(t00, F.mul(beta_, t11)), F.sub(mid, F.mul(alpha_, t11))};
    }
    Elem conj(const Elem& a) const {
        // y -> -alpha - y
        return {F.sub(a.c0, F.mul(alpha_, a.c1)), F.neg(a.c1)};
    }
    FqElem norm(const Elem& a) const { return mul(a, conj(a)).c0; }
    Elem inv(const Elem& a) const {
        FqElem ni = F.inv(norm(a));
        Elem c = conj(a);
        return {F.mul(c.c0, ni), F.mul(c.c1, ni)};
    }
    Elem pow(const Elem& base, const BigInt& e) const {
        Elem r = one();
        if (e == 0) return r;
        for (int i = static_cast<int>(boost::multiprecision::msb(e)); i >= 0; --i) {
            r = mul(r, r);
            if (boost::multiprecision::bit_test(e, i)) r = mul(r, base);
        }
        return r;
    }
    template <class Rng>
    Elem random(Rng& rng) const {
        return {F.random(rng), F.random(rng)};
    }

private:
    FqElem alpha_, beta_;
    BigInt order_;
};

// Square root in a finite field K of odd order by splitting y^2 - a.
// K needs zero/one/add/sub/mul/inv/eq/is_zero/pow/random/order.
template <class K, class Rng>
std::optional<typename K::Elem> field_sqrt(const K& F, const typename K::Elem& a, Rng& rng) {
    using E = typename K::Elem;
    if (F.is_zero(a)) return a;
    const BigInt e = (F.order() - 1) / 2;
    if (!F.eq(F.pow(a, e), F.one())) return std::nullopt;
    // Work in K[y]/(y^2 - a): (x0 + x1 y)(z0 + z1 y) = x0 z0 + a x1 z1 + (x0 z1 + x1 z0) y.
    auto mul2 = [&](const std::pair<E, E>& x, const std::pair<E, E>& z) {
        return std::make_pair(F.add(F.mul(x.first, z.first), F.mul(a, F.mul(x.second, z.second))),
                              F.add(F.mul(x.first, z.second), F.mul(x.second, z.first)));
    };
    for (;;) {
        std::pair<E, E> base{F.random(rng), F.one()}, r{F.one(), F.zero()};
        for (int i = static_cast<int>(boost::multiprecision::msb(e)); i >= 0; --i) {
            r = mul2(r, r);
            if (boost::multiprecision::bit_test(e, i)) r = mul2(r, base);
        }
        if (F.is_zero(r.first) && !F.is_zero(r.second)) {
            E s = F.inv(r.second);
            if (F.eq(F.mul(s, s), a)) return s;
        }
    }
}

}  // namespace frobint

#endif
