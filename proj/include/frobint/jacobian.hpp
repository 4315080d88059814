#ifndef FROBINT_JACOBIAN_HPP
#define FROBINT_JACOBIAN_HPP

#include "frobint/ffield.hpp"
#include "frobint/frobenius.hpp"

#include <algorithm>
#include <fstream>
#include <memory>
#include <numeric>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <unordered_set>
#include <vector>

namespace frobint {

struct CurveError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct BudgetExceeded : CurveError {
    using CurveError::CurveError;
};

// y^2 = F(x) with integer coefficients, lowest degree first, degree 5 or 6.
struct CurveModel {
    std::vector<std::int64_t> f;

    int degree() const { return static_cast<int>(f.size()) - 1; }

    static CurveModel from_coeffs(std::vector<std::int64_t> c) {
        while (!c.empty() && c.back() == 0) c.pop_back();
        if (c.size() != 6 && c.size() != 7) throw CurveError("curve model must have degree 5 or 6");
        return CurveModel{std::move(c)};
    }
    // "f0,f1,...,f6"
    static CurveModel parse(const std::string& text) {
        std::vector<std::int64_t> c;
        std::stringstream ss(text);
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            const auto b = tok.find_first_not_of(" \t"), e = tok.find_last_not_of(" \t\r\n");
            if (b == std::string::npos) throw CurveError("empty coefficient in '" + text + "'");
            std::size_t used = 0;
            const std::string t = tok.substr(b, e - b + 1);
            c.push_back(std::stoll(t, &used));
            if (used != t.size()) throw CurveError("bad coefficient '" + t + "'");
        }
        return from_coeffs(std::move(c));
    }
    std::string str() const {
        std::string s;
        for (std::size_t i = 0; i < f.size(); ++i) s += (i ? "," : "") + std::to_string(f[i]);
        return s;
    }
};

// A curve line "p; f0,...,f6" pins a prime; a model file holds a rational model
// on its first non-comment line.
struct CurveInput {
    std::optional<std::int64_t> p;
    CurveModel model;
};

inline CurveInput parse_curve_line(const std::string& line) {
    CurveInput in;
    const auto semi = line.find(';');
    if (semi == std::string::npos) {
        in.model = CurveModel::parse(line);
    } else {
        in.p = std::stoll(line.substr(0, semi));
        in.model = CurveModel::parse(line.substr(semi + 1));
    }
    return in;
}

inline CurveInput load_curve_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw CurveError("cannot open curve file " + path);
    std::string line;
    while (std::getline(is, line)) {
        const auto b = line.find_first_not_of(" \t\r");
        if (b == std::string::npos || line[b] == '#') continue;
        return parse_curve_line(line.substr(b));
    }
    throw CurveError("curve file " + path + " has no model line");
}

namespace detail {

inline FpPoly reduce_poly(const std::vector<std::int64_t>& f, std::int64_t p) {
    FpPoly r(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) r[i] = mod_pos(f[i], p);
    fp_trim(r);
    return r;
}

inline FpPoly fp_derivative(const FpPoly& f, std::int64_t p) {
    FpPoly d;
    for (std::size_t i = 1; i < f.size(); ++i) d.push_back(static_cast<std::int64_t>(i) % p * f[i] % p);
    fp_trim(d);
    return d;
}

}  // namespace detail

// Degree of F mod p (may drop from 6 to 5).
inline int model_degree(const CurveModel& c, std::int64_t p) {
    return static_cast<int>(detail::reduce_poly(c.f, p).size()) - 1;
}

inline bool good_reduction_check(const CurveModel& c, std::int64_t p) {
    if (p <= 2 || !is_prime(static_cast<std::uint64_t>(p))) return false;
    const detail::FpPoly f = detail::reduce_poly(c.f, p);
    const int d = static_cast<int>(f.size()) - 1;
    if (d != 5 && d != 6) return false;
    return detail::fp_gcd(f, detail::fp_derivative(f, p), p).size() == 1;
}

// Points on the smooth model over F_{p^k}, k in {1, 2}.
inline std::int64_t count_points(const CurveModel& c, std::int64_t p, int k) {
    if (k != 1 && k != 2) throw CurveError("count_points: k must be 1 or 2");
    if (p <= 2 || !is_prime(static_cast<std::uint64_t>(p))) throw CurveError("count_points: odd prime required");
    const std::int64_t size = k == 1 ? p : p * p;
    if (size > 4'000'000) throw BudgetExceeded("count_points: p^k exceeds the enumeration budget");
    const detail::FpPoly f = detail::reduce_poly(c.f, p);
    const int d = static_cast<int>(f.size()) - 1;
    if (d < 5) throw CurveError("count_points: degree below 5 mod p");
    std::vector<std::int8_t> chi(static_cast<std::size_t>(p), -1);
    chi[0] = 0;
    for (std::int64_t x = 1; x < p; ++x) chi[static_cast<std::size_t>(x * x % p)] = 1;
    std::int64_t n = 0;
    if (k == 1) {
        for (std::int64_t x = 0; x < p; ++x) {
            std::int64_t acc = 0;
            for (int i = d; i >= 0; --i) acc = (acc * x + f[i]) % p;
            n += 1 + chi[static_cast<std::size_t>(acc)];
        }
        if (d == 5)
            n += 1;
        else
            n += chi[static_cast<std::size_t>(f[6])] == 1 ? 2 : 0;
        return n;
    }
    // F_{p^2} = F_p[t]/(t^2 - nr); chi(z) = legendre(Norm z).
    std::int64_t nr = 2;
    while (chi[static_cast<std::size_t>(nr)] != -1) ++nr;
    for (std::int64_t x0 = 0; x0 < p; ++x0)
        for (std::int64_t x1 = 0; x1 < p; ++x1) {
            std::int64_t a0 = 0, a1 = 0;
            for (int i = d; i >= 0; --i) {
                const std::int64_t b0 = (a0 * x0 + a1 * x1 % p * nr + f[i]) % p;
                const std::int64_t b1 = (a0 * x1 + a1 * x0) % p;
                a0 = b0;
                a1 = b1;
            }
            const std::int64_t nm = mod_pos(a0 * a0 - a1 * a1 % p * nr, p);
            n += 1 + chi[static_cast<std::size_t>(nm)];
        }
    n += d == 5 ? 1 : 2;
    return n;
}

inline WeilQuartic curve_weil(const CurveModel& c, std::int64_t p) {
    return count_to_weil(count_points(c, p, 1), count_points(c, p, 2), p);
}

// Reduced divisor (u, v): u monic, deg u <= 2, deg v < deg u, u | v^2 - f.
struct MumfordDiv {
    FqPoly u, v;
};

// Jacobian of w^2 = f(z) with deg f = 5 over F_{p^k}. For a model transformed from
// degree 6, the p-power Frobenius of the original curve is the coefficient p-power
// followed by z -> z/(1 + c z), w -> w/(1 + c z)^3, plus a 2-torsion correction.
class Jacobian {
public:
    Jacobian(std::shared_ptr<const Fq> F, FqPoly f, std::optional<FqElem> twist = std::nullopt)
        : F_(std::move(F)), R_(*F_), f_(std::move(f)), twist_(twist) {
        R_.trim(f_);
        if (FqPolyRing::deg(f_) != 5) throw CurveError("Jacobian: model must have degree 5");
        if (twist_ && F_->is_zero(*twist_)) twist_.reset();
        if (twist_) {
            T_ = MumfordDiv{{F_->neg(F_->inv(*twist_)), F_->one()}, {}};
            if (!is_valid(*T_)) throw CurveError("Jacobian: twist point is not on the curve");
        }
    }

    const Fq& field() const { return *F_; }
    const FqPolyRing& ring() const { return R_; }
    const FqPoly& f() const { return f_; }
    int ext_degree() const { return F_->k(); }
    std::int64_t p() const { return F_->p(); }

    MumfordDiv zero() const { return {{F_->one()}, {}}; }
    bool is_zero(const MumfordDiv& D) const { return D.u.size() == 1; }
    bool eq(const MumfordDiv& a, const MumfordDiv& b) const { return R_.eq(a.u, b.u) && R_.eq(a.v, b.v); }
    std::size_t hash(const MumfordDiv& D) const {
        std::size_t h = D.u.size() * 31 + D.v.size();
        for (const auto& c : D.u) h = h * 1000003u ^ F_->hash(c);
        for (const auto& c : D.v) h = h * 998244353u ^ F_->hash(c);
        return h;
    }

    bool is_valid(const MumfordDiv& D) const {
        if (D.u.empty() || !F_->is_one(D.u.back()) || D.u.size() > 3) return false;
        if (D.v.size() >= D.u.size()) return false;
        return R_.mod(R_.sub(R_.mul(D.v, D.v), f_), D.u).empty();
    }

    MumfordDiv neg(const MumfordDiv& D) const { return {D.u, R_.neg(D.v)}; }

    MumfordDiv add(const MumfordDiv& a, const MumfordDiv& b) const {
        if (is_zero(a)) return b;
        if (is_zero(b)) return a;
        auto [d1, e1, e2] = R_.xgcd(a.u, b.u);
        auto [d, c1, c2] = R_.xgcd(d1, R_.add(a.v, b.v));
        const FqPoly s1 = R_.mul(c1, e1), s2 = R_.mul(c1, e2);
        FqPoly u = R_.div_exact(R_.mul(a.u, b.u), R_.mul(d, d));
        FqPoly num = R_.add(R_.add(R_.mul(R_.mul(s1, a.u), b.v), R_.mul(R_.mul(s2, b.u), a.v)),
                            R_.mul(c2, R_.add(R_.mul(a.v, b.v), f_)));
        FqPoly v = R_.mod(R_.div_exact(num, d), u);
        return reduce(std::move(u), std::move(v));
    }

    MumfordDiv sub(const MumfordDiv& a, const MumfordDiv& b) const { return add(a, neg(b)); }

    MumfordDiv mul(const MumfordDiv& D, const BigInt& m) const {
        if (m < 0) return mul(neg(D), -m);
        MumfordDiv r = zero();
        if (m == 0) return r;
        for (int i = static_cast<int>(boost::multiprecision::msb(m)); i >= 0; --i) {
            r = add(r, r);
            if (boost::multiprecision::bit_test(m, i)) r = add(r, D);
        }
        return r;
    }
    MumfordDiv mul(const MumfordDiv& D, std::int64_t m) const { return mul(D, BigInt(m)); }

    MumfordDiv frob(const MumfordDiv& D) const {
        MumfordDiv r{pframe(D.u), pframe(D.v)};
        if (!twist_) return r;
        const FqElem c = *twist_;
        const int d = FqPolyRing::deg(r.u);
        if (d <= 0) return r;
        const FqPoly lin{F_->one(), F_->neg(c)};  // 1 - cZ
        std::vector<FqPoly> lp{{F_->one()}};
        for (int i = 1; i <= 3; ++i) lp.push_back(R_.mul(lp.back(), lin));
        // u'(Z) ~ sum u_i Z^i (1 - cZ)^{d-i}
        FqPoly u;
        FqPoly zi{F_->one()};
        for (int i = 0; i <= d; ++i) {
            u = R_.add(u, R_.scale(R_.mul(zi, lp[d - i]), r.u[i]));
            zi.insert(zi.begin(), F_->zero());
        }
        u = R_.monic(u);
        const FqElem v0 = r.v.empty() ? F_->zero() : r.v[0];
        const FqElem v1 = r.v.size() > 1 ? r.v[1] : F_->zero();
        const FqPoly w = R_.add(R_.scale(lin, v0), R_.scale(FqPoly{F_->zero(), F_->one()}, v1));
        MumfordDiv out{u, R_.mod(R_.mul(w, lp[2]), u)};
        if (d % 2) out = add(out, *T_);
        return out;
    }

    MumfordDiv frob_pow(MumfordDiv D, int i) const {
        for (int j = 0; j < i; ++j) D = frob(D);
        return D;
    }

    // Evaluates sum g_i pi^i (D); coefficients taken as given.
    MumfordDiv apply_poly(const std::vector<BigInt>& g, const MumfordDiv& D) const {
        MumfordDiv acc = zero(), cur = D;
        for (std::size_t i = 0; i < g.size(); ++i) {
            if (g[i] != 0) acc = add(acc, mul(cur, g[i]));
            if (i + 1 < g.size()) cur = frob(cur);
        }
        return acc;
    }

    template <class Rng>
    MumfordDiv random(Rng& rng) const {
        const Fq& F = *F_;
        const FqElem two_inv = F.inv(F.from_int(2));
        std::bernoulli_distribution coin(0.5);
        for (;;) {
            const FqElem b = F.random(rng), c = F.random(rng);
            const FqElem disc = F.sub(F.mul(b, b), F.scale(c, 4));
            if (F.is_zero(disc)) continue;
            const FqPoly u{c, b, F.one()};
            auto sd = field_sqrt(F, disc, rng);
            if (sd) {
                const FqElem z1 = F.mul(F.sub(*sd, b), two_inv), z2 = F.mul(F.sub(F.neg(*sd), b), two_inv);
                auto y1 = field_sqrt(F, R_.eval(f_, z1), rng);
                if (!y1) continue;
                auto y2 = field_sqrt(F, R_.eval(f_, z2), rng);
                if (!y2) continue;
                if (coin(rng)) y1 = F.neg(*y1);
                if (coin(rng)) y2 = F.neg(*y2);
                return {u, interpolate(z1, *y1, z2, *y2)};
            }
            Fq2 E(F, b, c);
            Fq2::Elem fy = E.zero();
            for (auto it = f_.rbegin(); it != f_.rend(); ++it) fy = E.add(E.mul(fy, {F.zero(), F.one()}), {*it, F.zero()});
            auto s = field_sqrt(E, fy, rng);
            if (!s) continue;
            FqPoly v{s->c0, s->c1};
            if (coin(rng)) v = R_.neg(v);
            R_.trim(v);
            return {u, v};
        }
    }

    // Every element of J(F_q); intended for q up to a few hundred.
    std::vector<MumfordDiv> enumerate_all() const {
        const Fq& F = *F_;
        std::mt19937_64 rng(0x5eed);
        std::vector<FqElem> elems = all_elements();
        std::vector<MumfordDiv> out{zero()};
        for (const FqElem& x : elems) {
            auto y = field_sqrt(F, R_.eval(f_, x), rng);
            if (!y) continue;
            const FqPoly u{F.neg(x), F.one()};
            out.push_back({u, R_.constant(*y)});
            if (!F.is_zero(*y)) out.push_back({u, R_.constant(F.neg(*y))});
        }
        const FqElem two_inv = F.inv(F.from_int(2));
        const FqPoly df = derivative(f_);
        for (const FqElem& b : elems)
            for (const FqElem& c : elems) {
                const FqPoly u{c, b, F.one()};
                const FqElem disc = F.sub(F.mul(b, b), F.scale(c, 4));
                if (F.is_zero(disc)) {
                    // 2P with P = (x0, y0), y0 != 0
                    const FqElem x0 = F.neg(F.mul(b, two_inv));
                    auto y0 = field_sqrt(F, R_.eval(f_, x0), rng);
                    if (!y0 || F.is_zero(*y0)) continue;
                    for (const FqElem& y : {*y0, F.neg(*y0)}) {
                        const FqElem slope = F.div(R_.eval(df, x0), F.add(y, y));
                        FqPoly v{F.sub(y, F.mul(slope, x0)), slope};
                        R_.trim(v);
                        out.push_back({u, v});
                    }
                    continue;
                }
                auto sd = field_sqrt(F, disc, rng);
                if (sd) {
                    const FqElem z1 = F.mul(F.sub(*sd, b), two_inv), z2 = F.mul(F.sub(F.neg(*sd), b), two_inv);
                    auto y1 = field_sqrt(F, R_.eval(f_, z1), rng);
                    auto y2 = field_sqrt(F, R_.eval(f_, z2), rng);
                    if (!y1 || !y2) continue;
                    for (const FqElem& a1 : sign_pair(*y1))
                        for (const FqElem& a2 : sign_pair(*y2)) out.push_back({u, interpolate(z1, a1, z2, a2)});
                    continue;
                }
                Fq2 E(F, b, c);
                Fq2::Elem fy = E.zero();
                for (auto it = f_.rbegin(); it != f_.rend(); ++it)
                    fy = E.add(E.mul(fy, {F.zero(), F.one()}), {*it, F.zero()});
                auto s = field_sqrt(E, fy, rng);
                if (!s) continue;
                FqPoly v{s->c0, s->c1};
                R_.trim(v);
                out.push_back({u, v});
                if (!v.empty()) out.push_back({u, R_.neg(v)});
            }
        return out;
    }

    std::vector<FqElem> all_elements() const {
        const Fq& F = *F_;
        std::vector<FqElem> elems;
        std::vector<std::int64_t> digits(static_cast<std::size_t>(F.k()), 0);
        for (;;) {
            elems.push_back(F.from_coeffs(digits));
            std::size_t i = 0;
            while (i < digits.size() && ++digits[i] == F.p()) digits[i++] = 0;
            if (i == digits.size()) break;
        }
        return elems;
    }

private:
    MumfordDiv reduce(FqPoly u, FqPoly v) const {
        while (FqPolyRing::deg(u) > 2) {
            FqPoly u2 = R_.monic(R_.div_exact(R_.sub(f_, R_.mul(v, v)), u));
            v = R_.mod(R_.neg(v), u2);
            u = std::move(u2);
        }
        u = R_.monic(u);
        v = R_.mod(v, u);
        return {std::move(u), std::move(v)};
    }

    FqPoly pframe(const FqPoly& a) const {
        FqPoly r(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) r[i] = F_->frob(a[i]);
        return r;
    }

    FqPoly interpolate(const FqElem& z1, const FqElem& y1, const FqElem& z2, const FqElem& y2) const {
        const Fq& F = *F_;
        const FqElem s = F.div(F.sub(y2, y1), F.sub(z2, z1));
        FqPoly v{F.sub(y1, F.mul(s, z1)), s};
        R_.trim(v);
        return v;
    }

    FqPoly derivative(const FqPoly& a) const {
        FqPoly d;
        for (std::size_t i = 1; i < a.size(); ++i) d.push_back(F_->scale(a[i], static_cast<std::int64_t>(i)));
        R_.trim(d);
        return d;
    }

    std::vector<FqElem> sign_pair(const FqElem& y) const {
        if (F_->is_zero(y)) return {y};
        return {y, F_->neg(y)};
    }

    std::shared_ptr<const Fq> F_;
    FqPolyRing R_;
    FqPoly f_;
    std::optional<FqElem> twist_;
    std::optional<MumfordDiv> T_;
};

// Smallest j such that F mod p has a root in F_{p^j}.
inline int weierstrass_root_degree(const CurveModel& c, std::int64_t p) {
    const detail::FpPoly f = detail::reduce_poly(c.f, p);
    detail::FpPoly x{0, 1}, xp = detail::fp_mod(x, f, p);
    for (int j = 1; j <= 6; ++j) {
        xp = detail::fp_powmod(xp, static_cast<std::uint64_t>(p), f, p);
        detail::FpPoly h = xp;
        h.resize(std::max<std::size_t>(h.size(), 2), 0);
        h[1] = mod_pos(h[1] - 1, p);
        detail::fp_trim(h);
        if (detail::fp_gcd(f, h, p).size() > 1) return j;
    }
    throw CurveError("weierstrass_root_degree: no root found");
}

// Extension degree actually used for arithmetic over F_{p^k}.
inline int working_degree(const CurveModel& c, std::int64_t p, int k) {
    if (model_degree(c, p) == 5) return k;
    return std::lcm(k, weierstrass_root_degree(c, p));
}

// Jacobian over F_{p^{k'}} with k | k'; degree-6 models are moved to degree 5
// through a Weierstrass point.
inline Jacobian make_jacobian(const CurveModel& c, std::int64_t p, int k) {
    if (!good_reduction_check(c, p)) throw CurveError("make_jacobian: bad reduction");
    const int kk = working_degree(c, p, k);
    if (kk > kMaxExt) throw CurveError("make_jacobian: extension degree above cap");
    auto F = std::make_shared<const Fq>(p, kk);
    FqPolyRing R(*F);
    const detail::FpPoly fp = detail::reduce_poly(c.f, p);
    FqPoly f;
    for (std::int64_t x : fp) f.push_back(F->from_int(x));
    if (fp.size() == 6) return Jacobian(F, f);
    std::mt19937_64 rng(static_cast<std::uint64_t>(p) * 1315423911u + static_cast<std::uint64_t>(kk));
    std::vector<FqElem> rs = R.roots(f, rng);
    if (rs.empty()) throw CurveError("make_jacobian: no Weierstrass point in working field");
    std::sort(rs.begin(), rs.end(), [&](const FqElem& a, const FqElem& b) {
        for (int i = kk - 1; i >= 0; --i)
            if (a.c[i] != b.c[i]) return a.c[i] < b.c[i];
        return false;
    });
    const FqElem r = rs.front();
    // G(z) = z^6 F(r + 1/z) = sum f_i z^{6-i} (r z + 1)^i
    const FqPoly lin{F->one(), r};
    FqPoly G, pw{F->one()};
    for (int i = 0; i <= 6; ++i) {
        FqPoly term = R.scale(pw, f[i]);
        term.insert(term.begin(), static_cast<std::size_t>(6 - i), F->zero());
        G = R.add(G, term);
        pw = R.mul(pw, lin);
    }
    const FqElem twist = F->sub(F->frob(r), r);
    return Jacobian(F, G, twist);
}

// Subgroup closure by cosets; returns false when the size would pass cap.
class SubgroupBuilder {
public:
    SubgroupBuilder(const Jacobian& J, std::size_t cap) : J_(J), cap_(cap), set_(0, Hash{&J}, Eq{&J}) {
        elems_.push_back(J.zero());
        set_.insert(J.zero());
    }
    bool contains(const MumfordDiv& D) const { return set_.count(D) > 0; }
    std::size_t size() const { return elems_.size(); }
    const std::vector<MumfordDiv>& elements() const { return elems_; }

    bool add_generator(const MumfordDiv& g) {
        if (contains(g)) return true;
        const std::size_t h = elems_.size();
        MumfordDiv step = g;
        while (!contains(step)) {
            if (elems_.size() + h > cap_) return false;
            for (std::size_t i = 0; i < h; ++i) {
                MumfordDiv e = J_.add(elems_[i], step);
                set_.insert(e);
                elems_.push_back(std::move(e));
            }
            step = J_.add(step, g);
        }
        return true;
    }

private:
    struct Hash {
        const Jacobian* J;
        std::size_t operator()(const MumfordDiv& D) const { return J->hash(D); }
    };
    struct Eq {
        const Jacobian* J;
        bool operator()(const MumfordDiv& a, const MumfordDiv& b) const { return J->eq(a, b); }
    };
    const Jacobian& J_;
    std::size_t cap_;
    std::vector<MumfordDiv> elems_;
    std::unordered_set<MumfordDiv, Hash, Eq> set_;
};

}  // namespace frobint

#endif
