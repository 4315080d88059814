#ifndef FROBINT_FROBENIUS_HPP
#define FROBINT_FROBENIUS_HPP

#include "frobint/arith.hpp"
#include "frobint/rq_field.hpp"

#include <array>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

namespace frobint {

struct FrobError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// h4(x) = x^4 - s1 x^3 + s2 x^2 - q s1 x + q^2
struct WeilQuartic {
    std::int64_t s1 = 0, s2 = 0, q = 0;

    ZPoly h4() const {
        const BigInt Q = q;
        return ZPoly({Q * Q, -Q * s1, BigInt(s2), BigInt(-s1), BigInt(1)});
    }
    BigInt eval(const BigInt& x) const { return h4().eval(x); }
    friend bool operator==(const WeilQuartic&, const WeilQuartic&) = default;
};

struct FrobData {
    std::int64_t q = 0, p = 0;
    RQInt ap, sp, disc;
};

enum class BailReason { None, NotOrdinary, NotAbsSimple, RationalTrace, Scalar, NotRM, BadReduction, Inconclusive };

inline const char* bail_name(BailReason r) {
    switch (r) {
        case BailReason::None: return "";
        case BailReason::NotOrdinary: return "NOT_ORDINARY";
        case BailReason::NotAbsSimple: return "NOT_ABS_SIMPLE";
        case BailReason::RationalTrace: return "NOT_FP_SIMPLE";
        case BailReason::Scalar: return "SCALAR";
        case BailReason::NotRM: return "NOT_RM";
        case BailReason::BadReduction: return "BAD_REDUCTION";
        case BailReason::Inconclusive: return "INCONCLUSIVE";
    }
    return "";
}

struct FrobClass {
    bool is_scalar = false, is_real = false, is_ordinary = false, is_fp_simple = false, is_abs_simple = false;
    BailReason bail = BailReason::None;
};

inline FrobData make_hp(const RQField& K, RQInt ap, RQInt sp, std::int64_t q, std::int64_t p) {
    FrobData d{q, p, ap, sp, {}};
    d.disc = K.sub(K.mul(ap, ap), K.scale(sp, 4));
    return d;
}
// The pipeline case s_p = q = p.
inline FrobData make_hp(const RQField& K, RQInt ap, std::int64_t p) { return make_hp(K, ap, RQInt{p, 0}, p, p); }

// Weil quartic of the surface whose h_p is x^2 - a_p x + q.
inline WeilQuartic weil_from_ap(const RQField& K, RQInt ap, std::int64_t q) {
    return {K.trace(ap), add_ck(K.norm(ap), mul_ck(2, q)), q};
}

struct ApPair {
    RQInt first, second;  // conjugates; equal when a_p is rational
    bool rational = false;
};

// Roots of y^2 - s1 y + (s2 - 2q) in O_E.
inline ApPair recover_ap(const RQField& K, const WeilQuartic& w) {
    const std::int64_t N = sub_ck(w.s2, mul_ck(2, w.q));
    const std::int64_t delta = sub_ck(mul_ck(w.s1, w.s1), mul_ck(4, N));
    if (delta == 0) {
        if (w.s1 % 2) throw FrobError("NotRM");
        RQInt r{w.s1 / 2, 0};
        return {r, r, true};
    }
    if (delta < 0 || delta % K.disc()) throw FrobError("NotRM");
    const std::int64_t m2 = delta / K.disc();
    if (!is_square(m2)) {
        if (is_square(delta)) throw FrobError("NotRM: rational distinct roots");
        throw FrobError("NotRM");
    }
    const std::int64_t m = isqrt(m2);
    // Tr(c0 + c1 a) = 2 c0 - t c1 = s1
    const std::int64_t num = add_ck(w.s1, mul_ck(K.t(), m));
    if (num % 2) throw FrobError("NotRM");
    RQInt x{num / 2, m};
    RQInt y = K.conj(x);
    if (K.norm(x) != N) throw FrobError("NotRM");
    return {x, y, false};
}

// x in O_E is a square in O_E.
inline bool is_square_in(const RQField& K, RQInt x) {
    if (x.is_zero()) return true;
    const auto e = K.embed(x);
    if (e[0] < 0 || e[1] < 0) return false;
    const long double r1 = (-K.t() + std::sqrt(static_cast<long double>(K.disc()))) / 2;
    const long double r2 = (-K.t() - std::sqrt(static_cast<long double>(K.disc()))) / 2;
    for (int s1 : {1, -1})
        for (int s2 : {1, -1}) {
            const long double y1 = s1 * std::sqrt(e[0]), y2 = s2 * std::sqrt(e[1]);
            const long double c1 = (y1 - y2) / (r1 - r2);
            const long double c0 = y1 - c1 * r1;
            for (std::int64_t d0 = -1; d0 <= 1; ++d0)
                for (std::int64_t d1 = -1; d1 <= 1; ++d1) {
                    RQInt y{std::llround(c0) + d0, std::llround(c1) + d1};
                    if (K.mul(y, y) == x) return true;
                }
        }
    return false;
}

// Monic integer quartic irreducible over Q (Gauss: test integer factors only).
inline bool is_irreducible_quartic(const ZPoly& f) {
    if (f.deg() != 4 || f.lead() != 1) throw FrobError("is_irreducible_quartic: expects a monic quartic");
    const BigInt b0 = f.coef(0), b1 = f.coef(1), b2 = f.coef(2), b3 = f.coef(3);
    if (b0 == 0) return false;
    const BigInt ab0 = b0 < 0 ? BigInt(-b0) : b0;
    if (ab0 > BigInt(std::int64_t{1} << 50)) throw FrobError("is_irreducible_quartic: constant term too large");
    std::vector<std::int64_t> divs;
    for (std::int64_t d = 1; BigInt(d) * d <= ab0; ++d)
        if (ab0 % d == 0) {
            divs.push_back(d);
            divs.push_back(static_cast<std::int64_t>(ab0 / d));
        }
    for (std::int64_t d : divs)
        for (std::int64_t s : {d, -d})
            if (f.eval(BigInt(s)) == 0) return false;
    for (std::int64_t d : divs)
        for (std::int64_t v : {d, -d}) {
            const BigInt z = b0 / v;
            // u + w = b3, u w = b2 - v - z, u z + v w = b1
            const BigInt P = b2 - v - z;
            const BigInt disc = b3 * b3 - 4 * P;
            if (disc < 0) continue;
            const BigInt r = boost::multiprecision::sqrt(disc);
            if (r * r != disc || (b3 + r) % 2 != 0) continue;
            for (const BigInt& u : {(b3 + r) / 2, (b3 - r) / 2}) {
                const BigInt w = b3 - u;
                if (u * z + v * w == b1) return false;
            }
        }
    return true;
}

using Mat4 = std::array<std::array<BigInt, 4>, 4>;

inline Mat4 mat_mul(const Mat4& a, const Mat4& b) {
    Mat4 r{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            BigInt s = 0;
            for (int k = 0; k < 4; ++k) s += a[i][k] * b[k][j];
            r[i][j] = s;
        }
    return r;
}

inline Mat4 companion(const WeilQuartic& w) {
    const ZPoly h = w.h4();
    Mat4 c{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) c[i][j] = 0;
    for (int i = 1; i < 4; ++i) c[i][i - 1] = 1;
    for (int i = 0; i < 4; ++i) c[i][3] = -h.coef(i);
    return c;
}

inline Mat4 mat_pow(Mat4 m, std::uint64_t e) {
    Mat4 r{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) r[i][j] = (i == j) ? 1 : 0;
    while (e) {
        if (e & 1) r = mat_mul(r, m);
        m = mat_mul(m, m);
        e >>= 1;
    }
    return r;
}

// Characteristic polynomial of a 4x4 integer matrix (Faddeev-LeVerrier, exact over Z).
inline ZPoly charpoly(const Mat4& a) {
    std::array<BigInt, 5> c;
    c[4] = 1;
    Mat4 m{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) m[i][j] = 0;
    for (int k = 1; k <= 4; ++k) {
        // M_k = A M_{k-1} + c_{n-k+1} I
        Mat4 am = mat_mul(a, m);
        for (int i = 0; i < 4; ++i) am[i][i] += c[4 - k + 1];
        m = am;
        Mat4 amk = mat_mul(a, m);
        BigInt tr = 0;
        for (int i = 0; i < 4; ++i) tr += amk[i][i];
        c[4 - k] = -tr / k;
    }
    return ZPoly({c[0], c[1], c[2], c[3], c[4]});
}

// Characteristic polynomial of pi^N.
inline ZPoly charpoly_power(const WeilQuartic& w, std::uint64_t N) { return charpoly(mat_pow(companion(w), N)); }

inline bool abs_simple_check(const WeilQuartic& w) {
    if (!is_irreducible_quartic(w.h4())) throw std::invalid_argument("abs_simple_check: h4 is reducible over Q");
    for (std::uint64_t N : {2, 3, 4, 5, 6, 10, 12})
        if (!is_squarefree(charpoly_power(w, N))) return false;
    return true;
}

inline FrobClass classify(const RQField& K, const FrobData& d) {
    FrobClass c;
    c.is_scalar = d.disc.is_zero();
    c.is_ordinary = (K.norm(d.ap) % d.p) != 0;
    c.is_real = d.ap.is_zero() && d.sp == RQInt{-d.q, 0};
    c.is_fp_simple = d.ap.c1 != 0 && !c.is_real;
    if (c.is_fp_simple && d.sp == RQInt{d.q, 0}) {
        const WeilQuartic w = weil_from_ap(K, d.ap, d.q);
        c.is_abs_simple = is_irreducible_quartic(w.h4()) && abs_simple_check(w);
    }
    if (c.is_scalar)
        c.bail = BailReason::Scalar;
    else if (!c.is_fp_simple)
        c.bail = BailReason::RationalTrace;
    else if (!c.is_ordinary)
        c.bail = BailReason::NotOrdinary;
    else if (!c.is_abs_simple)
        c.bail = BailReason::NotAbsSimple;
    return c;
}

// Floating-point sanity check that all roots of h4 have absolute value sqrt(q).
inline bool weil_roots_ok(const WeilQuartic& w, double tol = 1e-6) {
    const long double delta =
        static_cast<long double>(w.s1) * w.s1 - 4.0L * (static_cast<long double>(w.s2) - 2.0L * w.q);
    if (delta < -tol) return false;
    const long double sd = std::sqrt(std::max<long double>(delta, 0));
    const long double bound = 2 * std::sqrt(static_cast<long double>(w.q)) + tol;
    return std::fabs((w.s1 + sd) / 2) <= bound && std::fabs((w.s1 - sd) / 2) <= bound;
}

inline WeilQuartic count_to_weil(std::int64_t N1, std::int64_t N2, std::int64_t q) {
    const std::int64_t s1 = q + 1 - N1;
    const std::int64_t num = N2 - q * q - 1 + s1 * s1;
    if (num % 2) throw FrobError("count_to_weil: parity");
    WeilQuartic w{s1, num / 2, q};
    // |s1| <= 4 sqrt q, 2 sqrt(q)|s1| - 2q <= s2 <= s1^2/4 + 2q
    const BigInt S1 = s1, S2 = w.s2, Q = q;
    const bool ok = S1 * S1 <= 16 * Q && 4 * S2 <= S1 * S1 + 8 * Q && S2 + 2 * Q >= 0 &&
                    (S2 + 2 * Q) * (S2 + 2 * Q) >= 4 * Q * S1 * S1;
    if (!ok) throw FrobError("WeilBoundViolated");
    return w;
}

// #J(F_{q^k}) = prod (1 - alpha_i^k) = det(I - C^k).
inline BigInt jacobian_order(const WeilQuartic& w, std::uint64_t k) {
    if (k == 0) throw FrobError("jacobian_order: k must be positive");
    return charpoly_power(w, k).eval(BigInt(1));
}

}  // namespace frobint

#endif
