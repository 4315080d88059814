#ifndef FROBINT_ARITH_HPP
#define FROBINT_ARITH_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace frobint {

using BigInt = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>, boost::multiprecision::et_off>;
using BigRat = boost::multiprecision::number<boost::multiprecision::cpp_rational_backend, boost::multiprecision::et_off>;

struct ArithError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Checked int64 helpers. Table data stays far below 2^63, so overflow is a bug.
inline std::int64_t mul_ck(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw ArithError("int64 overflow in mul");
    return r;
}
inline std::int64_t add_ck(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r)) throw ArithError("int64 overflow in add");
    return r;
}
inline std::int64_t sub_ck(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_sub_overflow(a, b, &r)) throw ArithError("int64 overflow in sub");
    return r;
}

// Remainder in [0, m).
inline std::int64_t mod_pos(std::int64_t a, std::int64_t m) {
    std::int64_t r = a % m;
    return r < 0 ? r + m : r;
}
inline std::int64_t floor_div(std::int64_t a, std::int64_t b) {
    std::int64_t q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

inline std::uint64_t pow_mod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
    unsigned __int128 r = 1 % m, x = a % m;
    while (e) {
        if (e & 1) r = r * x % m;
        x = x * x % m;
        e >>= 1;
    }
    return static_cast<std::uint64_t>(r);
}

inline std::int64_t inv_mod(std::int64_t a, std::int64_t m) {
    std::int64_t g = m, x = 0, x1 = 1, a1 = mod_pos(a, m);
    while (a1) {
        std::int64_t q = g / a1;
        std::tie(g, a1) = std::make_pair(a1, g - q * a1);
        std::tie(x, x1) = std::make_pair(x1, x - q * x1);
    }
    if (g != 1) throw ArithError("inv_mod: not invertible");
    return mod_pos(x, m);
}

inline bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// Trial division; inputs here are at most ~1e12.
inline std::vector<std::pair<std::uint64_t, int>> factor_integer(std::uint64_t n) {
    if (n == 0) throw ArithError("factor_integer: zero");
    std::vector<std::pair<std::uint64_t, int>> out;
    for (std::uint64_t d = 2; d * d <= n; d += (d == 2 ? 1 : 2)) {
        int e = 0;
        while (n % d == 0) {
            n /= d;
            ++e;
        }
        if (e) out.emplace_back(d, e);
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

inline std::int64_t isqrt(std::int64_t n) {
    if (n < 0) throw ArithError("isqrt: negative");
    auto r = static_cast<std::int64_t>(std::sqrt(static_cast<long double>(n)));
    while (r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}
inline bool is_square(std::int64_t n) {
    if (n < 0) return false;
    std::int64_t r = isqrt(n);
    return r * r == n;
}

inline std::int64_t squarefree_part(std::int64_t n) {
    std::int64_t s = 1;
    for (auto [q, e] : factor_integer(static_cast<std::uint64_t>(n)))
        if (e % 2) s *= static_cast<std::int64_t>(q);
    return s;
}

// Dense polynomial, lowest degree first. R needs +, -, *, == and R(0).
template <class R>
struct Poly {
    std::vector<R> c;

    Poly() = default;
    Poly(std::initializer_list<R> l) : c(l) { trim(); }
    explicit Poly(std::vector<R> v) : c(std::move(v)) { trim(); }

    void trim() {
        while (!c.empty() && c.back() == R(0)) c.pop_back();
    }
    int deg() const { return static_cast<int>(c.size()) - 1; }
    bool is_zero() const { return c.empty(); }
    R coef(int i) const { return (i >= 0 && i < static_cast<int>(c.size())) ? c[i] : R(0); }
    R lead() const { return c.empty() ? R(0) : c.back(); }

    friend Poly operator+(const Poly& a, const Poly& b) {
        std::vector<R> r(std::max(a.c.size(), b.c.size()), R(0));
        for (std::size_t i = 0; i < a.c.size(); ++i) r[i] = r[i] + a.c[i];
        for (std::size_t i = 0; i < b.c.size(); ++i) r[i] = r[i] + b.c[i];
        return Poly(std::move(r));
    }
    friend Poly operator-(const Poly& a, const Poly& b) {
        std::vector<R> r(std::max(a.c.size(), b.c.size()), R(0));
        for (std::size_t i = 0; i < a.c.size(); ++i) r[i] = r[i] + a.c[i];
        for (std::size_t i = 0; i < b.c.size(); ++i) r[i] = r[i] - b.c[i];
        return Poly(std::move(r));
    }
    friend Poly operator*(const Poly& a, const Poly& b) {
        if (a.is_zero() || b.is_zero()) return Poly();
        std::vector<R> r(a.c.size() + b.c.size() - 1, R(0));
        for (std::size_t i = 0; i < a.c.size(); ++i)
            for (std::size_t j = 0; j < b.c.size(); ++j) r[i + j] = r[i + j] + a.c[i] * b.c[j];
        return Poly(std::move(r));
    }
    friend Poly operator*(const R& s, const Poly& a) {
        std::vector<R> r(a.c);
        for (auto& x : r) x = s * x;
        return Poly(std::move(r));
    }
    friend bool operator==(const Poly& a, const Poly& b) { return a.c == b.c; }

    R eval(const R& x) const {
        R acc(0);
        for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
        return acc;
    }
    Poly derivative() const {
        if (c.size() <= 1) return Poly();
        std::vector<R> r(c.size() - 1, R(0));
        for (std::size_t i = 1; i < c.size(); ++i) r[i - 1] = R(static_cast<long>(i)) * c[i];
        return Poly(std::move(r));
    }
};

using ZPoly = Poly<BigInt>;
using QPoly = Poly<BigRat>;

// Division with remainder over a field (Q here).
inline std::pair<QPoly, QPoly> divmod(const QPoly& a, const QPoly& b) {
    if (b.is_zero()) throw ArithError("polynomial division by zero");
    std::vector<BigRat> r = a.c, q;
    int db = b.deg();
    if (a.deg() >= db) q.assign(a.deg() - db + 1, BigRat(0));
    for (int i = a.deg(); i >= db; --i) {
        BigRat t = r[i] / b.lead();
        if (t == 0) continue;
        q[i - db] = t;
        for (int j = 0; j <= db; ++j) r[i - db + j] -= t * b.c[j];
    }
    return {QPoly(std::move(q)), QPoly(std::move(r))};
}

inline QPoly gcd(QPoly a, QPoly b) {
    while (!b.is_zero()) {
        QPoly r = divmod(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.is_zero()) a = (BigRat(1) / a.lead()) * a;
    return a;
}

inline QPoly to_q(const ZPoly& f) {
    std::vector<BigRat> v;
    for (const auto& x : f.c) v.emplace_back(x);
    return QPoly(std::move(v));
}

inline bool is_squarefree(const ZPoly& f) {
    QPoly q = to_q(f);
    return gcd(q, q.derivative()).deg() == 0;
}

// Fraction-free Gaussian elimination (Bareiss); exact over Z.
inline BigInt det_bareiss(std::vector<std::vector<BigInt>> m) {
    const std::size_t n = m.size();
    if (n == 0) return 1;
    BigInt prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k] == 0) {
            std::size_t piv = k + 1;
            while (piv < n && m[piv][k] == 0) ++piv;
            if (piv == n) return 0;
            std::swap(m[k], m[piv]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j)
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
        prev = m[k][k];
    }
    return sign * m[n - 1][n - 1];
}

inline std::vector<std::vector<BigInt>> sylvester(const ZPoly& f, const ZPoly& g) {
    const int m = f.deg(), n = g.deg();
    std::vector<std::vector<BigInt>> s(m + n, std::vector<BigInt>(m + n, 0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j <= m; ++j) s[i][i + j] = f.c[m - j];
    for (int i = 0; i < m; ++i)
        for (int j = 0; j <= n; ++j) s[n + i][i + j] = g.c[n - j];
    return s;
}

inline BigInt resultant(const ZPoly& f, const ZPoly& g) {
    if (f.is_zero() || g.is_zero()) return 0;
    if (f.deg() == 0) return boost::multiprecision::pow(f.c[0], static_cast<unsigned>(g.deg()));
    if (g.deg() == 0) return boost::multiprecision::pow(g.c[0], static_cast<unsigned>(f.deg()));
    return det_bareiss(sylvester(f, g));
}

inline std::string to_string(const BigInt& x) { return x.str(); }

}  // namespace frobint

#endif
