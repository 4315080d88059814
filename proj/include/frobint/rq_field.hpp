#ifndef FROBINT_RQ_FIELD_HPP
#define FROBINT_RQ_FIELD_HPP

#include "frobint/arith.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <regex>
#include <sstream>
#include <tuple>
#include <string>
#include <vector>

namespace frobint {

struct FieldError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// c0 + c1*a in the display basis of a field.
struct RQInt {
    std::int64_t c0 = 0, c1 = 0;
    friend bool operator==(const RQInt&, const RQInt&) = default;
    bool is_zero() const { return c0 == 0 && c1 == 0; }
};

// Ideal Z*A + Z*(B + C*a) in Hermite normal form: A > 0, 0 <= B < A, C > 0.
struct RQIdeal {
    std::int64_t A = 1, B = 0, C = 1;
    std::int64_t norm() const { return A * C; }
    bool is_unit() const { return A == 1 && C == 1; }
    friend bool operator==(const RQIdeal&, const RQIdeal&) = default;
    friend bool operator<(const RQIdeal& x, const RQIdeal& y) {
        return std::tie(x.A, x.B, x.C) < std::tie(y.A, y.B, y.C);
    }
};

enum class SplitType { Inert, Ramified, Split };

struct PrimeLabel {
    std::int64_t ell = 0;
    SplitType type = SplitType::Inert;
    int index = 1;
    friend bool operator==(const PrimeLabel&, const PrimeLabel&) = default;
    friend bool operator<(const PrimeLabel& x, const PrimeLabel& y) {
        return std::tie(x.ell, x.index) < std::tie(y.ell, y.index);
    }
    std::string str() const {
        switch (type) {
            case SplitType::Inert: return "(" + std::to_string(ell) + ")";
            case SplitType::Ramified: return "l" + std::to_string(ell);
            default: return "l" + std::to_string(ell) + "_" + std::to_string(index);
        }
    }
};

struct PrimeFactor {
    RQIdeal prime;
    int exp = 0;
    PrimeLabel label;
};

inline std::string fac_to_string(const std::vector<PrimeFactor>& fac) {
    if (fac.empty()) return "(1)";
    std::string s;
    for (const auto& f : fac) {
        if (!s.empty()) s += "*";
        s += f.label.str();
        if (f.exp != 1) s += "^" + std::to_string(f.exp);
    }
    return s;
}

// Real quadratic fields known to have class number one (d < 100).
inline bool class_number_one_whitelisted(std::int64_t d) {
    static const std::int64_t kList[] = {2,  3,  5,  6,  7,  11, 13, 14, 17, 19, 21, 22, 23, 29, 31, 33, 37, 38, 41,
                                         43, 46, 47, 53, 57, 59, 61, 62, 67, 69, 71, 73, 77, 83, 86, 89, 93, 94, 97};
    return std::find(std::begin(kList), std::end(kList), d) != std::end(kList);
}

class RQField {
public:
    // Display generator a with a^2 + t*a + n = 0.
    RQField(std::int64_t t, std::int64_t n) : t_(t), n_(n) {
        disc_ = t * t - 4 * n;
        if (disc_ <= 1 || is_square(disc_)) throw FieldError("minpoly does not define a real quadratic field");
        d_ = squarefree_part(disc_);
        const std::int64_t field_disc = (d_ % 4 == 1) ? d_ : 4 * d_;
        if (disc_ != field_disc) throw FieldError("Z[a] is not the maximal order");
        h1_ = class_number_one_whitelisted(d_);
        unit_ = compute_fundamental_unit();
    }

    std::int64_t t() const { return t_; }
    std::int64_t n() const { return n_; }
    std::int64_t d() const { return d_; }
    std::int64_t disc() const { return disc_; }
    bool class_number_one_attested() const { return h1_; }
    const RQInt& fundamental_unit() const { return unit_; }
    friend bool operator==(const RQField& x, const RQField& y) { return x.t_ == y.t_ && x.n_ == y.n_; }

    std::string minpoly_str() const {
        auto term = [](std::int64_t c, const std::string& x) {
            if (c == 0) return std::string();
            std::string s = c < 0 ? "-" : "+";
            if (std::llabs(c) != 1 || x.empty()) s += std::to_string(std::llabs(c)) + (x.empty() ? "" : "*");
            return s + x;
        };
        return "x^2" + term(t_, "x") + term(n_, "");
    }

    // Element arithmetic.
    RQInt add(RQInt x, RQInt y) const { return {add_ck(x.c0, y.c0), add_ck(x.c1, y.c1)}; }
    RQInt sub(RQInt x, RQInt y) const { return {sub_ck(x.c0, y.c0), sub_ck(x.c1, y.c1)}; }
    RQInt neg(RQInt x) const { return {-x.c0, -x.c1}; }
    RQInt mul(RQInt x, RQInt y) const {
        const std::int64_t a0 = mul_ck(x.c0, y.c0);
        const std::int64_t a1 = add_ck(mul_ck(x.c0, y.c1), mul_ck(x.c1, y.c0));
        const std::int64_t a2 = mul_ck(x.c1, y.c1);
        return {sub_ck(a0, mul_ck(n_, a2)), sub_ck(a1, mul_ck(t_, a2))};
    }
    RQInt scale(RQInt x, std::int64_t s) const { return {mul_ck(x.c0, s), mul_ck(x.c1, s)}; }
    RQInt conj(RQInt x) const { return {sub_ck(x.c0, mul_ck(t_, x.c1)), -x.c1}; }
    std::int64_t norm(RQInt x) const {
        return add_ck(sub_ck(mul_ck(x.c0, x.c0), mul_ck(mul_ck(t_, x.c0), x.c1)), mul_ck(mul_ck(n_, x.c1), x.c1));
    }
    std::int64_t trace(RQInt x) const { return sub_ck(mul_ck(2, x.c0), mul_ck(t_, x.c1)); }
    RQInt pow(RQInt x, unsigned e) const {
        RQInt r{1, 0};
        while (e--) r = mul(r, x);
        return r;
    }
    // x / y if exact in O_E.
    std::optional<RQInt> div_exact(RQInt x, RQInt y) const {
        const std::int64_t ny = norm(y);
        if (ny == 0) throw FieldError("division by zero");
        RQInt z = mul(x, conj(y));
        if (z.c0 % ny || z.c1 % ny) return std::nullopt;
        return RQInt{z.c0 / ny, z.c1 / ny};
    }
    bool divides(RQInt y, RQInt x) const { return div_exact(x, y).has_value(); }
    bool is_unit(RQInt x) const { return std::llabs(norm(x)) == 1; }

    // Real embeddings, for centring searches only.
    std::array<long double, 2> embed(RQInt x) const {
        const long double s = std::sqrt(static_cast<long double>(disc_));
        const long double r1 = (-t_ + s) / 2, r2 = (-t_ - s) / 2;
        return {x.c0 + x.c1 * r1, x.c0 + x.c1 * r2};
    }

    // Ideals.
    RQIdeal ideal_from(const std::vector<RQInt>& gens) const {
        std::vector<std::array<std::int64_t, 2>> vs;
        for (const auto& g : gens) {
            vs.push_back({g.c0, g.c1});
            RQInt ga = mul(g, RQInt{0, 1});
            vs.push_back({ga.c0, ga.c1});
        }
        return hnf(vs);
    }
    RQIdeal ideal(RQInt g) const {
        if (g.is_zero()) throw FieldError("zero ideal");
        return ideal_from({g});
    }
    RQIdeal unit_ideal() const { return {}; }
    std::array<RQInt, 2> basis(const RQIdeal& I) const { return {RQInt{I.A, 0}, RQInt{I.B, I.C}}; }

    bool contains(const RQIdeal& I, RQInt x) const {
        if (x.c1 % I.C) return false;
        const std::int64_t j = x.c1 / I.C;
        return mod_pos(sub_ck(x.c0, mul_ck(j, I.B)), I.A) == 0;
    }
    // I | J, i.e. J is contained in I.
    bool divides(const RQIdeal& I, const RQIdeal& J) const {
        for (const auto& b : basis(J))
            if (!contains(I, b)) return false;
        return true;
    }
    RQIdeal mul(const RQIdeal& I, const RQIdeal& J) const {
        std::vector<RQInt> gens;
        for (const auto& x : basis(I))
            for (const auto& y : basis(J)) gens.push_back(mul(x, y));
        return ideal_from(gens);
    }
    RQIdeal pow(const RQIdeal& I, int e) const {
        RQIdeal r = unit_ideal();
        for (int i = 0; i < e; ++i) r = mul(r, I);
        return r;
    }
    RQIdeal conj(const RQIdeal& I) const {
        auto b = basis(I);
        return ideal_from({conj(b[0]), conj(b[1])});
    }
    RQIdeal add(const RQIdeal& I, const RQIdeal& J) const {
        auto bi = basis(I), bj = basis(J);
        return ideal_from({bi[0], bi[1], bj[0], bj[1]});
    }
    // J / I, requires I | J.
    RQIdeal div(const RQIdeal& J, const RQIdeal& I) const {
        if (!divides(I, J)) throw FieldError("ideal division is not exact");
        const std::int64_t n = I.norm();
        RQIdeal P = mul(J, conj(I));
        std::vector<RQInt> gens;
        for (const auto& b : basis(P)) {
            if (b.c0 % n || b.c1 % n) throw FieldError("ideal division is not exact");
            gens.push_back({b.c0 / n, b.c1 / n});
        }
        return ideal_from(gens);
    }
    int valuation(const RQIdeal& P, RQIdeal I) const {
        int v = 0;
        while (divides(P, I)) {
            I = div(I, P);
            ++v;
        }
        return v;
    }

    // Primes above ell; split primes are ordered by the root r of the minpoly mod ell, smaller first.
    std::vector<std::pair<RQIdeal, PrimeLabel>> prime_above(std::int64_t ell) const {
        if (!is_prime(static_cast<std::uint64_t>(ell))) throw FieldError("prime_above: not a prime");
        std::vector<std::int64_t> roots;
        for (std::int64_t r = 0; r < ell; ++r)
            if (mod_pos(mod_pos(r * r, ell) + mod_pos(t_ * r, ell) + n_, ell) == 0) roots.push_back(r);
        std::vector<std::pair<RQIdeal, PrimeLabel>> out;
        if (roots.empty()) {
            out.push_back({ideal(RQInt{ell, 0}), PrimeLabel{ell, SplitType::Inert, 1}});
        } else if (roots.size() == 1) {
            out.push_back({ideal_from({RQInt{ell, 0}, RQInt{-roots[0], 1}}), PrimeLabel{ell, SplitType::Ramified, 1}});
        } else {
            for (int i = 0; i < 2; ++i)
                out.push_back(
                    {ideal_from({RQInt{ell, 0}, RQInt{-roots[i], 1}}), PrimeLabel{ell, SplitType::Split, i + 1}});
        }
        return out;
    }

    std::vector<PrimeFactor> factor_ideal(const RQIdeal& I) const {
        std::vector<PrimeFactor> out;
        RQIdeal rest = I;
        for (auto [ell, e] : factor_integer(static_cast<std::uint64_t>(I.norm()))) {
            for (const auto& [P, lab] : prime_above(static_cast<std::int64_t>(ell))) {
                int v = valuation(P, rest);
                if (v) {
                    out.push_back({P, v, lab});
                    rest = div(rest, pow(P, v));
                }
            }
        }
        if (!rest.is_unit()) throw FieldError("factor_ideal: incomplete factorization");
        return out;
    }
    RQIdeal ideal_of_factors(const std::vector<PrimeFactor>& fac) const {
        RQIdeal r = unit_ideal();
        for (const auto& f : fac) r = mul(r, pow(f.prime, f.exp));
        return r;
    }
    RQIdeal prime_by_label(const PrimeLabel& lab) const {
        for (const auto& [P, l] : prime_above(lab.ell))
            if (l == lab) return P;
        throw FieldError("no prime with label " + lab.str());
    }

    // Canonical generator of a principal ideal.
    RQInt find_generator(const RQIdeal& I) const {
        if (!h1_) throw FieldError("class number one not attested for d=" + std::to_string(d_));
        const std::int64_t N = I.norm();
        // Some associate has both embeddings bounded by sqrt(N * eps).
        const long double eps = std::fabs(embed(unit_)[0]) > 1 ? std::fabs(embed(unit_)[0]) : std::fabs(embed(unit_)[1]);
        const long double bound = std::sqrt(static_cast<long double>(N) * eps) * (1 + 1e-9L) + 1;
        const long double sq = std::sqrt(static_cast<long double>(disc_));
        const std::int64_t x1max = static_cast<std::int64_t>(2 * bound / sq) + 1;
        const long double amax = (std::fabs(static_cast<long double>(t_)) + sq) / 2;
        std::optional<RQInt> found;
        for (std::int64_t x1 = 0; x1 <= x1max && !found; x1 += I.C) {
            const std::int64_t j = x1 / I.C;
            const std::int64_t x0max = static_cast<std::int64_t>(bound + x1 * amax) + 1;
            // x0 = i*A + j*B, with |x0| <= x0max
            const std::int64_t off = j * I.B;
            for (std::int64_t i = floor_div(-x0max - off, I.A); i * I.A + off <= x0max; ++i) {
                RQInt x{i * I.A + off, x1};
                if (x.is_zero()) continue;
                if (std::llabs(norm(x)) == N) {
                    found = x;
                    break;
                }
            }
        }
        if (!found) throw FieldError("GeneratorSearchExceeded");
        return normalize_associate(*found);
    }

    // Among +-g*eps^k pick minimal |c1|, then minimal |c0|, then c0 > 0, then c1 > 0.
    RQInt normalize_associate(RQInt g) const {
        const auto e = embed(unit_);
        const long double L = std::log(std::fabs(e[0]) > 1 ? std::fabs(e[0]) : std::fabs(e[1]));
        const auto ge = embed(g);
        // Centre where both embeddings balance.
        long double k0 = (std::log(std::fabs(ge[1])) - std::log(std::fabs(ge[0]))) / (2 * L);
        if (std::fabs(e[0]) < 1) k0 = -k0;
        const auto kc = static_cast<std::int64_t>(std::llround(k0));
        RQInt uinv = unit_inverse();
        auto better = [](RQInt x, RQInt y) {
            auto key = [](RQInt z) {
                return std::make_tuple(std::llabs(z.c1), std::llabs(z.c0), z.c0 < 0, z.c1 < 0);
            };
            return key(x) < key(y);
        };
        RQInt best = g;
        bool have = false;
        for (std::int64_t k = kc - 4; k <= kc + 4; ++k) {
            RQInt x = g;
            try {
                if (k >= 0)
                    for (std::int64_t i = 0; i < k; ++i) x = mul(x, unit_);
                else
                    for (std::int64_t i = 0; i < -k; ++i) x = mul(x, uinv);
            } catch (const ArithError&) {
                continue;
            }
            for (RQInt y : {x, neg(x)})
                if (!have || better(y, best)) {
                    best = y;
                    have = true;
                }
        }
        return best;
    }
    RQInt unit_inverse() const {
        RQInt c = conj(unit_);
        return norm(unit_) == 1 ? c : neg(c);
    }

    // Representatives of O_E / b: c0 in [0, A), c1 in [0, C).
    std::vector<RQInt> residue_system(const RQIdeal& b) const {
        std::vector<RQInt> out;
        out.reserve(static_cast<std::size_t>(b.norm()));
        for (std::int64_t j = 0; j < b.C; ++j)
            for (std::int64_t i = 0; i < b.A; ++i) out.push_back({i, j});
        return out;
    }
    // Canonical representative of x mod b: minimal |c1|, then minimal |c0|, then nonnegative.
    RQInt reduce_mod(RQInt x, const RQIdeal& b) const {
        // Move x1 into a balanced range by multiples of (B + C a), then c0 by multiples of A.
        const std::int64_t j0 = floor_div(x.c1, b.C);
        RQInt best{};
        bool have = false;
        for (std::int64_t j = j0 - 1; j <= j0 + 2; ++j) {
            RQInt y{sub_ck(x.c0, mul_ck(j, b.B)), sub_ck(x.c1, mul_ck(j, b.C))};
            const std::int64_t r = mod_pos(y.c0, b.A);
            for (std::int64_t c0 : {r, r - b.A}) {
                RQInt z{c0, y.c1};
                auto key = [](RQInt w) { return std::make_tuple(std::llabs(w.c1), std::llabs(w.c0), w.c0 < 0, w.c1 < 0); };
                if (!have || key(z) < key(best)) {
                    best = z;
                    have = true;
                }
            }
        }
        return best;
    }

    // Elements x in I, y in J with x + y = 1, for coprime I, J.
    std::pair<RQInt, RQInt> split_one(const RQIdeal& I, const RQIdeal& J) const {
        // Row-reduce the four generators while tracking the I-component.
        struct Row {
            std::int64_t v0, v1;
            RQInt part;
        };
        std::vector<Row> rows;
        for (const auto& b : basis(I)) rows.push_back({b.c0, b.c1, b});
        for (const auto& b : basis(J)) rows.push_back({b.c0, b.c1, RQInt{}});
        auto axpy = [&](Row& r, const Row& s, std::int64_t q) {
            r.v0 = sub_ck(r.v0, mul_ck(q, s.v0));
            r.v1 = sub_ck(r.v1, mul_ck(q, s.v1));
            r.part = sub(r.part, scale(s.part, q));
        };
        auto reduce_col = [&](int col, std::vector<Row>& rs) {
            auto val = [col](const Row& r) { return col ? r.v1 : r.v0; };
            for (;;) {
                std::size_t piv = rs.size();
                for (std::size_t i = 0; i < rs.size(); ++i)
                    if (val(rs[i]) != 0 && (piv == rs.size() || std::llabs(val(rs[i])) < std::llabs(val(rs[piv]))))
                        piv = i;
                if (piv == rs.size()) return rs.size();
                bool done = true;
                for (std::size_t i = 0; i < rs.size(); ++i)
                    if (i != piv && val(rs[i]) != 0) {
                        axpy(rs[i], rs[piv], val(rs[i]) / val(rs[piv]));
                        if (val(rs[i]) != 0) done = false;
                    }
                if (done) return piv;
            }
        };
        std::size_t p1 = reduce_col(1, rows);
        std::vector<Row> rest;
        for (std::size_t i = 0; i < rows.size(); ++i)
            if (i != p1) rest.push_back(rows[i]);
        std::size_t p0 = reduce_col(0, rest);
        if (p0 == rest.size() || std::llabs(rest[p0].v0) != 1) throw FieldError("split_one: ideals not coprime");
        RQInt x = rest[p0].part;
        if (rest[p0].v0 < 0) x = neg(x);
        return {x, sub(RQInt{1, 0}, x)};
    }

    // Text formats.
    static std::string format(RQInt x) {
        if (x.c1 == 0) return std::to_string(x.c0);
        std::string a = (std::llabs(x.c1) == 1) ? "a" : std::to_string(std::llabs(x.c1)) + "*a";
        if (x.c0 == 0) return (x.c1 < 0 ? "-" : "") + a;
        return std::to_string(x.c0) + (x.c1 < 0 ? "-" : "+") + a;
    }
    static RQInt parse(const std::string& text) {
        std::string s;
        for (char ch : text)
            if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
        auto bad = [&]() { return FieldError("cannot parse element '" + text + "'"); };
        auto to_int = [&](const std::string& v) -> std::int64_t {
            static const std::regex num(R"(^[+-]?\d+$)");
            if (!std::regex_match(v, num)) throw bad();
            return std::stoll(v);
        };
        if (s.empty()) throw bad();
        if (s.back() != 'a') return {to_int(s), 0};
        std::string pre = s.substr(0, s.size() - 1);
        if (!pre.empty() && pre.back() == '*') pre.pop_back();
        const auto pos = pre.find_last_of("+-");
        std::string c0s, c1s = pre;
        if (pos != std::string::npos && pos > 0) {
            c0s = pre.substr(0, pos);
            c1s = pre.substr(pos);
        }
        RQInt x;
        if (!c0s.empty()) x.c0 = to_int(c0s);
        if (c1s.empty() || c1s == "+") x.c1 = 1;
        else if (c1s == "-") x.c1 = -1;
        else x.c1 = to_int(c1s);
        return x;
    }

    // Factorization text: "(1)", "(2)^2*l5*l11_1".
    std::vector<PrimeFactor> parse_factorization(const std::string& text) const {
        std::vector<PrimeFactor> out;
        if (text == "(1)") return out;
        static const std::regex re(R"(^(?:\((\d+)\)|l(\d+)(?:_(\d))?)(?:\^(\d+))?$)");
        std::stringstream ss(text);
        std::string tok;
        while (std::getline(ss, tok, '*')) {
            std::smatch m;
            if (!std::regex_match(tok, m, re)) throw FieldError("cannot parse factorization '" + text + "'");
            PrimeLabel lab;
            if (m[1].matched) {
                lab = {std::stoll(m[1].str()), SplitType::Inert, 1};
            } else {
                lab.ell = std::stoll(m[2].str());
                lab.type = m[3].matched ? SplitType::Split : SplitType::Ramified;
                lab.index = m[3].matched ? std::stoi(m[3].str()) : 1;
            }
            const int e = m[4].matched ? std::stoi(m[4].str()) : 1;
            out.push_back({prime_by_label(lab), e, lab});
        }
        std::sort(out.begin(), out.end(), [](const PrimeFactor& x, const PrimeFactor& y) { return x.label < y.label; });
        return out;
    }

private:
    static RQIdeal hnf(const std::vector<std::array<std::int64_t, 2>>& in) {
        // Euclid on the second coordinate, then gcd of the first coordinates of the rest.
        // Intermediate first coordinates can outgrow int64; the result is bounded by the norm.
        std::vector<std::array<BigInt, 2>> vs;
        for (const auto& v : in) vs.push_back({BigInt(v[0]), BigInt(v[1])});
        for (;;) {
            std::size_t piv = vs.size();
            for (std::size_t i = 0; i < vs.size(); ++i)
                if (vs[i][1] != 0 && (piv == vs.size() || abs(vs[i][1]) < abs(vs[piv][1]))) piv = i;
            if (piv == vs.size()) throw FieldError("hnf: rank deficient");
            bool done = true;
            for (std::size_t i = 0; i < vs.size(); ++i)
                if (i != piv && vs[i][1] != 0) {
                    const BigInt q = vs[i][1] / vs[piv][1];
                    vs[i][0] -= q * vs[piv][0];
                    vs[i][1] -= q * vs[piv][1];
                    if (vs[i][1] != 0) done = false;
                }
            if (done) {
                BigInt g = 0;
                for (std::size_t i = 0; i < vs.size(); ++i)
                    if (i != piv) g = gcd(g, vs[i][0]);
                if (g == 0) throw FieldError("hnf: rank deficient");
                auto pv = vs[piv];
                if (pv[1] < 0) pv = {BigInt(-pv[0]), BigInt(-pv[1])};
                BigInt B = pv[0] % g;
                if (B < 0) B += g;
                if (g * pv[1] > BigInt(std::numeric_limits<std::int64_t>::max()))
                    throw ArithError("hnf: ideal norm exceeds int64");
                return RQIdeal{static_cast<std::int64_t>(g), static_cast<std::int64_t>(B), static_cast<std::int64_t>(pv[1])};
            }
        }
    }

    RQInt compute_fundamental_unit() const {
        // Continued fraction of w = (P0 + sqrt(D)) / Q0, with Z[w] = O_E.
        const std::int64_t D = d_;
        const bool one_mod_four = (d_ % 4 == 1);
        std::int64_t P = one_mod_four ? 1 : 0, Q = one_mod_four ? 2 : 1;
        const std::int64_t sq = isqrt(D);
        // convergents h/k of w; unit candidate h - k*w' has norm N(h - k w).
        BigInt hm2 = 0, hm1 = 1, km2 = 1, km1 = 0;
        for (int it = 0; it < 10000; ++it) {
            const std::int64_t ai = floor_div(P + sq, Q);
            BigInt h = ai * hm1 + hm2, k = ai * km1 + km2;
            // N(h - k w) for w = (1+sqrt d)/2 or sqrt d.
            BigInt nrm = one_mod_four ? BigInt(h * h - h * k - k * k * ((D - 1) / 4)) : BigInt(h * h - k * k * D);
            if (nrm == 1 || nrm == -1) {
                // eps = h - k w' = h + k w - k (w + w') ; w + w' = 1 or 0.
                // Express sqrt(D) via a: sqrt(disc) = 2a + t.
                const auto hh = static_cast<std::int64_t>(h), kk = static_cast<std::int64_t>(k);
                // eps = h - k*(P0 - sqrt d)/Q0, i.e. (Q0 h - k P0 + k sqrt d) / Q0
                const std::int64_t q0 = one_mod_four ? 2 : 1, p0 = one_mod_four ? 1 : 0;
                // sqrt d = (2a + t) / (disc == d ? 1 : 2)
                const std::int64_t s = one_mod_four ? 1 : 2;
                // eps = (q0 h - k p0) / q0 + k (2a + t) / (s q0)
                const std::int64_t num0 = (q0 * hh - kk * p0) * s + kk * t_;
                const std::int64_t den = s * q0;
                const std::int64_t num1 = 2 * kk;
                if (num0 % den || num1 % den) throw FieldError("fundamental unit conversion failed");
                RQInt e{num0 / den, num1 / den};
                if (std::llabs(norm(e)) != 1) throw FieldError("fundamental unit has wrong norm");
                return e;
            }
            hm2 = hm1;
            hm1 = h;
            km2 = km1;
            km1 = k;
            P = ai * Q - P;
            Q = (D - P * P) / Q;
        }
        throw FieldError("fundamental unit not found");
    }

    std::int64_t t_, n_, disc_, d_;
    bool h1_;
    RQInt unit_;
};

inline std::int64_t ideal_norm_from_label(const PrimeLabel& lab) {
    return lab.type == SplitType::Inert ? lab.ell * lab.ell : lab.ell;
}

// Change the display basis of x between two generators of the same field.
inline RQInt change_display_basis(RQInt x, const RQField& from, const RQField& to) {
    if (from.d() != to.d()) throw FieldError("FieldMismatch");
    // sqrt(disc) = 2a + t in each basis; both disc values are d or 4d and equal for maximal Z[a].
    if (from.disc() != to.disc()) throw FieldError("FieldMismatch");
    // a_from = (sqrt(disc) - t_from)/2 = (2 a_to + t_to - t_from)/2 = a_to + (t_to - t_from)/2
    const std::int64_t dt = to.t() - from.t();
    if (dt % 2) throw FieldError("FieldMismatch");
    return {add_ck(x.c0, mul_ck(x.c1, dt / 2)), x.c1};
}

}  // namespace frobint

#endif
