#ifndef FROBINT_SIGMA_HPP
#define FROBINT_SIGMA_HPP

#include "frobint/orders.hpp"

#include <array>
#include <string>

namespace frobint {

struct SigmaError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class SigmaKind { Scalar, Companion, General };

struct SigmaMatrix {
    RQInt m11, m12, m21, m22;
    SigmaKind kind = SigmaKind::General;

    RQInt trace(const RQField& K) const { return K.add(m11, m22); }
    RQInt det(const RQField& K) const { return K.sub(K.mul(m11, m22), K.mul(m12, m21)); }
    std::string str() const {
        return "[[" + RQField::format(m11) + ", " + RQField::format(m12) + "], [" + RQField::format(m21) + ", " +
               RQField::format(m22) + "]]";
    }
};

// Scalar case: pi in O_E with pi^2 = s_p and 2 pi = a_p.
inline SigmaMatrix build_sigma_scalar(const RQField& K, RQInt pi, const FrobData& f) {
    if (!(K.mul(pi, pi) == f.sp) || !(K.scale(pi, 2) == f.ap)) throw SigmaError("scalar case needs pi^2 = s_p, 2 pi = a_p");
    return {pi, RQInt{}, RQInt{}, pi, SigmaKind::Scalar};
}

inline SigmaMatrix build_sigma(const RQField& K, const OrderSpec& s) {
    const FrobData& f = s.frob;
    const RQInt hu = K.add(K.sub(K.mul(s.u, s.u), K.mul(f.ap, s.u)), f.sp);
    auto m12 = K.div_exact(K.neg(hu), s.b_gen);
    if (!m12) throw SigmaError("NonIntegralEntry");
    const bool companion = s.b.is_unit() && s.u.is_zero() && s.b_gen == RQInt{1, 0};
    return {s.u, *m12, s.b_gen, K.sub(f.ap, s.u), companion ? SigmaKind::Companion : SigmaKind::General};
}

struct SigmaReport {
    bool trace_ok = false, det_ok = false, cofactor_integral = false;
    std::array<RQInt, 4> cofactor{};  // (sigma - u)/b when integral
    bool ok() const { return trace_ok && det_ok && cofactor_integral; }
};

inline SigmaReport verify_sigma(const RQField& K, const SigmaMatrix& m, const OrderSpec& s) {
    SigmaReport r;
    r.trace_ok = m.trace(K) == s.frob.ap;
    r.det_ok = m.det(K) == s.frob.sp;
    auto c11 = K.div_exact(K.sub(m.m11, s.u), s.b_gen);
    auto c12 = K.div_exact(m.m12, s.b_gen);
    auto c21 = K.div_exact(m.m21, s.b_gen);
    auto c22 = K.div_exact(K.sub(m.m22, s.u), s.b_gen);
    r.cofactor_integral = c11 && c12 && c21 && c22;
    if (r.cofactor_integral) r.cofactor = {*c11, *c12, *c21, *c22};
    return r;
}

// Frobenius acts on A[n] as a scalar iff n | b_p.
inline bool scalar_action_on_torsion(const RQField& K, const RQIdeal& n, const RQIdeal& b_p, std::int64_t p) {
    if (n.norm() % p == 0) throw SigmaError("NotPrimeToP");
    return K.divides(n, b_p);
}

// Same predicate, read as complete splitting in K(Proj A[n])/K.
inline bool splits_completely(const RQField& K, const RQIdeal& n, const RQIdeal& b_p, std::int64_t p) {
    return scalar_action_on_torsion(K, n, b_p, p);
}

}  // namespace frobint

#endif
