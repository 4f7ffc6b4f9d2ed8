#include "common.hpp"
#include "qident/regularize.hpp"

#include <cmath>

namespace qident {

using namespace detail;

// ---------------------------------------------------------------- Jackson --

template <class S>
IdentityReport verify_jackson_8phi7(const S& a, const S& b, const S& c, const S& d, long n, const S& q, double tol)
{
    IdentityReport rep = start("jackson8phi7", tol);
    put(rep.params, "a", a), put(rep.params, "b", b), put(rep.params, "c", c), put(rep.params, "d", d);
    put(rep.params, "n", n), put(rep.params, "q", q);
    return guarded(rep, [&](IdentityReport& r) {
        if (n < 0) throw DomainError("jackson8phi7: n must be >= 0");
        const S e = ipow(q, n + 1) * a * a / (b * c * d);
        const S sa = csqrt(a);
        SeriesSpec<S> sp;
        sp.numerator = {a, q * sa, -q * sa, b, c, d, e, QParam<S>::power(-n, q)};
        sp.denominator = {sa, -sa, a * q / b, a * q / c, a * q / d, a * q / e, a * ipow(q, n + 1)};
        sp.argument = q;
        sp.q = q;
        const auto v = eval_phi(sp);
        const S rhs = poch_multi({a * q, a * q / (b * c), a * q / (b * d), a * q / (c * d)}, q, n)
                      * rpoch_multi({a * q / b, a * q / c, a * q / d, a * q / (b * c * d)}, q, n);
        r.terms_used = v.terms_used;
        r.terminated = v.terminated;
        r.aux["e"] = to_cplx(e);
        r.aux["cancellation"] = cplx(v.magnitude / std::max(mag(v.value), 1e-300));
        judge(r, to_cplx(v.value), to_cplx(rhs));
    });
}

// The transformation side carries the finite prefactor and argument q; the
// infinite-product prefactor with argument aq/ef does not hold numerically.
template <class S>
IdentityReport verify_bailey_10phi9(const S& a, const S& b, const S& c, const S& d, const S& e, const S& f, long n,
                                    const S& q, double tol)
{
    IdentityReport rep = start("bailey10phi9", tol);
    put(rep.params, "a", a), put(rep.params, "b", b), put(rep.params, "c", c), put(rep.params, "d", d);
    put(rep.params, "e", e), put(rep.params, "f", f), put(rep.params, "n", n), put(rep.params, "q", q);
    return guarded(rep, [&](IdentityReport& r) {
        if (n < 0) throw DomainError("bailey10phi9: n must be >= 0");
        const S qn1 = ipow(q, n + 1);
        const S lam = q * a * a / (b * c * d);
        const S sa = csqrt(a), sl = csqrt(lam);
        const auto qmn = QParam<S>::power(-n, q);

        SeriesSpec<S> l;
        l.numerator = {a, q * sa, -q * sa, b, c, d, e, f, lam * a * qn1 / (e * f), qmn};
        l.denominator = {sa, -sa, a * q / b, a * q / c, a * q / d, a * q / e, a * q / f, e * f / (lam * ipow(q, n)),
                         a * qn1};
        l.argument = q;
        l.q = q;

        SeriesSpec<S> rr;
        rr.numerator = {lam, q * sl, -q * sl, lam * b / a, lam * c / a, lam * d / a, e, f, lam * a * qn1 / (e * f), qmn};
        rr.denominator = {sl, -sl, a * q / b, a * q / c, a * q / d, lam * q / e, lam * q / f,
                          e * f / (a * ipow(q, n)), lam * qn1};
        rr.argument = q;
        rr.q = q;

        const auto lv = eval_phi(l);
        const auto rv = eval_phi(rr);
        const S pre = poch_multi({a * q, a * q / (e * f), lam * q / e, lam * q / f}, q, n)
                      * rpoch_multi({a * q / e, a * q / f, lam * q, lam * q / (e * f)}, q, n);
        r.terms_used = lv.terms_used + rv.terms_used;
        r.terminated = lv.terminated && rv.terminated;
        r.aux["lambda"] = to_cplx(lam);
        r.aux["cancellation"] = cplx(std::max(lv.magnitude / std::max(mag(lv.value), 1e-300),
                                              rv.magnitude / std::max(mag(rv.value), 1e-300)));
        judge(r, to_cplx(lv.value), to_cplx(S(pre * rv.value)));
    });
}

template <class S>
IdentityReport verify_bailey_6psi6(const S& a, const QParam<S>& b, const QParam<S>& c, const QParam<S>& d,
                                   const QParam<S>& e, const S& q, double tol)
{
    IdentityReport rep = start("bailey6psi6", tol);
    put(rep.params, "a", a), put(rep.params, "b", b), put(rep.params, "c", c), put(rep.params, "d", d);
    put(rep.params, "e", e), put(rep.params, "q", q);
    return guarded(rep, [&](IdentityReport& r) {
        const S x = q * a * a / (b.value * c.value * d.value * e.value);
        if (!(modulus(x) < real_t<S>(1))) throw DomainError("bailey6psi6: needs |q a^2 / bcde| < 1");
        const S sa = csqrt(a);
        SeriesSpec<S> sp;
        sp.kind = SeriesKind::Bilateral;
        sp.numerator = {q * sa, -q * sa, b, c, d, e};
        sp.denominator = {sa, -sa, a * q / b.value, a * q / c.value, a * q / d.value, a * q / e.value};
        sp.argument = x;
        sp.q = q;
        const auto v = eval_psi(sp);
        const S &B = b.value, &C = c.value, &D = d.value, &E = e.value;
        const S rhs = poch_inf_multi({a * q, a * q / (B * C), a * q / (B * D), a * q / (B * E), a * q / (C * D),
                                      a * q / (C * E), a * q / (D * E), q, q / a},
                                     q)
                      * rpoch_inf_multi({a * q / B, a * q / C, a * q / D, a * q / E, q / B, q / C, q / D, q / E, x}, q);
        r.terms_used = v.terms_used;
        r.terminated = v.terminated;
        r.aux["argument"] = to_cplx(x);
        judge(r, to_cplx(v.value), to_cplx(rhs));
    });
}

template <class S>
IdentityReport verify_ramanujan_1psi1(const QParam<S>& a, const QParam<S>& b, const S& x, const S& q, double tol)
{
    IdentityReport rep = start("ramanujan1psi1", tol);
    put(rep.params, "a", a), put(rep.params, "b", b), put(rep.params, "x", x), put(rep.params, "q", q);
    return guarded(rep, [&](IdentityReport& r) {
        const S &A = a.value, &B = b.value;
        if (!(modulus(x) < real_t<S>(1)) || !(modulus(S(B / A)) < modulus(x)))
            throw DomainError("ramanujan1psi1: needs |b/a| < |x| < 1");
        SeriesSpec<S> sp;
        sp.kind = SeriesKind::Bilateral;
        sp.numerator = {a};
        sp.denominator = {b};
        sp.argument = x;
        sp.q = q;
        const auto v = eval_psi(sp);
        const S rhs = poch_inf_multi({q, B / A, A * x, q / (A * x)}, q) * rpoch_inf_multi({B, q / A, x, B / (A * x)}, q);
        r.terms_used = v.terms_used;
        r.terminated = v.terminated;
        judge(r, to_cplx(v.value), to_cplx(rhs));
    });
}

// C1 Macdonald normalization: 1/(1-x^2) + 1/(1-x^{-2}) = 1.
template <class S>
IdentityReport verify_c1_macdonald(const S& x, double tol)
{
    IdentityReport rep = start("c1macdonald", tol);
    put(rep.params, "x", x);
    return guarded(rep, [&](IdentityReport& r) {
        const S x2 = x * x;
        if (below(S(S(1) - x2), 1e-14)) throw DivisionByVanishingFactor("c1macdonald: x^2 = 1");
        const S rhs = S(1) / (S(1) - x2) + S(1) / (S(1) - S(1) / x2);
        r.terms_used = 2;
        r.terminated = true;
        judge(r, cplx(1), to_cplx(rhs));
    });
}

// ------------------------------------------------------- flipped summand --

template <class S>
S jackson_summand(long k, const Rank1Params<S>& r)
{
    if (k < 0) throw DomainError("jackson_summand: k must be >= 0");
    const TruncationPolicy pol = TruncationPolicy::for_scalar<S>();
    const S& q = r.q;
    const S b = cpow(q, S(S(2) * r.z));
    const S S3 = r.sigma * r.rho * r.gamma;
    const long n = r.n;
    const S den0 = S(1) - b;
    if (below(den0, pol.zero_tol)) throw DivisionByVanishingFactor("jackson_summand: b = 1");
    S v = (S(1) - b * ipow(q, 2 * k)) / den0;
    v *= poch_int(b, q, k, pol) * poch_qpow(-n, q, k) * rpoch_qpow(1, q, k) * rpoch_int(S(b * ipow(q, 1 + n)), q, k, pol);
    v *= poch_multi({r.sigma, r.rho, r.gamma, S(b * b * ipow(q, 1 + n) / S3)}, q, k, pol);
    v *= rpoch_multi({S(q * b / r.sigma), S(q * b / r.rho), S(q * b / r.gamma), S(S3 * ipow(q, -n) / b)}, q, k);
    return v * ipow(q, k);
}

// Term of the Jackson sum rewritten through infinite products so that it is
// defined (and even) in u; at u = z + k it reproduces jackson_summand.
template <class S>
S flipped_summand(const S& u, const Rank1Params<S>& r)
{
    const S& q = r.q;
    const S& z = r.z;
    const long n = r.n;
    const S S3 = r.sigma * r.rho * r.gamma;
    auto Q = [&](const S& e) { return cpow(q, e); };
    auto P = [&](const S& c) { return poch_inf(c, q); };
    auto RP = [&](std::initializer_list<S> cs) { return rpoch_inf_multi(cs, q); };
    const S n1(static_cast<double>(1 + n));

    S v = Q(S(-z * z)) * RP({Q(S(S(-2) * z)), Q(S(S(2) * z))});
    v *= P(r.sigma) * P(r.rho) * P(S(r.sigma * Q(S(S(-2) * z)))) * P(S(r.rho * Q(S(S(-2) * z))));
    v *= RP({Q(S(S(1) - S(2) * z)), ipow(q, 1 + n), q, Q(S(n1 + S(2) * z))});
    v *= P(r.gamma) * P(S(Q(S(S(4) * z + n1)) / S3)) * P(S(r.gamma * Q(S(S(-2) * z)))) * P(S(Q(S(n1 + S(2) * z)) / S3));
    v *= P(Q(S(S(1) - z - u))) * P(Q(S(n1 + z - u))) * P(Q(S(S(1) - z + u))) * P(Q(S(n1 + z + u)));
    v *= RP({S(r.sigma * Q(S(u - z))), S(r.rho * Q(S(u - z))), S(r.sigma * Q(S(-z - u))), S(r.rho * Q(S(-z - u)))});
    v *= Q(S(u * u)) * P(Q(S(S(-2) * u))) * P(Q(S(S(2) * u)));
    v *= RP({S(r.gamma * Q(S(u - z))), S(Q(S(S(3) * z + n1 + u)) / S3), S(r.gamma * Q(S(-z - u))),
             S(Q(S(S(3) * z + n1 - u)) / S3)});
    return v;
}

namespace {

// z within 1e-12 of delta/2 for an integer delta: both forms are 0/0 there.
template <class S>
bool at_half_integer(const S& z)
{
    const cplx c = to_cplx(z);
    return std::abs(c.imag()) < 1e-12 && std::abs(2 * c.real() - std::round(2 * c.real())) < 1e-12;
}

template <class S>
Rank1Params<cplx_reg> reg_params(const Rank1Params<S>& r, const cplx_reg& z)
{
    return Rank1Params<cplx_reg>{to_reg(r.sigma), to_reg(r.rho), to_reg(r.gamma), to_reg(r.q), r.n, r.delta, z};
}

void put_rank1(ParamMap& m, const auto& r)
{
    put(m, "sigma", r.sigma), put(m, "rho", r.rho), put(m, "gamma", r.gamma), put(m, "q", r.q);
    put(m, "n", r.n);
}

} // namespace

template <class S>
IdentityReport verify_flipped_summand(long k, const Rank1Params<S>& r, double tol)
{
    IdentityReport rep = start("flippedsummand", tol);
    put_rank1(rep.params, r);
    put(rep.params, "z", r.z), put(rep.params, "k", k);
    return guarded(rep, [&](IdentityReport& out) {
        if (k < 0) throw DomainError("flippedsummand: k must be >= 0");
        cplx lhs, rhs;
        if (at_half_integer(r.z)) {
            const cplx_reg z0 = to_reg(r.z);
            lhs = regularized_limit([&](const cplx_reg& e) { return jackson_summand(k, reg_params(r, z0 + e)); });
            rhs = regularized_limit([&](const cplx_reg& e) {
                return flipped_summand(cplx_reg(z0 + e + cplx_reg(k)), reg_params(r, z0 + e));
            });
            out.message = "regularized at half-integer z";
        } else {
            lhs = to_cplx(jackson_summand(k, r));
            rhs = to_cplx(flipped_summand(S(r.z + S(k)), r));
        }
        out.terms_used = 1;
        out.terminated = true;
        judge(out, lhs, rhs);
    });
}

// Even symmetry u -> -u of the flipped summand at z = delta/2 (a 0/0 point,
// so both sides are taken along z = delta/2 + eps).
template <class S>
IdentityReport verify_summand_invariance(const Rank1Params<S>& r, long k, int sign, double tol)
{
    IdentityReport rep = start("summandinvariance", tol);
    put_rank1(rep.params, r);
    put(rep.params, "delta", r.delta), put(rep.params, "k", k), put(rep.params, "sign", static_cast<long>(sign));
    return guarded(rep, [&](IdentityReport& out) {
        if (r.delta != 0 && r.delta != 1) throw DomainError("summandinvariance: delta must be 0 or 1");
        if (sign != 1 && sign != -1) throw DomainError("summandinvariance: sign must be +-1");
        const cplx_reg z0(r.delta / 2.0);
        auto side = [&](int sg) {
            return regularized_limit([&](const cplx_reg& e) {
                const cplx_reg z = z0 + e;
                return flipped_summand(cplx_reg(cplx_reg(sg) * (z + cplx_reg(k))), reg_params(r, z));
            });
        };
        out.terms_used = 2;
        out.terminated = true;
        judge(out, side(1), side(sign));
    });
}

// ------------------------------------------------------ bilateral finite --

namespace {

// 1/(1-q) for delta = 1, 1 for delta = 0
template <class S>
S rank1_f(int delta, const S& q)
{
    return delta == 1 ? S(S(1) / (S(1) - q)) : S(1);
}

} // namespace

// Three evaluations of the finite bilateral sum: the bilateral series over
// [-n-delta, n], its folded unilateral form, and the product.
template <class S>
IdentityReport verify_bilateral_finite(const Rank1Params<S>& r, double tol)
{
    IdentityReport rep = start("bilateralfinite", tol);
    put_rank1(rep.params, r);
    put(rep.params, "delta", r.delta);
    return guarded(rep, [&](IdentityReport& out) {
        if (r.delta != 0 && r.delta != 1) throw DomainError("bilateralfinite: delta must be 0 or 1");
        if (r.n < 0) throw DomainError("bilateralfinite: n must be >= 0");
        const S& q = r.q;
        const long n = r.n;
        const int d = r.delta;
        const S S3 = r.sigma * r.rho * r.gamma;
        const S Q = ipow(q, 1 + d);

        SeriesSpec<S> sp;
        sp.kind = SeriesKind::Bilateral;
        sp.numerator = {QParam<S>::power(-n, q), r.sigma, r.rho, r.gamma, S(ipow(q, 2 * d + 1 + n) / S3)};
        sp.denominator = {QParam<S>::power(d + 1 + n, q), S(Q / r.sigma), S(Q / r.rho), S(Q / r.gamma),
                          S(S3 * ipow(q, -d - n))};
        sp.argument = q;
        sp.q = q;
        const auto bv = eval_psi(sp, TruncationPolicy::for_scalar<S>(), std::make_pair(-n - d, n));
        const S bil = rank1_f(d, q) * bv.value;

        S uni(0);
        for (long k = 0; k <= n; ++k) {
            S c = poch_qpow(-n, q, k) * rpoch_qpow(d + 1 + n, q, k);
            c *= poch_multi({r.sigma, r.rho, r.gamma, S(ipow(q, 2 * d + 1 + n) / S3)}, q, k);
            c *= rpoch_multi({S(Q / r.sigma), S(Q / r.rho), S(Q / r.gamma), S(S3 * ipow(q, -d - n))}, q, k);
            c *= ipow(q, k);
            S w = d == 0 ? (k == 0 ? S(1) : S(S(1) + ipow(q, k))) : S((S(1) - ipow(q, 1 + 2 * k)) / (S(1) - q));
            uni += w * c;
        }

        const S prod = poch_multi({Q, S(Q / (r.sigma * r.rho)), S(Q / (r.sigma * r.gamma)), S(Q / (r.rho * r.gamma))}, q, n)
                       * rpoch_multi({S(Q / r.sigma), S(Q / r.rho), S(Q / r.gamma), S(Q / S3)}, q, n);
        out.terms_used = bv.terms_used;
        out.terminated = true;
        out.aux["unilateral"] = to_cplx(uni);
        judge_all(out, {to_cplx(bil), to_cplx(prod), to_cplx(uni)});
        out.lhs = to_cplx(bil);
        out.rhs = to_cplx(prod);
    });
}

// f(delta) * 3psi3[s,r,g; q^{1+d}/s, q^{1+d}/r, q^{1+d}/g; q^{1+d}/srg] = product
template <class S>
IdentityReport verify_3psi3(int delta, const S& sigma, const S& rho, const S& gamma, const S& q, double tol)
{
    IdentityReport rep = start(delta == 0 ? "3psi3delta0" : "3psi3delta1", tol);
    put(rep.params, "sigma", sigma), put(rep.params, "rho", rho), put(rep.params, "gamma", gamma), put(rep.params, "q", q);
    return guarded(rep, [&](IdentityReport& out) {
        if (delta != 0 && delta != 1) throw DomainError("3psi3: delta must be 0 or 1");
        const S Q = ipow(q, 1 + delta);
        const S S3 = sigma * rho * gamma;
        const S x = Q / S3;
        if (!(modulus(x) < real_t<S>(1))) throw DomainError("3psi3: needs |q^{1+delta}/(sigma rho gamma)| < 1");
        SeriesSpec<S> sp;
        sp.kind = SeriesKind::Bilateral;
        sp.numerator = {sigma, rho, gamma};
        sp.denominator = {S(Q / sigma), S(Q / rho), S(Q / gamma)};
        sp.argument = x;
        sp.q = q;
        const auto v = eval_psi(sp);
        const S lhs = rank1_f(delta, q) * v.value;
        const S rhs = poch_inf_multi({Q, S(Q / (sigma * rho)), S(Q / (sigma * gamma)), S(Q / (rho * gamma))}, q)
                      * rpoch_inf_multi({S(Q / sigma), S(Q / rho), S(Q / gamma), x}, q);
        out.terms_used = v.terms_used;
        out.terminated = v.terminated;
        out.aux["argument"] = to_cplx(x);
        judge(out, to_cplx(lhs), to_cplx(rhs));
    });
}

#define QIDENT_RANK1(S)                                                                                               \
    template IdentityReport verify_jackson_8phi7<S>(const S&, const S&, const S&, const S&, long, const S&, double);  \
    template IdentityReport verify_bailey_10phi9<S>(const S&, const S&, const S&, const S&, const S&, const S&, long, \
                                                    const S&, double);                                                \
    template IdentityReport verify_bailey_6psi6<S>(const S&, const QParam<S>&, const QParam<S>&, const QParam<S>&,    \
                                                   const QParam<S>&, const S&, double);                               \
    template IdentityReport verify_ramanujan_1psi1<S>(const QParam<S>&, const QParam<S>&, const S&, const S&, double); \
    template IdentityReport verify_c1_macdonald<S>(const S&, double);                                                 \
    template IdentityReport verify_flipped_summand<S>(long, const Rank1Params<S>&, double);                           \
    template IdentityReport verify_bilateral_finite<S>(const Rank1Params<S>&, double);                                \
    template IdentityReport verify_3psi3<S>(int, const S&, const S&, const S&, const S&, double);                     \
    template IdentityReport verify_summand_invariance<S>(const Rank1Params<S>&, long, int, double);                   \
    template S jackson_summand<S>(long, const Rank1Params<S>&);                                                       \
    template S flipped_summand<S>(const S&, const Rank1Params<S>&);

QIDENT_RANK1(cplx)
QIDENT_RANK1(cplx_hp)
template cplx_reg jackson_summand<cplx_reg>(long, const Rank1Params<cplx_reg>&);
template cplx_reg flipped_summand<cplx_reg>(const cplx_reg&, const Rank1Params<cplx_reg>&);

} // namespace qident
