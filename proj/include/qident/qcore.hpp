#pragma once

// q-Pochhammer symbols (integer, negative, complex order), infinite
// products, the normalized theta function and elliptic Pochhammer symbols.

#include "qident/errors.hpp"
#include "qident/scalar.hpp"

#include <algorithm>
#include <cmath>
#include <span>
#include <sstream>
#include <vector>

namespace qident {

struct TruncationPolicy {
    double product_tol = 1e-17; // stop an infinite product once |a q^i| < product_tol
    long max_factors = 10000;
    double series_tol = 1e-16;  // tail threshold relative to the partial sum
    long max_terms = 2000;
    long window_step = 8;       // bilateral window growth per expansion
    double zero_tol = 1e-14;    // |factor| below this counts as vanishing

    void validate() const
    {
        if (!(product_tol > 0) || !(series_tol > 0) || max_factors < 1 || max_terms < 1 || window_step < 1
            || !(zero_tol > 0))
            throw DomainError("invalid truncation policy");
    }

    // Defaults scaled to the working precision of S.
    template <class S>
    static TruncationPolicy for_scalar()
    {
        TruncationPolicy p;
        if constexpr (std::is_same_v<S, cplx_hp>) {
            p.product_tol = 1e-52;
            p.series_tol = 1e-50;
            p.zero_tol = 1e-40;
            p.max_terms = 4000;
            p.max_factors = 20000;
        } else if constexpr (std::is_same_v<S, cplx_reg>) {
            p.product_tol = 1e-102;
            p.series_tol = 1e-100;
            p.zero_tol = 1e-80;
            p.max_terms = 8000;
            p.max_factors = 40000;
        }
        return p;
    }
};

namespace detail {

template <class S>
[[noreturn]] inline void vanishing(const char* where, const S& a, long k)
{
    std::ostringstream os;
    os << where << ": vanishing factor (a=" << to_cplx(a) << ", k=" << k << ")";
    throw DivisionByVanishingFactor(os.str());
}

} // namespace detail

// (a;q)_k for integer k; negative k uses (a)_k = 1/(aq^k)_{-k}.
template <class S>
S poch_int(const S& a, const S& q, long k, const TruncationPolicy& pol = TruncationPolicy::for_scalar<S>())
{
    S r(1);
    if (k >= 0) {
        S aq = a;
        for (long i = 0; i < k; ++i, aq *= q)
            r *= S(1) - aq;
        return r;
    }
    S aq = a * ipow(q, k);
    for (long i = 0; i < -k; ++i, aq *= q) {
        S f = S(1) - aq;
        if (below(f, pol.zero_tol)) detail::vanishing("poch_int", a, k);
        r *= f;
    }
    return S(1) / r;
}

// 1/(a;q)_k. For k < 0 this is a plain finite product and vanishes
// structurally, which is what bilateral denominators need.
template <class S>
S rpoch_int(const S& a, const S& q, long k, const TruncationPolicy& pol = TruncationPolicy::for_scalar<S>())
{
    S r(1);
    if (k < 0) {
        S aq = a * ipow(q, k);
        for (long i = 0; i < -k; ++i, aq *= q)
            r *= S(1) - aq;
        return r;
    }
    S aq = a;
    for (long i = 0; i < k; ++i, aq *= q) {
        S f = S(1) - aq;
        if (below(f, pol.zero_tol)) detail::vanishing("rpoch_int", a, k);
        r *= f;
    }
    return S(1) / r;
}

// (q^m;q)_k with the base given as an exact power of q: factors 1 - q^0
// are exact zeros rather than rounding noise.
template <class S>
S poch_qpow(long m, const S& q, long k)
{
    if (k >= 0) {
        if (m <= 0 && -m <= k - 1) return S(0);
        S r(1), qm = ipow(q, m);
        for (long i = 0; i < k; ++i, qm *= q)
            r *= S(1) - qm;
        return r;
    }
    if (-m >= k && -m <= -1) {
        std::ostringstream os;
        os << "poch_qpow: (q^" << m << ")_" << k << " has a vanishing denominator";
        throw DivisionByVanishingFactor(os.str());
    }
    S r(1), qm = ipow(q, m + k);
    for (long i = 0; i < -k; ++i, qm *= q)
        r *= S(1) - qm;
    return S(1) / r;
}

// 1/(q^m;q)_k, exact-zero aware.
template <class S>
S rpoch_qpow(long m, const S& q, long k)
{
    if (k < 0) {
        if (-m >= k && -m <= -1) return S(0);
        S r(1), qm = ipow(q, m + k);
        for (long i = 0; i < -k; ++i, qm *= q)
            r *= S(1) - qm;
        return r;
    }
    if (m <= 0 && -m <= k - 1) {
        std::ostringstream os;
        os << "rpoch_qpow: (q^" << m << ")_" << k << " vanishes";
        throw DivisionByVanishingFactor(os.str());
    }
    return S(1) / poch_qpow(m, q, k);
}

// (a;q)_inf, truncated once |a q^i| drops below product_tol. The factor
// count is fixed up front from |a| and |q|; only factors with |a q^i| >= 1/2
// can vanish, so only those are tested.
template <class S>
S poch_inf(const S& a, const S& q, const TruncationPolicy& pol = TruncationPolicy::for_scalar<S>())
{
    const double mq = mag(q), ma = mag(a);
    if (!(mq < 1)) throw DomainError("poch_inf requires |q| < 1");
    if (ma == 0) return S(1);
    if (mq == 0) return below(S(S(1) - a), pol.zero_tol) ? S(0) : S(S(1) - a);
    const double lq = std::log(mq), la = std::log(ma);
    const double need = std::ceil((std::log(pol.product_tol) - la) / lq);
    if (need > static_cast<double>(pol.max_factors)) {
        std::ostringstream os;
        os << "poch_inf: more than " << pol.max_factors << " factors needed (a=" << to_cplx(a) << ", q=" << to_cplx(q)
           << ")";
        throw NoConvergence(os.str());
    }
    const long n = std::max(0L, static_cast<long>(need));
    const long risky = la < std::log(0.5) ? 0 : static_cast<long>(std::ceil((std::log(0.5) - la) / lq)) + 1;
    S r(1), aq = a;
    for (long i = 0; i < n; ++i) {
        S f = S(1) - aq;
        if (i < risky && below(f, pol.zero_tol)) return S(0);
        r *= f;
        aq *= q;
    }
    return r;
}

// (a;q)_alpha = (a;q)_inf / (a q^alpha;q)_inf, principal branch for q^alpha.
template <class S>
S poch_general(const S& a, const S& q, const S& alpha, const TruncationPolicy& pol = TruncationPolicy::for_scalar<S>())
{
    if (alpha == S(0)) return S(1);
    S num = poch_inf(a, q, pol);
    S den = poch_inf(a * cpow(q, alpha), q, pol);
    if (below(den, pol.zero_tol)) {
        std::ostringstream os;
        os << "poch_general: (a q^alpha)_inf vanishes (a=" << to_cplx(a) << ", alpha=" << to_cplx(alpha) << ")";
        throw DivisionByVanishingFactor(os.str());
    }
    return num / den;
}

template <class S>
S poch_multi(std::span<const S> as, const S& q, long k, const TruncationPolicy& pol = TruncationPolicy::for_scalar<S>())
{
    S r(1);
    for (const S& a : as) r *= poch_int(a, q, k, pol);
    return r;
}

template <class S>
S poch_multi(std::initializer_list<S> as, const S& q, long k,
             const TruncationPolicy& pol = TruncationPolicy::for_scalar<S>())
{
    return poch_multi(std::span<const S>(as.begin(), as.size()), q, k, pol);
}

template <class S>
S poch_inf_multi(std::initializer_list<S> as, const S& q, const TruncationPolicy& pol = TruncationPolicy::for_scalar<S>())
{
    S r(1);
    for (const S& a : as) r *= poch_inf(a, q, pol);
    return r;
}

// theta(x;p) = (x;p)_inf (p/x;p)_inf; reduces to 1 - x at p = 0.
template <class S>
S theta(const S& x, const S& p, const TruncationPolicy& pol = TruncationPolicy::for_scalar<S>())
{
    if (x == S(0)) throw DomainError("theta: x = 0");
    if (!(modulus(p) < real_t<S>(1))) throw DomainError("theta requires |p| < 1");
    if (p == S(0)) return S(1) - x;
    return poch_inf(x, p, pol) * poch_inf(p / x, p, pol);
}

// (a;q,p)_n = prod_{k<n} theta(a q^k); negative n via 1/(a q^n;q,p)_{-n}.
// Finite products only, so |q| > 1 is allowed.
template <class S>
S epoch(const S& a, const S& q, const S& p, long n, const TruncationPolicy& pol = TruncationPolicy::for_scalar<S>())
{
    if (p == S(0)) return poch_int(a, q, n, pol);
    S r(1);
    if (n >= 0) {
        S aq = a;
        for (long k = 0; k < n; ++k, aq *= q)
            r *= theta(aq, p, pol);
        return r;
    }
    S aq = a * ipow(q, n);
    for (long k = 0; k < -n; ++k, aq *= q) {
        S f = theta(aq, p, pol);
        if (below(f, pol.zero_tol)) detail::vanishing("epoch", a, n);
        r *= f;
    }
    return S(1) / r;
}

// 1/(a;q,p)_n; structural zero for n < 0.
template <class S>
S repoch(const S& a, const S& q, const S& p, long n, const TruncationPolicy& pol = TruncationPolicy::for_scalar<S>())
{
    if (p == S(0)) return rpoch_int(a, q, n, pol);
    S r(1);
    if (n < 0) {
        S aq = a * ipow(q, n);
        for (long k = 0; k < -n; ++k, aq *= q)
            r *= theta(aq, p, pol);
        return r;
    }
    S aq = a;
    for (long k = 0; k < n; ++k, aq *= q) {
        S f = theta(aq, p, pol);
        if (below(f, pol.zero_tol)) detail::vanishing("repoch", a, n);
        r *= f;
    }
    return S(1) / r;
}

// lim_{a->0} a^k (x/a)_k = (-1)^k x^k q^{k(k-1)/2}, in closed form.
template <class S>
S limit_rule(const S& x, const S& q, long k)
{
    return ipow(S(-1) * x, k) * ipow(q, k * (k - 1) / 2);
}

} // namespace qident
