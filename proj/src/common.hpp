#pragma once

// Internal helpers shared by the identity translation units.

#include "qident/identities.hpp"
#include "qident/qcore.hpp"

#include <functional>

namespace qident::detail {

template <class S>
void put(ParamMap& m, const std::string& name, const S& v)
{
    m[name] = to_cplx(v);
}

inline void put(ParamMap& m, const std::string& name, long v) { m[name] = v; }
inline void put(ParamMap& m, const std::string& name, int v) { m[name] = static_cast<long>(v); }
inline void put(ParamMap& m, const std::string& name, const Partition& v) { m[name] = v; }

template <class S>
void put(ParamMap& m, const std::string& name, const QParam<S>& v)
{
    if (v.qpow)
        m[name] = QPow{*v.qpow};
    else
        m[name] = to_cplx(v.value);
}

template <class S>
void put(ParamMap& m, const std::string& name, const std::vector<S>& v)
{
    std::vector<cplx> out;
    for (const S& x : v) out.push_back(to_cplx(x));
    m[name] = out;
}

inline IdentityReport start(const std::string& id, double tol)
{
    IdentityReport r;
    r.case_id = id;
    r.tol = tol;
    return r;
}

// Runs the evaluation body; library errors become status=error reports.
inline IdentityReport guarded(IdentityReport rep, const std::function<void(IdentityReport&)>& body)
{
    try {
        body(rep);
    } catch (const Error& e) {
        rep.status = Status::Error;
        rep.message = e.what();
    }
    return rep;
}

// prod 1/(a_i;q)_k, signalling vanishing denominators.
template <class S>
S rpoch_multi(std::initializer_list<S> as, const S& q, long k)
{
    S r(1);
    for (const S& a : as) r *= rpoch_int(a, q, k);
    return r;
}

template <class S>
S rpoch_inf_multi(std::initializer_list<S> as, const S& q)
{
    const TruncationPolicy pol = TruncationPolicy::for_scalar<S>();
    S r(1);
    for (const S& a : as) {
        S v = poch_inf(a, q, pol);
        if (below(v, pol.zero_tol)) throw DivisionByVanishingFactor("infinite product in a denominator vanishes");
        r /= v;
    }
    return r;
}

template <class S>
cplx_reg to_reg(const S& v)
{
    return from_cplx<cplx_reg>(to_cplx(v));
}

} // namespace qident::detail
