#pragma once

// Partition Pochhammer symbols and the skew W-functions: the H-factor, the
// single-variable skew function, the branching recursion over several
// variables, and the closed form at the principal specialization t = q.
//
// Only finite products appear here, so |q| > 1 (needed for the flip
// identity) is fine.

#include "qident/partition.hpp"
#include "qident/qcore.hpp"

#include <map>
#include <tuple>
#include <vector>

namespace qident {

template <class S>
struct WParams {
    S q, p, t, a, b;
    TruncationPolicy pol = TruncationPolicy::for_scalar<S>();

    WParams with_ab(const S& a2, const S& b2) const { return WParams{q, p, t, a2, b2, pol}; }
};

// (a;q,p,t)_lambda = prod_i (a t^{1-i};q,p)_{lambda_i}
template <class S>
S poch_partition(const S& a, const WParams<S>& w, const Partition& l)
{
    S r(1), c = a;
    for (std::size_t i = 0; i < l.length(); ++i, c /= w.t)
        r *= epoch(c, w.q, w.p, l[i], w.pol);
    return r;
}

// 1 / (a;q,p,t)_lambda
template <class S>
S rpoch_partition(const S& a, const WParams<S>& w, const Partition& l)
{
    S r(1), c = a;
    for (std::size_t i = 0; i < l.length(); ++i, c /= w.t)
        r *= repoch(c, w.q, w.p, l[i], w.pol);
    return r;
}

template <class S>
S poch_partition_multi(std::initializer_list<S> as, const WParams<S>& w, const Partition& l)
{
    S r(1);
    for (const S& a : as) r *= poch_partition(a, w, l);
    return r;
}

// Same products over an arbitrary integer vector (negative lengths allowed).
template <class S>
S poch_vector(const S& a, const WParams<S>& w, const IntVector& v)
{
    S r(1), c = a;
    for (std::size_t i = 0; i < v.size(); ++i, c /= w.t)
        r *= epoch(c, w.q, w.p, v[i], w.pol);
    return r;
}

template <class S>
S rpoch_vector(const S& a, const WParams<S>& w, const IntVector& v)
{
    S r(1), c = a;
    for (std::size_t i = 0; i < v.size(); ++i, c /= w.t)
        r *= repoch(c, w.q, w.p, v[i], w.pol);
    return r;
}

// n is the rank (number of parts allowed); it defaults to the length of
// lambda. The j = len(lambda)+1 column contributes when n is larger, so the
// multivariable recursion passes its own rank down.
template <class S>
S hfactor(const Partition& lam, const Partition& mu, const WParams<S>& w, long n = 0)
{
    n = std::max<long>(n, static_cast<long>(std::max(lam.length(), mu.length())));
    auto L = [&](long i) { return lam[static_cast<std::size_t>(i - 1)]; };
    auto M = [&](long i) { return mu[static_cast<std::size_t>(i - 1)]; };
    auto E = [&](const S& x, long m) { return epoch(x, w.q, w.p, m, w.pol); };
    auto R = [&](const S& x, long m) { return repoch(x, w.q, w.p, m, w.pol); };
    auto qt = [&](long i, long j) { return ipow(w.q, i) * ipow(w.t, j); };
    const S& b = w.b;

    S r(1);
    for (long j = 2; j <= n; ++j) {
        const long m = M(j - 1) - L(j);
        if (m == 0) continue;
        for (long i = 1; i < j; ++i) {
            r *= E(qt(M(i) - M(j - 1), j - i), m) * E(qt(L(i) + L(j), 3 - j - i) * b, m)
                 * R(qt(M(i) - M(j - 1) + 1, j - i - 1), m) * R(qt(L(i) + L(j) + 1, 2 - j - i) * b, m);
            r *= E(qt(L(i) - M(j - 1) + 1, j - i - 1), m) * R(qt(L(i) - M(j - 1), j - i), m);
        }
    }
    for (long j = 3; j <= n + 1; ++j) {
        const long m = M(j - 1) - L(j);
        if (m == 0) continue;
        for (long i = 1; i < j - 1; ++i)
            r *= E(qt(M(i) + L(j) + 1, 1 - j - i) * b, m) * R(qt(M(i) + L(j), 2 - j - i) * b, m);
    }
    return r;
}

// W_{lambda/mu}(x; q,p,t,a,b); zero unless lambda/mu is a horizontal strip.
template <class S>
S w_skew_single(const S& x, const Partition& lam, const Partition& mu, const WParams<S>& w, long n = 0)
{
    if (!is_horizontal_strip(lam, mu)) return S(0);
    if (x == S(0)) throw DomainError("w_skew_single: x = 0");
    n = std::max<long>({n, static_cast<long>(lam.length()), 1});
    const S &q = w.q, &p = w.p, &t = w.t, &a = w.a, &b = w.b;
    auto L = [&](long i) { return lam[static_cast<std::size_t>(i - 1)]; };
    auto M = [&](long i) { return mu[static_cast<std::size_t>(i - 1)]; };

    S r = hfactor(lam, mu, w, n);
    if (r == S(0)) return r;

    // (c)_lambda / (c)_mu as prod_i (c t^{1-i} q^{mu_i})_{lambda_i - mu_i}
    for (const S& c : {S(1) / x, a * x}) {
        S ct = c;
        for (long i = 1; i <= n; ++i, ct /= t)
            r *= epoch(ct * ipow(q, M(i)), q, p, L(i) - M(i), w.pol);
    }
    r *= poch_partition(q * b * x / t, w, mu) * poch_partition(q * b / (a * x * t), w, mu);
    r *= rpoch_partition(q * b * x, w, lam) * rpoch_partition(q * b / (a * x), w, lam);

    for (long i = 1; i <= n; ++i) {
        const S bt = b * ipow(t, 1 - 2 * i);
        if (M(i) != 0) {
            const S den = theta(bt, p, w.pol);
            if (below(den, w.pol.zero_tol)) throw DivisionByVanishingFactor("w_skew_single: theta(b t^{1-2i}) vanishes");
            r *= theta(bt * ipow(q, 2 * M(i)), p, w.pol) / den;
        }
        const long m = M(i) + L(i + 1);
        r *= epoch(bt, q, p, m, w.pol) * repoch(b * q * ipow(t, -2 * i), q, p, m, w.pol);
        r *= ipow(t, i * (M(i) - L(i + 1)));
    }
    return r;
}

// W_{lambda/mu}(y, z_1, ..., z_l) by the branching recursion
//   sum_{nu} W_{lambda/nu}(y t^{-l}; a t^{2l}, b t^l) W_{nu/mu}(z_1..z_l; a, b)
// over nu with lambda/nu a horizontal strip, memoized per call. The rank is
// the number of variables.
template <class S>
S w_multi(const std::vector<S>& vars, const Partition& lam, const Partition& mu, const WParams<S>& w)
{
    if (vars.empty()) throw DomainError("w_multi: no variables");
    const long n = static_cast<long>(vars.size());
    std::map<std::tuple<std::size_t, Partition, Partition>, S> memo;

    auto rec = [&](auto&& self, std::size_t k, const Partition& l, const Partition& m) -> S {
        if (!contains(l, m)) return S(0);
        if (k + 1 == vars.size()) return w_skew_single(vars[k], l, m, w, n);
        auto key = std::make_tuple(k, l, m);
        if (auto it = memo.find(key); it != memo.end()) return it->second;
        const long rest = static_cast<long>(vars.size() - k - 1);
        const WParams<S> shifted = w.with_ab(w.a * ipow(w.t, 2 * rest), w.b * ipow(w.t, rest));
        const S y = vars[k] * ipow(w.t, -rest);
        S sum(0);
        for (const Partition& nu : horizontal_strip_predecessors(l)) {
            if (!contains(nu, m)) continue;
            S head = w_skew_single(y, l, nu, shifted, n);
            if (head == S(0)) continue;
            sum += head * self(self, k + 1, nu, m);
        }
        memo.emplace(std::move(key), sum);
        return sum;
    };
    return rec(rec, 0, lam, mu);
}

// Closed form of W_mu(q^{N + delta(n)}; q, q, s q^d, q^{d+n-1}) at p = 0
// (d = 0 or 1): Pochhammer ratio times the double product.
template <class S>
S w_degree(const Partition& mu, long N, long n, const S& s, int d, const S& q)
{
    if (static_cast<long>(mu.length()) > n) throw DomainError("w_degree: mu has more than n parts");
    if (mu[0] > N) return S(0);
    S r(1);
    const TruncationPolicy pol = TruncationPolicy::for_scalar<S>();
    for (long i = 1; i <= n; ++i) {
        const long m = mu[static_cast<std::size_t>(i - 1)];
        if (m == 0) continue;
        const S shift = ipow(q, 1 - i);
        r *= poch_qpow(-N + 1 - i, q, m);
        r *= poch_int(s * ipow(q, d + N + n - 1) * shift, q, m, pol);
        r *= rpoch_qpow(N + d + 2 * n - 1 + 1 - i, q, m);
        r *= rpoch_int(ipow(q, -N + n) / s * shift, q, m, pol);
    }
    for (long i = 1; i <= n; ++i)
        for (long j = i + 1; j <= n; ++j) {
            const long dm = mu[static_cast<std::size_t>(i - 1)] - mu[static_cast<std::size_t>(j - 1)];
            const long em = mu[static_cast<std::size_t>(i - 1)] + mu[static_cast<std::size_t>(j - 1)];
            r *= poch_qpow(j - i + 1, q, dm) * rpoch_qpow(j - i, q, dm);
            r *= poch_qpow(d + 2 * n - i - j + 1, q, em) * rpoch_qpow(d + 2 * n - i - j, q, em);
        }
    return r;
}

} // namespace qident
