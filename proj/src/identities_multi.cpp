#include "common.hpp"
#include "qident/regularize.hpp"
#include "qident/wfunc.hpp"

#include <algorithm>
#include <cmath>

namespace qident {

using namespace detail;

namespace {

// q^{lambda_i} t^{n-i}, i = 1..n
template <class S>
std::vector<S> principal_vars(const Partition& lam, long n, const S& q, const S& t)
{
    std::vector<S> v;
    for (long i = 1; i <= n; ++i) v.push_back(ipow(q, lam[static_cast<std::size_t>(i - 1)]) * ipow(t, n - i));
    return v;
}

template <class S>
void put_multi(ParamMap& m, const MultiParams<S>& p)
{
    put(m, "n", p.n), put(m, "lambda", p.lambda);
    put(m, "x", p.x), put(m, "s", p.s), put(m, "a", p.a), put(m, "b", p.b);
    put(m, "t", p.t), put(m, "q", p.q), put(m, "p", p.p);
}

void check_rank(long n, const Partition& lam, const char* who)
{
    if (n < 1) throw DomainError(std::string(who) + ": n must be >= 1");
    if (static_cast<long>(lam.length()) > n) throw DomainError(std::string(who) + ": lambda has more than n parts");
}

} // namespace

// ---------------------------------------------------- multiple Jackson --

template <class S>
S multiple_jackson_rhs(const MultiParams<S>& m, const std::vector<S>& z)
{
    const long n = m.n;
    const Partition& lam = m.lambda;
    check_rank(n, lam, "multijackson");
    if (static_cast<long>(z.size()) != n) throw DomainError("multijackson: z must have n entries");
    const S &q = m.q, &p = m.p, &t = m.t, &a = m.a, &b = m.b, &s = m.s;
    const WParams<S> w{q, p, t, a, b};
    auto E = [&](const S& x, long k) { return epoch(x, q, p, k, w.pol); };
    auto R = [&](const S& x, long k) { return repoch(x, q, p, k, w.pol); };
    const S bs = b / s;
    const S tn = ipow(t, n);

    S pre = poch_partition(s, w, lam) * poch_partition(S(a / s / (tn * t)), w, lam)
            * rpoch_partition(S(q * b / (s * t)), w, lam) * rpoch_partition(S(q * b * tn * s / a), w, lam);
    for (long i = 1; i <= n; ++i)
        for (long j = i + 1; j <= n; ++j) {
            const long d = lam[i - 1] - lam[j - 1], e = lam[i - 1] + lam[j - 1];
            pre *= E(ipow(t, j - i + 1), d) * E(S(q * b * ipow(t, 1 - i - j)), e) * R(ipow(t, j - i), d)
                   * R(S(q * b * ipow(t, -i - j)), e);
        }

    const auto vars = principal_vars(lam, n, q, t);
    std::vector<S> zs;
    for (const S& zi : z) zs.push_back(zi * s);
    const WParams<S> w1{q, p, t, S(b * ipow(t, 1 - 2 * n)), S(bs / tn)};
    const WParams<S> w2{q, p, t, S(a / (s * s) / (tn * tn)), S(bs / tn)};

    S sum(0);
    for (const Partition& mu : subpartitions(lam)) {
        S term = poch_partition(S(bs / tn), w, mu) * poch_partition(S(q * b * tn / a), w, mu)
                 * rpoch_partition(S(q * tn / t), w, mu) * rpoch_partition(S(a / s / (tn * t)), w, mu);
        for (long i = 1; i <= n; ++i) {
            const long mi = mu[i - 1];
            if (mi == 0) continue;
            const S base = bs * ipow(t, 1 - 2 * i);
            const S den = theta(base, p, w.pol);
            if (below(den, w.pol.zero_tol)) throw DivisionByVanishingFactor("multijackson: theta factor vanishes");
            term *= theta(S(base * ipow(q, 2 * mi)), p, w.pol) / den * ipow(S(q * ipow(t, 2 * i - 2)), mi);
        }
        for (long i = 1; i <= n; ++i)
            for (long j = i + 1; j <= n; ++j) {
                const long d = mu[i - 1] - mu[j - 1], e = mu[i - 1] + mu[j - 1];
                term *= E(ipow(t, j - i), d) * E(S(q * ipow(t, j - i)), d) * R(S(q * ipow(t, j - i - 1)), d)
                        * R(ipow(t, j - i + 1), d);
                term *= E(S(bs * q * ipow(t, -i - j)), e) * E(S(bs * ipow(t, 2 - i - j)), e)
                        * R(S(bs * ipow(t, 1 - i - j)), e) * R(S(q * bs * ipow(t, 1 - i - j)), e);
            }
        if (term == S(0)) continue;
        term *= w_multi(vars, mu, Partition{}, w1);
        if (term == S(0)) continue;
        term *= w_multi(zs, mu, Partition{}, w2);
        sum += term;
    }
    return pre * sum;
}

template <class S>
IdentityReport verify_multiple_jackson(const MultiParams<S>& m, const std::vector<S>& z, double tol)
{
    IdentityReport rep = start("multijackson", tol);
    put_multi(rep.params, m);
    put(rep.params, "z", z);
    rep.params.erase("x");
    return guarded(rep, [&](IdentityReport& out) {
        const S rhs = multiple_jackson_rhs(m, z);
        const long n = m.n;
        const WParams<S> w{m.q, m.p, m.t, S(m.a * ipow(m.t, -2 * n)), S(m.b * ipow(m.t, -n))};
        const S lhs = w_multi(z, m.lambda, Partition{}, w);
        out.terms_used = static_cast<long>(subpartitions(m.lambda).size());
        out.terminated = true;
        judge(out, to_cplx(lhs), to_cplx(rhs));
    });
}

template <class S>
S simplified_jackson_rhs(const MultiParams<S>& m)
{
    const long n = m.n;
    const Partition& lam = m.lambda;
    check_rank(n, lam, "simplifiedjackson");
    const S &q = m.q, &p = m.p, &t = m.t, &a = m.a, &b = m.b, &s = m.s, &x = m.x;
    const WParams<S> w{q, p, t, a, b};
    auto E = [&](const S& y, long k) { return epoch(y, q, p, k, w.pol); };
    auto R = [&](const S& y, long k) { return repoch(y, q, p, k, w.pol); };

    const S pre = poch_partition(s, w, lam) * poch_partition(S(a * s), w, lam) * rpoch_partition(S(q * b), w, lam)
                  * rpoch_partition(S(q * b / a), w, lam);
    const auto vars = principal_vars(lam, n, q, t);
    const WParams<S> wv{q, p, t, S(b * s * ipow(t, 2 - 2 * n)), S(b * ipow(t, 1 - n))};

    S sum(0);
    for (const Partition& mu : subpartitions(lam)) {
        S term = ipow(q, weight(mu)) * ipow(t, 2 * nstat(mu));
        term *= poch_partition(S(b * ipow(t, 1 - n)), w, mu) * poch_partition(S(q * b / (a * s)), w, mu)
                * rpoch_partition(S(q * ipow(t, n - 1)), w, mu) * rpoch_partition(S(a * s), w, mu);
        for (long i = 1; i <= n; ++i) {
            const long mi = mu[i - 1];
            if (mi == 0) continue;
            const S base = b * ipow(t, 2 - 2 * i);
            const S den = theta(base, p, w.pol);
            if (below(den, w.pol.zero_tol)) throw DivisionByVanishingFactor("simplifiedjackson: theta factor vanishes");
            term *= theta(S(base * ipow(q, 2 * mi)), p, w.pol) / den;
        }
        for (long i = 1; i <= n; ++i)
            for (long j = i + 1; j <= n; ++j) {
                const long d = mu[i - 1] - mu[j - 1], e = mu[i - 1] + mu[j - 1];
                term *= E(S(q * ipow(t, j - i)), d) * R(S(q * ipow(t, j - i - 1)), d);
                term *= E(S(b * ipow(t, 3 - i - j)), e) * R(S(b * ipow(t, 2 - i - j)), e);
            }
        term *= poch_partition(S(S(1) / x), w, mu) * poch_partition(S(a * x), w, mu)
                * rpoch_partition(S(q * b * x), w, mu) * rpoch_partition(S(q * b / (a * x)), w, mu);
        if (term == S(0)) continue;
        term *= w_multi(vars, mu, Partition{}, wv);
        sum += term;
    }
    return pre * sum;
}

template <class S>
IdentityReport verify_simplified_jackson(const MultiParams<S>& m, double tol)
{
    IdentityReport rep = start("simplifiedjackson", tol);
    put_multi(rep.params, m);
    return guarded(rep, [&](IdentityReport& out) {
        const S rhs = simplified_jackson_rhs(m);
        const WParams<S> w{m.q, m.p, m.t, m.a, m.b};
        const S lhs = poch_partition(S(m.s / m.x), w, m.lambda) * poch_partition(S(m.a * m.s * m.x), w, m.lambda)
                      * rpoch_partition(S(m.q * m.b * m.x), w, m.lambda)
                      * rpoch_partition(S(m.q * m.b / (m.a * m.x)), w, m.lambda);
        out.terms_used = static_cast<long>(subpartitions(m.lambda).size());
        out.terminated = true;
        judge(out, to_cplx(lhs), to_cplx(rhs));
    });
}

// ------------------------------------------------------------- duality --

namespace {

// One side of the duality formula with the roles (lambda, a) and (nu, a2).
template <class S>
S duality_side(long n, const Partition& lam, const Partition& nu, const S& a, const S& a2, const S& b, const S& q,
               const S& p, const S& t)
{
    const S k = a2 * ipow(t, n - 1) / b;
    std::vector<S> vars;
    for (long i = 1; i <= n; ++i) vars.push_back(ipow(q, nu[i - 1]) * ipow(t, n - i) / k);
    const WParams<S> w{q, p, t, S(k * k * a), S(k * b)};
    S v = w_multi(vars, lam, Partition{}, w);
    const WParams<S> base{q, p, t, a, b};
    v *= poch_partition(S(q * b * ipow(t, n - 1)), base, lam) * poch_partition(S(q * b / a), base, lam)
         * rpoch_partition(k, base, lam) * rpoch_partition(S(k * a * ipow(t, n - 1)), base, lam);
    for (long i = 1; i <= n; ++i)
        for (long j = i + 1; j <= n; ++j) {
            const long d = lam[i - 1] - lam[j - 1], e = lam[i - 1] + lam[j - 1];
            v *= epoch(ipow(t, j - i), q, p, d, w.pol) * epoch(S(q * a2 * ipow(t, 2 * n - i - j - 1)), q, p, e, w.pol)
                 * repoch(ipow(t, j - i + 1), q, p, d, w.pol) * repoch(S(q * a2 * ipow(t, 2 * n - i - j)), q, p, e, w.pol);
        }
    return v;
}

} // namespace

template <class S>
IdentityReport verify_duality(long n, const Partition& lam, const Partition& nu, const S& a, const S& a2, const S& b,
                              const S& q, const S& p, const S& t, double tol)
{
    IdentityReport rep = start("duality", tol);
    put(rep.params, "n", n), put(rep.params, "lambda", lam), put(rep.params, "nu", nu);
    put(rep.params, "a", a), put(rep.params, "a2", a2), put(rep.params, "b", b);
    put(rep.params, "q", q), put(rep.params, "p", p), put(rep.params, "t", t);
    return guarded(rep, [&](IdentityReport& out) {
        check_rank(n, lam, "duality");
        check_rank(n, nu, "duality");
        const S lhs = duality_side(n, lam, nu, a, a2, b, q, p, t);
        const S rhs = duality_side(n, nu, lam, a2, a, b, q, p, t);
        out.terms_used = 2;
        out.terminated = true;
        judge(out, to_cplx(lhs), to_cplx(rhs));
    });
}

// ---------------------------------------------------------------- flip --

template <class S>
IdentityReport verify_flip(const Partition& lam, const std::vector<S>& xs, const S& q, const S& p, const S& t,
                           const S& a, const S& b, double tol)
{
    IdentityReport rep = start("flip", tol);
    put(rep.params, "lambda", lam), put(rep.params, "x", xs);
    put(rep.params, "q", q), put(rep.params, "p", p), put(rep.params, "t", t);
    put(rep.params, "a", a), put(rep.params, "b", b);
    return guarded(rep, [&](IdentityReport& out) {
        const long n = static_cast<long>(xs.size());
        check_rank(n, lam, "flip");
        const long w = weight(lam), nl = nstat(lam);
        std::vector<S> inv;
        for (const S& x : xs) inv.push_back(S(1) / x);
        const S one(1);
        const WParams<S> wi{one / q, p, one / t, one / a, one / b};
        const WParams<S> wd{q, p, t, a, b};
        // a^w b^-w q^-w t^{-n(l)+(n-1)w} W(1/x; 1/q,p,1/t,1/a,1/b) = (inverse prefactor) W(x; q,p,t,a,b)
        const S lhs = ipow(a, w) * ipow(b, -w) * ipow(q, -w) * ipow(t, -nl + (n - 1) * w) * w_multi(inv, lam, Partition{}, wi);
        const S rhs = ipow(a, -w) * ipow(b, w) * ipow(q, w) * ipow(t, nl - (n - 1) * w) * w_multi(xs, lam, Partition{}, wd);
        out.terms_used = 2;
        out.terminated = true;
        judge(out, to_cplx(lhs), to_cplx(rhs));
    });
}

// ---------------------------------------------------------- Weyl degree --

// The recursion at t = q is a 0/0 limit; it is approached along
// t = q(1+eps), b = q^{d+n-1}(1 + 0.37 eps) (a generic direction: moving t
// alone leaves exact 0/0 factors).
template <class S>
IdentityReport verify_weyl_degree(const Partition& mu, long N, long n, const S& s, int delta, const S& q, double tol)
{
    IdentityReport rep = start("weyldegree", tol);
    put(rep.params, "mu", mu), put(rep.params, "N", N), put(rep.params, "n", n);
    put(rep.params, "s", s), put(rep.params, "delta", static_cast<long>(delta)), put(rep.params, "q", q);
    return guarded(rep, [&](IdentityReport& out) {
        check_rank(n, mu, "weyldegree");
        if (N < 0) throw DomainError("weyldegree: N must be >= 0");
        if (delta != 0 && delta != 1) throw DomainError("weyldegree: delta must be 0 or 1");
        const S rhs = w_degree(mu, N, n, s, delta, q);
        const cplx_reg qr = to_reg(q), sr = to_reg(s);
        const cplx lhs = regularized_limit([&](const cplx_reg& e) {
            const cplx_reg t = qr * (cplx_reg(1) + e);
            const cplx_reg b = ipow(qr, delta + n - 1) * (cplx_reg(1) + cplx_reg(0.37) * e);
            std::vector<cplx_reg> vars;
            for (long i = 1; i <= n; ++i) vars.push_back(ipow(qr, N) * ipow(t, n - i));
            const WParams<cplx_reg> w{qr, cplx_reg(0), t, cplx_reg(sr * ipow(qr, delta)), b};
            return w_multi(vars, mu, Partition{}, w);
        });
        out.terms_used = 1;
        out.terminated = true;
        out.message = "regularized at t = q, p = 0";
        judge(out, lhs, to_cplx(rhs));
    });
}

// ------------------------------------------------ multilateral, finite --

std::pair<IntVector, IntVector> multilateral_window(long n, const Partition& lam, int delta)
{
    check_rank(n, lam, "multilateral_window");
    IntVector upper(n), lower(n);
    for (long i = 1; i <= n; ++i) {
        upper[i - 1] = lam[0] + i - 1;
        lower[i - 1] = std::min(-lam[i - 1] - 2 * n - 2 * i + delta, -lam[0] - 2 * n + i + 1 - delta);
    }
    return {upper, lower};
}

namespace {

long factorial(long n) { return n <= 1 ? 1 : n * factorial(n - 1); }

// Summand of the finite multilateral sum. On the dominant chamber (mu + z
// sorted, positive) it is the partition-indexed term T(nu); elsewhere it is
// T(nu) R(nu + z) / R(mu + z) with nu the dominant representative, since T R
// is invariant under signed permutations of mu + z. Half-integers are carried
// doubled: U_i = 2(mu_i + n - i) + delta.
class MultilateralSummand {
public:
    explicit MultilateralSummand(const MultiParams<cplx>& m) : m_(m)
    {
        check_rank(m.n, m.lambda, "multilateralfinite");
        if (m.delta != 0 && m.delta != 1) throw DomainError("multilateralfinite: delta must be 0 or 1");
        const long n = m.n;
        norm_ = cplx(1.0 / static_cast<double>(factorial(n)));
        for (long i = 1; i <= n; ++i) norm_ /= m.delta == 0 ? (i < n ? 1.0 + std::pow(m.q, n - i) : cplx(1))
                                                             : 1.0 - std::pow(m.q, 1 + 2 * n - 2 * i);
    }

    cplx operator()(const IntVector& mu)
    {
        const long n = m_.n;
        if (static_cast<long>(mu.size()) != n) throw DomainError("multilateral_summand: wrong dimension");
        IntVector U(n), V(n);
        for (long i = 1; i <= n; ++i) U[i - 1] = 2 * (mu[i - 1] + n - i) + m_.delta;
        for (long i = 0; i < n; ++i) V[i] = std::labs(U[i]);
        std::sort(V.begin(), V.end(), std::greater<>());
        std::vector<long> nu(n);
        for (long i = 1; i <= n; ++i) {
            const long twice = V[i - 1] - 2 * (n - i) - m_.delta;
            nu[i - 1] = twice / 2;
            if (twice < 0 || twice % 2 != 0) return cplx(0);
            if (i > 1 && nu[i - 1] > nu[i - 2]) return cplx(0);
        }
        for (long i = 1; i < n; ++i)
            if (V[i - 1] == V[i]) return cplx(0); // on a wall of the chamber
        const Partition part{std::vector<long>(nu)};
        return norm_ * dominant(part) * weight_ratio(V, U);
    }

private:
    // prod over factors of R(V)/R(U), doubled-exponent form
    cplx weight_ratio(const IntVector& V, const IntVector& U) const
    {
        const cplx q = m_.q;
        cplx r(1);
        for (std::size_t i = 0; i < V.size(); ++i) {
            if (m_.delta == 1)
                r *= (1.0 - ipow(q, V[i])) / (1.0 - ipow(q, U[i]));
            else
                r *= (1.0 + ipow(q, V[i] / 2)) / (1.0 + ipow(q, U[i] / 2));
        }
        return r;
    }

    cplx dominant(const Partition& nu)
    {
        if (auto it = cache_.find(nu); it != cache_.end()) return it->second;
        const long n = m_.n;
        const int d = m_.delta;
        const cplx &q = m_.q, &x = m_.x, &s = m_.s, &a = m_.a;
        const cplx B = ipow(q, d + 2 * n - 1);
        const WParams<cplx> w{q, cplx(0), q, a, B};
        cplx T = ipow(q, weight(nu) + 2 * nstat(nu));
        T *= poch_partition(B / (a * s), w, nu) * rpoch_partition(a * s, w, nu);
        for (long i = 1; i <= n; ++i)
            for (long j = i + 1; j <= n; ++j) {
                const long dd = nu[i - 1] - nu[j - 1], e = nu[i - 1] + nu[j - 1];
                T *= poch_qpow(j - i + 1, q, dd) * rpoch_qpow(j - i, q, dd);
                T *= poch_qpow(d + 2 * n + 1 - i - j, q, e) * rpoch_qpow(d + 2 * n - i - j, q, e);
            }
        T *= poch_partition(1.0 / x, w, nu) * poch_partition(a * x, w, nu) * rpoch_partition(B * x, w, nu)
             * rpoch_partition(B / (a * x), w, nu);
        if (T != cplx(0)) {
            const cplx_reg qr = to_reg(q), ar = to_reg(cplx(s * ipow(q, d)));
            const Partition& lam = m_.lambda;
            T *= regularized_limit([&](const cplx_reg& eps) {
                const cplx_reg t = qr * (cplx_reg(1) + eps);
                const cplx_reg b = ipow(qr, d + n - 1) * (cplx_reg(1) + cplx_reg(0.37) * eps);
                std::vector<cplx_reg> vars;
                for (long i = 1; i <= n; ++i) vars.push_back(ipow(qr, lam[i - 1]) * ipow(t, n - i));
                return w_multi(vars, nu, Partition{}, WParams<cplx_reg>{qr, cplx_reg(0), t, ar, b});
            });
        }
        cache_.emplace(nu, T);
        return T;
    }

    MultiParams<cplx> m_;
    cplx norm_;
    std::map<Partition, cplx> cache_;
};

} // namespace

cplx multilateral_summand(const MultiParams<cplx>& m, const IntVector& mu)
{
    MultilateralSummand f(m);
    return f(mu);
}

template <class S>
IdentityReport verify_multilateral_finite(const MultiParams<S>& m, double tol)
{
    IdentityReport rep = start("multilateralfinite", tol);
    put(rep.params, "n", m.n), put(rep.params, "lambda", m.lambda), put(rep.params, "delta", static_cast<long>(m.delta));
    put(rep.params, "x", m.x), put(rep.params, "s", m.s), put(rep.params, "a", m.a), put(rep.params, "q", m.q);
    return guarded(rep, [&](IdentityReport& out) {
        // The W factors are regularized in 100-digit arithmetic regardless of
        // S, so the sum itself is accumulated in double.
        const MultiParams<cplx> md{m.n,           m.lambda,      to_cplx(m.x), to_cplx(m.s), to_cplx(m.a),
                                   cplx(0),       to_cplx(m.q),  to_cplx(m.q), cplx(0),      m.delta};
        MultilateralSummand f(md);
        const auto [upper, lower] = multilateral_window(m.n, m.lambda, m.delta);
        cplx sum(0);
        long count = 0;
        for (const IntVector& mu : lattice_window(upper, lower)) {
            sum += f(mu);
            ++count;
        }

        // Vanishing outside the window, at fixed exterior points.
        std::vector<IntVector> probes;
        auto add = [&](IntVector v) {
            if (std::find(probes.begin(), probes.end(), v) == probes.end()) probes.push_back(std::move(v));
        };
        const long n = m.n;
        for (long i = 0; i < n && probes.size() < 5; ++i) {
            IntVector up = upper, dn = lower;
            up[i] += 1, dn[i] -= 1;
            add(up), add(dn);
        }
        for (long step = 1; probes.size() < 5; ++step) {
            IntVector up = upper, dn = lower;
            for (auto& v : up) v += step;
            for (auto& v : dn) v -= step;
            add(up), add(dn);
            up = upper, dn = lower;
            up[0] += step + 1, dn[0] -= step + 1;
            add(up), add(dn);
        }
        probes.resize(5);
        double worst = 0;
        for (const IntVector& mu : probes) {
            const double v = std::abs(f(mu));
            worst = std::max(worst, v);
            if (!(v < 1e-12)) {
                out.status = Status::Error;
                out.message = "nonzero summand outside the window at " + to_string(mu);
                out.aux["exterior_max"] = cplx(worst);
                return;
            }
        }
        out.aux["exterior_max"] = cplx(worst);

        const WParams<cplx> w{md.q, cplx(0), md.q, md.a, cplx(0)};
        const cplx B = ipow(md.q, md.delta + 2 * n - 1);
        const Partition& l = md.lambda;
        const cplx lhs = poch_partition(md.s / md.x, w, l) * poch_partition(md.a * md.s * md.x, w, l)
                         * rpoch_partition(md.s, w, l) * rpoch_partition(md.a * md.s, w, l) * poch_partition(B, w, l)
                         * poch_partition(B / md.a, w, l) * rpoch_partition(B * md.x, w, l)
                         * rpoch_partition(B / (md.a * md.x), w, l);
        out.terms_used = count;
        out.terminated = true;
        judge(out, lhs, sum);
    });
}

// ------------------------------------------------- multilateral 3psi3 --

namespace {

// log(1 - e^w), stable when |e^w| is huge; nullopt when the factor vanishes.
std::optional<cplx> log1m_exp(const cplx& w, double zero_tol)
{
    if (w.real() > 0) {
        const cplx f = std::exp(-w) - 1.0;
        if (std::abs(f) < zero_tol) return std::nullopt;
        return w + std::log(f);
    }
    const cplx f = 1.0 - std::exp(w);
    if (std::abs(f) < zero_tol) return std::nullopt;
    return std::log(f);
}

// log of one coordinate's factor g(m) for m in [-M, M], relative to g(0) = 1;
// nullopt marks an exact zero. Poles throw.
class CoordinateLogs {
public:
    CoordinateLogs(std::vector<cplx> num_logs, std::vector<cplx> den_logs, cplx arg_log, cplx logq, double zero_tol)
        : num_(std::move(num_logs)), den_(std::move(den_logs)), arg_(arg_log), logq_(logq), zt_(zero_tol)
    {
        up_.push_back(cplx(0));
        dn_.push_back(cplx(0));
    }

    std::optional<cplx> at(long m)
    {
        if (m >= 0) {
            while (static_cast<long>(up_.size()) <= m) extend_up();
            return up_[m];
        }
        while (static_cast<long>(dn_.size()) <= -m) extend_dn();
        return dn_[-m];
    }

private:
    // g(k+1)/g(k) = prod(1 - A q^k) / prod(1 - D q^k) * arg
    std::optional<cplx> step(long k, bool& zero, bool& pole)
    {
        cplx acc = arg_;
        zero = pole = false;
        for (const cplx& la : num_) {
            auto f = log1m_exp(la + double(k) * logq_, zt_);
            if (!f) zero = true;
            else acc += *f;
        }
        for (const cplx& ld : den_) {
            auto f = log1m_exp(ld + double(k) * logq_, zt_);
            if (!f) pole = true;
            else acc -= *f;
        }
        return acc;
    }

    void extend_up()
    {
        const long k = static_cast<long>(up_.size()) - 1;
        if (!up_.back()) return up_.push_back(std::nullopt);
        bool zero, pole;
        auto s = step(k, zero, pole);
        if (zero) return up_.push_back(std::nullopt);
        if (pole) throw DivisionByVanishingFactor("multilateral3psi3: pole at coordinate index " + std::to_string(k + 1));
        up_.push_back(*up_.back() + *s);
    }

    void extend_dn()
    {
        const long k = -static_cast<long>(dn_.size()); // target index
        if (!dn_.back()) return dn_.push_back(std::nullopt);
        bool zero, pole;
        auto s = step(k, zero, pole); // g(k+1)/g(k)
        if (pole) return dn_.push_back(std::nullopt); // denominator factor of the ratio vanishes: g(k) = 0
        if (zero) throw DivisionByVanishingFactor("multilateral3psi3: pole at coordinate index " + std::to_string(k));
        dn_.push_back(*dn_.back() - *s);
    }

    std::vector<cplx> num_, den_;
    cplx arg_, logq_;
    double zt_;
    std::vector<std::optional<cplx>> up_, dn_;
};

} // namespace

template <class S>
IdentityReport verify_multilateral_3psi3(long n, int delta, const S& x_, const S& s_, const S& a_, const S& q_, double tol)
{
    IdentityReport rep = start("multilateral3psi3", tol);
    put(rep.params, "n", n), put(rep.params, "delta", static_cast<long>(delta));
    put(rep.params, "x", x_), put(rep.params, "s", s_), put(rep.params, "a", a_), put(rep.params, "q", q_);
    return guarded(rep, [&](IdentityReport& out) {
        if (n < 1) throw DomainError("multilateral3psi3: n must be >= 1");
        if (delta != 0 && delta != 1) throw DomainError("multilateral3psi3: delta must be 0 or 1");
        const cplx x = to_cplx(x_), s = to_cplx(s_), a = to_cplx(a_), q = to_cplx(q_);
        if (!(std::abs(q) < 1)) throw DomainError("multilateral3psi3: needs |q| < 1");
        const TruncationPolicy pol;
        const cplx B = ipow(q, delta + 2 * n - 1);
        const cplx lq = std::log(q);

        // product side
        const S Bs = from_cplx<S>(B);
        auto inf_n = [&](const S& c) {
            S r(1);
            for (long i = 1; i <= n; ++i) r *= poch_inf(S(c * ipow(q_, 1 - i)), q_);
            return r;
        };
        S lhs = inf_n(S(s_ / x_)) * inf_n(S(a_ * s_ * x_)) * inf_n(Bs) * inf_n(S(Bs / a_));
        for (const S& c : {s_, S(a_ * s_), S(Bs * x_), S(Bs / (a_ * x_))}) {
            const S v = inf_n(c);
            if (below(v, 1e-300)) throw DivisionByVanishingFactor("multilateral3psi3: vanishing product");
            lhs /= v;
        }
        S fd(1); // 2^n f(delta)
        for (long i = 1; i <= (delta == 0 ? n - 1 : n); ++i)
            fd /= delta == 0 ? S(S(1) + ipow(q_, n - i)) : S(S(1) - ipow(q_, 1 + 2 * n - 2 * i));
        lhs /= fd;

        // lattice side: product of per-coordinate factors times the pairwise cross terms
        std::vector<CoordinateLogs> coord;
        for (long i = 1; i <= n; ++i) {
            const cplx sh = double(1 - i) * lq;
            coord.emplace_back(std::vector<cplx>{std::log(B / (a * s)) + sh, -std::log(x) + sh, std::log(a * x) + sh},
                               std::vector<cplx>{std::log(a * s) + sh, std::log(B * x) + sh, std::log(B / (a * x)) + sh},
                               std::log(s) + double(1 - n + 2 * (i - 1)) * lq, lq, pol.zero_tol);
        }
        // log of prod_{i<j} 1/(1-q^{j-i})^2 (1-q^{d+2n-i-j})^2
        cplx cross0(0);
        for (long i = 1; i <= n; ++i)
            for (long j = i + 1; j <= n; ++j)
                cross0 -= 2.0 * (std::log(1.0 - ipow(q, j - i)) + std::log(1.0 - ipow(q, delta + 2 * n - i - j)));

        auto term = [&](const IntVector& mu) -> cplx {
            cplx L = cross0;
            for (long i = 0; i < n; ++i) {
                auto g = coord[i].at(mu[i]);
                if (!g) return cplx(0);
                L += *g;
            }
            for (long i = 1; i <= n; ++i)
                for (long j = i + 1; j <= n; ++j) {
                    auto f1 = log1m_exp(double(j - i + mu[i - 1] - mu[j - 1]) * lq, 0.0);
                    auto f2 = log1m_exp(double(delta + 2 * n - i - j + mu[i - 1] + mu[j - 1]) * lq, 0.0);
                    if (j - i + mu[i - 1] - mu[j - 1] == 0 || delta + 2 * n - i - j + mu[i - 1] + mu[j - 1] == 0)
                        return cplx(0);
                    L += *f1 + *f2;
                }
            return std::exp(L);
        };

        // growing hypercubes [-M, M]^n; stop once two consecutive shells are negligible
        cplx sum(0);
        double total = 0; // sum of |terms|, for the cancellation estimate
        long count = 0, M = -1;
        int quiet = 0;
        const long cap = std::max<long>(pol.max_terms / 4, 16);
        for (;;) {
            const long next = M < 0 ? 0 : M + pol.window_step;
            if (next > cap) throw NoConvergence("multilateral3psi3: window exceeded the cap");
            double shell = 0;
            IntVector upper(n, next), lower(n, -next);
            for (const IntVector& mu : lattice_window(upper, lower)) {
                bool inner = M >= 0;
                for (long v : mu) inner = inner && v >= -M && v <= M;
                if (inner) continue;
                const cplx t = term(mu);
                sum += t;
                shell += std::abs(t);
                total += std::abs(t);
                ++count;
            }
            M = next;
            if (M > 0 && shell <= pol.series_tol * std::abs(sum)) {
                if (++quiet >= 2) break;
            } else {
                quiet = 0;
            }
        }
        out.terms_used = count;
        out.terminated = false;
        out.aux["window"] = cplx(static_cast<double>(M));
        out.aux["lattice_cancellation"] = cplx(total / std::max(std::abs(sum), 1e-300));
        judge(out, to_cplx(lhs), sum);
    });
}

#define QIDENT_MULTI(S)                                                                                               \
    template IdentityReport verify_multiple_jackson<S>(const MultiParams<S>&, const std::vector<S>&, double);         \
    template IdentityReport verify_simplified_jackson<S>(const MultiParams<S>&, double);                              \
    template IdentityReport verify_duality<S>(long, const Partition&, const Partition&, const S&, const S&, const S&, \
                                              const S&, const S&, const S&, double);                                  \
    template IdentityReport verify_flip<S>(const Partition&, const std::vector<S>&, const S&, const S&, const S&,     \
                                           const S&, const S&, double);                                               \
    template IdentityReport verify_weyl_degree<S>(const Partition&, long, long, const S&, int, const S&, double);     \
    template IdentityReport verify_multilateral_finite<S>(const MultiParams<S>&, double);                             \
    template IdentityReport verify_multilateral_3psi3<S>(long, int, const S&, const S&, const S&, const S&, double);  \
    template S multiple_jackson_rhs<S>(const MultiParams<S>&, const std::vector<S>&);                                 \
    template S simplified_jackson_rhs<S>(const MultiParams<S>&);

QIDENT_MULTI(cplx)
QIDENT_MULTI(cplx_hp)

} // namespace qident
