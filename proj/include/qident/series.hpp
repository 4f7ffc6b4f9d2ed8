#pragma once

// rphis (unilateral), rpsis (bilateral) and terminating elliptic omega
// series. Terms are generated by their ratio recurrences; parameters that
// are exact powers of q carry an exponent tag so that termination is decided
// structurally instead of by float matching.

#include "qident/qcore.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace qident {

template <class S>
struct QParam {
    S value;
    std::optional<long> qpow; // value == q^qpow exactly

    QParam() = default;
    QParam(const S& v) : value(v) {}
    static QParam power(long m, const S& q) { return QParam{ipow(q, m), m}; }

    // 1 - value * q^k, exactly zero when the tag says so.
    S one_minus(const S& qk, long k) const
    {
        if (qpow && *qpow + k == 0) return S(0);
        return S(1) - value * qk;
    }

private:
    QParam(const S& v, long m) : value(v), qpow(m) {}
};

enum class SeriesKind { Unilateral, Bilateral, EllipticOmega };

template <class S>
struct SeriesSpec {
    std::vector<QParam<S>> numerator;
    std::vector<QParam<S>> denominator; // (q)_k is implicit for unilateral series
    S argument{};
    S q{};
    S p{};
    SeriesKind kind = SeriesKind::Unilateral;
};

template <class S>
struct SeriesValue {
    S value{};
    long terms_used = 0;
    bool terminated = false; // cut structurally (on at least one side, for bilateral series)
    double magnitude = 0;    // sum of |term|; magnitude / |value| measures cancellation
    std::pair<long, long> window{0, 0};
};

namespace detail {

// Largest k with a nonzero term, from numerator tags q^{-m}.
template <class S>
std::optional<long> upper_termination(const std::vector<QParam<S>>& num)
{
    std::optional<long> hi;
    for (const auto& a : num)
        if (a.qpow && *a.qpow <= 0) hi = hi ? std::min(*hi, -*a.qpow) : -*a.qpow;
    return hi;
}

// Smallest k with a nonzero bilateral term, from denominator tags q^m, m >= 1.
template <class S>
std::optional<long> lower_termination(const std::vector<QParam<S>>& den)
{
    std::optional<long> lo;
    for (const auto& b : den)
        if (b.qpow && *b.qpow >= 1) lo = lo ? std::max(*lo, 1 - *b.qpow) : 1 - *b.qpow;
    return lo;
}

template <class S>
bool negligible(const S& term, const S& sum, double tol)
{
    return modulus(term) <= real_t<S>(tol) * modulus(sum);
}

} // namespace detail

// sum_k (a)_k / (q, b)_k x^k ((-1)^k q^{k(k-1)/2})^{1+s-r}
template <class S>
SeriesValue<S> eval_phi(const SeriesSpec<S>& spec, const TruncationPolicy& pol = TruncationPolicy::for_scalar<S>())
{
    if (spec.kind != SeriesKind::Unilateral) throw DomainError("eval_phi: series is not unilateral");
    if (!(modulus(spec.q) < real_t<S>(1))) throw DomainError("eval_phi requires |q| < 1");
    const long r = static_cast<long>(spec.numerator.size());
    const long s = static_cast<long>(spec.denominator.size());
    const long e = 1 + s - r;
    const auto hi = detail::upper_termination(spec.numerator);
    if (!hi && r == s + 1 && !(modulus(spec.argument) < real_t<S>(1)))
        throw DomainError("eval_phi: non-terminating r = s+1 series needs |x| < 1");

    SeriesValue<S> out;
    S term(1), sum(1), qk(1);
    out.terms_used = 1;
    out.magnitude = 1;
    int quiet = 0;
    for (long k = 0;; ++k) {
        if (hi && k >= *hi) {
            out.terminated = true;
            break;
        }
        if (k + 1 > pol.max_terms) throw NoConvergence("eval_phi: max_terms reached");
        S num(1), den = S(1) - qk * spec.q;
        bool zero = false;
        for (const auto& a : spec.numerator) {
            S f = a.one_minus(qk, k);
            if (below(f, pol.zero_tol)) zero = true;
            num *= f;
        }
        for (const auto& b : spec.denominator) den *= b.one_minus(qk, k);
        if (zero) {
            out.terminated = true;
            break;
        }
        if (below(den, pol.zero_tol)) throw DivisionByVanishingFactor("eval_phi: vanishing denominator at k=" + std::to_string(k + 1));
        term *= num / den * spec.argument * ipow(S(-1) * qk, e);
        sum += term;
        out.magnitude += mag(term);
        ++out.terms_used;
        qk *= spec.q;
        if (term == S(0) || detail::negligible(term, sum, pol.series_tol)) {
            if (++quiet >= 3) break;
        } else {
            quiet = 0;
        }
    }
    out.value = sum;
    out.window = {0, out.terms_used - 1};
    return out;
}

// sum_{k in Z} (a)_k / (b)_k (-1)^{(s-r)k} q^{(s-r)k(k-1)/2} x^k over growing
// symmetric windows, or over an explicit window when one is given.
template <class S>
SeriesValue<S> eval_psi(const SeriesSpec<S>& spec, const TruncationPolicy& pol = TruncationPolicy::for_scalar<S>(),
                        std::optional<std::pair<long, long>> window = std::nullopt)
{
    if (spec.kind != SeriesKind::Bilateral) throw DomainError("eval_psi: series is not bilateral");
    if (!(modulus(spec.q) < real_t<S>(1))) throw DomainError("eval_psi requires |q| < 1");
    const long e = static_cast<long>(spec.denominator.size()) - static_cast<long>(spec.numerator.size());
    const auto hi = detail::upper_termination(spec.numerator);
    const auto lo = detail::lower_termination(spec.denominator);

    // Walks k = 0, 1, 2, ... (up) or k = 0, -1, -2, ... (down) by term ratios.
    struct Walker {
        const SeriesSpec<S>& spec;
        const TruncationPolicy& pol;
        long e;
        bool up;
        long k = 0;
        S term = S(1);
        S qk = S(1); // q^k for up, q^{k-1} for down once started
        bool dead = false;

        S next()
        {
            const S& q = spec.q;
            if (dead) {
                k += up ? 1 : -1;
                return S(0);
            }
            if (up) {
                // t_{k+1}/t_k = prod(1 - a q^k) / prod(1 - b q^k) * x * (-q^k)^e
                S num(1), den(1);
                bool zero = false;
                for (const auto& a : spec.numerator) {
                    S f = a.one_minus(qk, k);
                    if (below(f, pol.zero_tol)) zero = true;
                    num *= f;
                }
                for (const auto& b : spec.denominator) den *= b.one_minus(qk, k);
                if (zero) {
                    dead = true;
                    ++k;
                    term = S(0);
                    return term;
                }
                if (below(den, pol.zero_tol))
                    throw DivisionByVanishingFactor("eval_psi: vanishing denominator at k=" + std::to_string(k + 1));
                term *= num / den * spec.argument * ipow(S(-1) * qk, e);
                qk *= q;
                ++k;
                return term;
            }
            // t_{k-1}/t_k = prod(1 - b q^{k-1}) / prod(1 - a q^{k-1}) / (x (-q^{k-1})^e)
            S qm = qk / q;
            S num(1), den(1);
            bool zero = false;
            // Once |q^{k-1}| > 1 each factor is rescaled, 1 - c y -> 1/y - c, to keep the
            // products in range; the y^e this removes cancels against (-y)^e up to sign.
            const bool big = modulus(qm) > real_t<S>(1);
            const S iy = S(1) / qm;
            auto factor = [&](const QParam<S>& c) {
                if (!big) return c.one_minus(qm, k - 1);
                if (c.qpow && *c.qpow + k - 1 == 0) return S(0);
                return S(iy - c.value);
            };
            for (const auto& b : spec.denominator) {
                S f = factor(b);
                if (below(big ? S(f * qm) : f, pol.zero_tol)) zero = true;
                num *= f;
            }
            for (const auto& a : spec.numerator) den *= factor(a);
            if (big) {
                if (zero) {
                    dead = true;
                    --k;
                    term = S(0);
                    return term;
                }
                if (below(S(den * ipow(qm, static_cast<long>(spec.numerator.size()))), pol.zero_tol))
                    throw DivisionByVanishingFactor("eval_psi: vanishing numerator pole at k=" + std::to_string(k - 1));
                term *= num / den / (spec.argument * S((e % 2 == 0) ? 1 : -1));
                qk = qm;
                --k;
                return term;
            }
            if (zero) {
                dead = true;
                --k;
                term = S(0);
                return term;
            }
            if (below(den, pol.zero_tol))
                throw DivisionByVanishingFactor("eval_psi: vanishing numerator pole at k=" + std::to_string(k - 1));
            term *= num / den / (spec.argument * ipow(S(-1) * qm, e));
            qk = qm;
            --k;
            return term;
        }
    };

    Walker upw{spec, pol, e, true};
    Walker dnw{spec, pol, e, false};
    SeriesValue<S> out;
    S sum(1);
    out.terms_used = 1;

    if (window) {
        auto [wlo, whi] = *window;
        if (wlo > whi) throw EmptyWindow("eval_psi: empty explicit window");
        sum = (wlo <= 0 && 0 <= whi) ? S(1) : S(0);
        out.terms_used = (wlo <= 0 && 0 <= whi) ? 1 : 0;
        out.magnitude = out.terms_used;
        while (upw.k < whi) {
            S t = upw.next();
            if (upw.k >= wlo) sum += t, ++out.terms_used, out.magnitude += mag(t);
        }
        while (dnw.k > wlo) {
            S t = dnw.next();
            if (dnw.k <= whi) sum += t, ++out.terms_used, out.magnitude += mag(t);
        }
        out.value = sum;
        out.terminated = true;
        out.window = {wlo, whi};
        return out;
    }

    out.magnitude = 1;
    int quiet = 0;
    long M = 0;
    for (;;) {
        const long target = M + pol.window_step;
        if (target > pol.max_terms) throw NoConvergence("eval_psi: window exceeded max_terms");
        real_t<S> mag_up(0), mag_dn(0);
        while (upw.k < target && !(hi && upw.k >= *hi)) {
            S t = upw.next();
            sum += t;
            ++out.terms_used;
            mag_up += modulus(t);
        }
        while (dnw.k > -target && !(lo && dnw.k <= *lo)) {
            S t = dnw.next();
            sum += t;
            ++out.terms_used;
            mag_dn += modulus(t);
        }
        M = target;
        out.magnitude += static_cast<double>(mag_up + mag_dn);
        if (!(modulus(sum) == modulus(sum))) throw NoConvergence("eval_psi: partial sum is not finite");
        const bool up_done = (hi && upw.k >= *hi) || upw.dead;
        const bool dn_done = (lo && dnw.k <= *lo) || dnw.dead;
        if (up_done && dn_done) {
            out.terminated = true;
            break;
        }
        const real_t<S> scale = real_t<S>(pol.series_tol) * modulus(sum);
        if ((up_done || mag_up <= scale) && (dn_done || mag_dn <= scale)) {
            if (++quiet >= 2) break;
        } else {
            quiet = 0;
        }
    }
    // a bilateral series counts as terminated once either side was cut structurally
    out.terminated = out.terminated || (hi && upw.k >= *hi) || upw.dead || (lo && dnw.k <= *lo) || dnw.dead;
    out.value = sum;
    out.window = {dnw.k, upw.k};
    return out;
}

// Terminating balanced very-well-poised elliptic series
//   sum_k theta(a1 q^{2k})/theta(a1) (a1, a4..a_{r+1};q,p)_k q^k / (q, a1 q/a4, ..;q,p)_k
// with (a4 ... a_{r+1})^2 = a1^{r-3} q^{r-5}.
template <class S>
SeriesValue<S> eval_omega(const S& a1, const std::vector<QParam<S>>& rest, const S& q, const S& p,
                          const TruncationPolicy& pol = TruncationPolicy::for_scalar<S>())
{
    const long r = static_cast<long>(rest.size()) + 2;
    S prod(1);
    for (const auto& a : rest) prod *= a.value;
    const S lhs = prod * prod;
    const S rhs = ipow(a1, r - 3) * ipow(q, r - 5);
    if (!(modulus(lhs - rhs) <= real_t<S>(1e-10) * std::max(modulus(lhs), modulus(rhs))))
        throw DomainError("eval_omega: balancing condition violated");
    const auto hi = detail::upper_termination(rest);
    if (!hi) throw NotTerminating("eval_omega: no numerator parameter is q^{-n}");

    SeriesValue<S> out;
    const S th0 = theta(a1, p, pol);
    if (below(th0, pol.zero_tol)) throw DivisionByVanishingFactor("eval_omega: theta(a1) vanishes");
    S sum(0), ratio(1), qk(1);
    for (long k = 0; k <= *hi; ++k) {
        if (k > 0) {
            // (a1, a_j; q,p)_k / (q, a1 q / a_j; q,p)_k built factor by factor
            const S qk1 = qk / q; // q^{k-1}
            S num = theta(a1 * qk1, p, pol), den = theta(qk, p, pol);
            for (const auto& a : rest) {
                num *= (a.qpow && *a.qpow + k - 1 == 0) ? S(0) : theta(a.value * qk1, p, pol);
                den *= theta(a1 * q / a.value * qk1, p, pol);
            }
            if (below(den, pol.zero_tol)) throw DivisionByVanishingFactor("eval_omega: vanishing denominator");
            ratio *= num / den * q;
        }
        sum += theta(a1 * qk * qk, p, pol) / th0 * ratio;
        ++out.terms_used;
        qk *= q;
    }
    out.value = sum;
    out.terminated = true;
    out.window = {0, *hi};
    return out;
}

} // namespace qident
