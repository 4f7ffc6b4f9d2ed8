#include "qident/identities.hpp"
#include "qident/qcore.hpp"

#include <chrono>
#include <cmath>
#include <iomanip>
#include <numbers>
#include <random>
#include <sstream>

namespace qident {

namespace {

using PK = ParamKind;

std::vector<CaseInfo> build_registry()
{
    const ParamSpec q{"q", PK::Complex, "base, |q| < 1"};
    const ParamSpec p{"p", PK::Complex, "elliptic nome, |p| < 1 (0 gives the basic case)"};
    const ParamSpec t{"t", PK::Complex, "second base"};
    const ParamSpec n{"n", PK::Integer, "termination order / rank"};
    const ParamSpec delta{"delta", PK::Integer, "parity, 0 or 1"};
    const ParamSpec lambda{"lambda", PK::PartitionKind, "partition"};
    auto c = [](const char* name, const char* doc = "") { return ParamSpec{name, PK::Complex, doc}; };
    const std::vector<ParamSpec> srg{c("sigma"), c("rho"), c("gamma"), q, n};

    auto with = [](std::vector<ParamSpec> v, std::initializer_list<ParamSpec> more) {
        v.insert(v.end(), more);
        return v;
    };

    return {
        {"jackson8phi7", "Jackson's terminating very-well-poised 8phi7 summation",
         {c("a"), c("b"), c("c"), c("d"), n, q}, 1e-9},
        {"bailey10phi9", "Bailey's 10phi9 transformation (finite prefactor form)",
         {c("a"), c("b"), c("c"), c("d"), c("e"), c("f"), n, q}, 1e-9},
        {"bailey6psi6", "Bailey's very-well-poised 6psi6 summation",
         {c("a"), c("b", "may be {qpow:m}"), c("c", "may be {qpow:m}"), c("d", "may be {qpow:m}"),
          c("e", "may be {qpow:m}"), q},
         1e-8},
        {"ramanujan1psi1", "Ramanujan's 1psi1 summation", {c("a"), c("b"), c("x"), q}, 1e-8},
        {"c1macdonald", "C1 Macdonald normalization 1/(1-x^2) + 1/(1-x^-2) = 1", {c("x")}, 1e-9},
        {"flippedsummand", "Jackson summand against its infinite-product (flipped) form",
         with(srg, {c("z", "b = q^{2z}"), ParamSpec{"k", PK::Integer, "term index"}}), 1e-9},
        {"bilateralfinite", "finite bilateral sum: bilateral series, folded sum and product",
         with(srg, {delta}), 1e-9},
        {"3psi3delta0", "bilateral 3psi3 summation, delta = 0", {c("sigma"), c("rho"), c("gamma"), q}, 1e-8},
        {"3psi3delta1", "bilateral 3psi3 summation, delta = 1", {c("sigma"), c("rho"), c("gamma"), q}, 1e-8},
        {"multijackson", "multiple elliptic Jackson summation for W-functions",
         {n, lambda, ParamSpec{"z", PK::ComplexVector, "n variables"}, c("s"), c("a"), c("b"), t, q, p}, 1e-7},
        {"simplifiedjackson", "simplified multiple Jackson summation",
         {n, lambda, c("x"), c("s"), c("a"), c("b"), t, q, p}, 1e-7},
        {"duality", "duality of W-functions at principal specializations",
         {n, lambda, ParamSpec{"nu", PK::PartitionKind, "second partition"}, c("a"), c("a2"), c("b"), q, p, t}, 1e-9},
        {"flip", "inversion symmetry (q,t,a,b,x) -> reciprocals",
         {lambda, ParamSpec{"x", PK::ComplexVector, "variables"}, q, p, t, c("a"), c("b")}, 1e-9},
        {"weyldegree", "closed form of W at t = q, p = 0 (principal specialization)",
         {ParamSpec{"mu", PK::PartitionKind, "partition"}, ParamSpec{"N", PK::Integer, "exponent"}, n, c("s"), delta, q},
         1e-9},
        {"multilateralfinite", "finite multilateral sum over the integer lattice",
         {n, lambda, delta, c("x"), c("s"), c("a"), q}, 1e-7},
        {"multilateral3psi3", "multilateral analogue of the bilateral 3psi3",
         {n, delta, c("x"), c("s"), c("a"), q}, 1e-6},
        {"summandinvariance", "evenness of the flipped summand at z = delta/2",
         with(srg, {delta, ParamSpec{"k", PK::Integer, "term index"}, ParamSpec{"sign", PK::Integer, "+1 or -1"}}),
         1e-9},
    };
}

// ---- sampling --------------------------------------------------------------

class Draw {
public:
    Draw(std::uint64_t seed, const ParamMap& fixed) : g_(seed), fixed_(fixed) {}

    double uniform() { return static_cast<double>(g_() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    long integer(long lo, long hi) { return lo + static_cast<long>(uniform() * static_cast<double>(hi - lo + 1)) % (hi - lo + 1); }

    // log-uniform modulus, uniform phase
    cplx polar(double lo, double hi)
    {
        const double r = std::exp(uniform(std::log(lo), std::log(hi)));
        return std::polar(r, uniform(0, 2 * std::numbers::pi));
    }

    bool has(const std::string& name) const { return fixed_.count(name) != 0; }

    cplx c(const std::string& name, double lo, double hi)
    {
        const cplx v = polar(lo, hi);
        return take(name, v);
    }

    // Stores a complex value (or the fixed one); fixed {qpow:m} needs q drawn first.
    cplx take(const std::string& name, cplx v)
    {
        if (auto it = fixed_.find(name); it != fixed_.end()) {
            out[name] = it->second;
            if (auto* z = std::get_if<cplx>(&it->second)) return *z;
            if (auto* k = std::get_if<long>(&it->second)) return cplx(static_cast<double>(*k));
            if (auto* m = std::get_if<QPow>(&it->second)) return ipow(std::get<cplx>(out.at("q")), m->m);
            throw ConfigError("parameter '" + name + "' has the wrong kind");
        }
        out[name] = v;
        return v;
    }

    long l(const std::string& name, long lo, long hi)
    {
        const long v = integer(lo, hi);
        if (auto it = fixed_.find(name); it != fixed_.end()) {
            out[name] = it->second;
            if (auto* k = std::get_if<long>(&it->second)) return *k;
            throw ConfigError("parameter '" + name + "' must be an integer");
        }
        out[name] = v;
        return v;
    }

    // random partition with at most n parts, parts <= m
    Partition part(const std::string& name, long n, long m)
    {
        std::vector<long> v;
        for (long i = 0; i < n; ++i) v.push_back(integer(0, m));
        std::sort(v.begin(), v.end(), std::greater<>());
        while (!v.empty() && v.back() == 0) v.pop_back();
        Partition drawn{v};
        if (auto it = fixed_.find(name); it != fixed_.end()) {
            out[name] = it->second;
            if (auto* pp = std::get_if<Partition>(&it->second)) return *pp;
            throw ConfigError("parameter '" + name + "' must be a partition");
        }
        out[name] = drawn;
        return drawn;
    }

    std::vector<cplx> vec(const std::string& name, long n, double lo, double hi)
    {
        std::vector<cplx> v;
        for (long i = 0; i < n; ++i) v.push_back(polar(lo, hi));
        if (auto it = fixed_.find(name); it != fixed_.end()) {
            out[name] = it->second;
            if (auto* pv = std::get_if<std::vector<cplx>>(&it->second)) return *pv;
            throw ConfigError("parameter '" + name + "' must be a complex vector");
        }
        out[name] = v;
        return v;
    }

    // 0 or 0.1 with equal probability
    cplx nome(const std::string& name) { return take(name, uniform() < 0.5 ? cplx(0) : cplx(0.1)); }

    ParamMap out;

private:
    std::mt19937_64 g_;
    const ParamMap& fixed_;
};

constexpr double kMargin = 1e-3;

// Fixed {"qpow": m} values are computed as ipow(q, m); they terminate a
// series structurally and are exempt from the pole margin.
bool exact_power(cplx c, cplx q)
{
    for (long m = -64; m <= 64; ++m)
        if (c == ipow(q, m)) return true;
    return false;
}

// |1 - c q^j| >= margin for all j in [lo, hi]
bool clear(std::initializer_list<cplx> cs, cplx q, long lo, long hi)
{
    for (const cplx& c : cs) {
        if (exact_power(c, q)) continue;
        for (long j = lo; j <= hi; ++j)
            if (std::abs(1.0 - c * ipow(q, j)) < kMargin) return false;
    }
    return true;
}

// Two-base grid check for W-function parameters: |1 - c q^j t^i|.
bool clear2(std::initializer_list<cplx> cs, cplx q, cplx t, long jlo, long jhi, long ilo, long ihi)
{
    for (const cplx& c : cs)
        for (long i = ilo; i <= ihi; ++i)
            if (!clear({cplx(c * ipow(t, i))}, q, jlo, jhi)) return false;
    return true;
}

using Sampler = bool (*)(Draw&);

bool s_jackson(Draw& d)
{
    const cplx q = d.c("q", 0.1, 0.6);
    const cplx a = d.c("a", 0.1, 0.9), b = d.c("b", 0.1, 0.9), c = d.c("c", 0.1, 0.9), dd = d.c("d", 0.1, 0.9);
    const long n = d.l("n", 0, 6);
    const cplx e = ipow(q, n + 1) * a * a / (b * c * dd);
    const cplx sa = std::sqrt(a);
    return clear({sa, -sa, a * q / b, a * q / c, a * q / dd, a * q / e, a * ipow(q, n + 1)}, q, 0, n)
           && clear({a * q / (b * c * dd)}, q, 0, n);
}

bool s_bailey10(Draw& d)
{
    const cplx q = d.c("q", 0.1, 0.6);
    const cplx a = d.c("a", 0.1, 0.9), b = d.c("b", 0.1, 0.9), c = d.c("c", 0.1, 0.9), dd = d.c("d", 0.1, 0.9);
    const cplx e = d.c("e", 0.1, 0.9), f = d.c("f", 0.1, 0.9);
    const long n = d.l("n", 0, 4);
    const cplx lam = q * a * a / (b * c * dd);
    const cplx sa = std::sqrt(a), sl = std::sqrt(lam);
    return clear({sa, -sa, a * q / b, a * q / c, a * q / dd, a * q / e, a * q / f, e * f / (lam * ipow(q, n)),
                  a * ipow(q, n + 1), sl, -sl, lam * q / e, lam * q / f, e * f / (a * ipow(q, n)), lam * ipow(q, n + 1),
                  lam * q, lam * q / (e * f)},
                 q, 0, n);
}

bool s_6psi6(Draw& d)
{
    const cplx q = d.c("q", 0.1, 0.6);
    const cplx a = d.c("a", 0.1, 0.9), b = d.c("b", 0.1, 0.9), c = d.c("c", 0.1, 0.9), dd = d.c("d", 0.1, 0.9);
    const cplx e = d.c("e", 0.1, 0.9);
    const cplx x = q * a * a / (b * c * dd * e);
    if (std::abs(x) > 0.5) return false;
    const cplx sa = std::sqrt(a);
    return clear({sa, -sa, q * sa, -q * sa, b, c, dd, e, a * q / b, a * q / c, a * q / dd, a * q / e}, q, -60, 60)
           && clear({q / b, q / c, q / dd, q / e, x}, q, 0, 60);
}

bool s_1psi1(Draw& d)
{
    const cplx q = d.c("q", 0.1, 0.6);
    const cplx a = d.c("a", 0.1, 0.9), b = d.c("b", 0.1, 0.9);
    const double lo = std::abs(b / a) / 0.8;
    if (lo > 0.85) return false;
    const cplx x = d.take("x", d.polar(lo, 0.9));
    if (!(std::abs(b / a) < std::abs(x) && std::abs(x) < 1)) return false;
    return clear({a, b}, q, -60, 60) && clear({b, q / a, x, b / (a * x)}, q, 0, 60);
}

bool s_c1(Draw& d)
{
    const cplx x = d.c("x", 0.1, 0.9);
    return std::abs(1.0 - x * x) > kMargin;
}

bool rank1_base(Draw& d, cplx& q, cplx& sg, cplx& rh, cplx& ga, long& n)
{
    q = d.c("q", 0.1, 0.6);
    sg = d.c("sigma", 0.1, 0.9), rh = d.c("rho", 0.1, 0.9), ga = d.c("gamma", 0.1, 0.9);
    n = d.l("n", 0, 5);
    return true;
}

bool s_flipped(Draw& d)
{
    cplx q, sg, rh, ga;
    long n;
    rank1_base(d, q, sg, rh, ga, n);
    const cplx z = d.take("z", cplx(d.uniform(0.1, 1.4), d.uniform(-0.3, 0.3)));
    const long k = d.l("k", 0, n);
    const cplx lq = std::log(q);
    auto Q = [&](cplx e) { return std::exp(e * lq); };
    const cplx S3 = sg * rh * ga, u = z + double(k), n1(1.0 + n);
    const cplx b = Q(2.0 * z);
    return std::abs(1.0 - b) > kMargin
           && clear({Q(-2.0 * z), b, Q(1.0 - 2.0 * z), Q(n1 + 2.0 * z), sg * Q(u - z), rh * Q(u - z), sg * Q(-z - u),
                     rh * Q(-z - u), ga * Q(u - z), Q(3.0 * z + n1 + u) / S3, ga * Q(-z - u), Q(3.0 * z + n1 - u) / S3},
                    q, 0, 80)
           && clear({b, b * ipow(q, 1 + n), q * b / sg, q * b / rh, q * b / ga, S3 * ipow(q, -n) / b}, q, 0, k);
}

bool s_bilateral_finite(Draw& d)
{
    cplx q, sg, rh, ga;
    long n;
    rank1_base(d, q, sg, rh, ga, n);
    const long dl = d.l("delta", 0, 1);
    const cplx S3 = sg * rh * ga, Q = ipow(q, 1 + dl);
    return clear({sg, rh, ga, ipow(q, 2 * dl + 1 + n) / S3, Q / sg, Q / rh, Q / ga, S3 * ipow(q, -dl - n)}, q,
                 -n - 2, n + 1)
           && clear({Q / S3}, q, 0, n);
}

template <int Delta>
bool s_3psi3(Draw& d)
{
    const cplx sg = d.c("sigma", 0.1, 0.9), rh = d.c("rho", 0.1, 0.9), ga = d.c("gamma", 0.1, 0.9);
    const cplx S3 = sg * rh * ga;
    const double hi = std::min(0.6, std::pow(0.5 * std::abs(S3), 1.0 / (1 + Delta)));
    if (hi < 0.05 && !d.has("q")) return false;
    const cplx q = d.take("q", d.polar(0.05, std::max(hi, 0.05)));
    const cplx Q = ipow(q, 1 + Delta);
    if (std::abs(Q / S3) > 0.5) return false;
    return clear({sg, rh, ga, Q / sg, Q / rh, Q / ga}, q, -60, 60)
           && clear({Q / (sg * rh), Q / (sg * ga), Q / (rh * ga), Q / S3}, q, 0, 60);
}

// Common draws for the W-function cases.
struct WDraw {
    cplx q, p, t;
    long n;
    Partition lam;
};

WDraw w_base(Draw& d, long nmax)
{
    WDraw w;
    w.q = d.c("q", 0.1, 0.6);
    w.t = d.c("t", 0.3, 0.9);
    w.p = d.nome("p");
    w.n = d.l("n", 1, nmax);
    w.lam = d.part("lambda", w.n, w.n <= 2 ? 3 : 2);
    return w;
}

bool s_multijackson(Draw& d)
{
    WDraw w = w_base(d, 3);
    d.vec("z", w.n, 0.3, 0.9);
    const cplx s = d.c("s", 0.1, 0.9), a = d.c("a", 0.1, 0.9), b = d.c("b", 0.1, 0.9);
    const long n = w.n;
    const cplx tn = ipow(w.t, n), bs = b / s;
    return clear2({s, a / s / (tn * w.t), bs / tn, w.q * b * tn / a, w.q * b / (s * w.t), w.q * b * tn * s / a, bs},
                  w.q, w.t, -4, 4, -2 * n - 2, 2 * n + 2);
}

bool s_simplified(Draw& d)
{
    WDraw w = w_base(d, 3);
    const cplx x = d.c("x", 0.3, 0.9), s = d.c("s", 0.1, 0.9), a = d.c("a", 0.1, 0.9), b = d.c("b", 0.1, 0.9);
    return clear2({s, a * s, w.q * b, w.q * b / a, b, w.q * b / (a * s), x, a * x, w.q * b * x, w.q * b / (a * x), b * s},
                  w.q, w.t, -4, 4, -2 * w.n - 2, 2 * w.n + 2);
}

bool s_duality(Draw& d)
{
    const cplx q = d.c("q", 0.1, 0.6), t = d.c("t", 0.3, 0.9);
    const cplx p = d.nome("p");
    (void)p;
    const long n = d.l("n", 1, 2);
    d.part("lambda", n, 2);
    d.part("nu", n, 2);
    const cplx a = d.c("a", 0.1, 0.9), a2 = d.c("a2", 0.1, 0.9), b = d.c("b", 0.1, 0.9);
    return clear2({a, a2, b, q * b / a, q * b / a2, a2 / b, a / b, q * a2, q * a}, q, t, -4, 4, -2 * n - 2, 2 * n + 2);
}

bool s_flip(Draw& d)
{
    const cplx q = d.c("q", 0.1, 0.6), t = d.c("t", 0.3, 0.9);
    d.nome("p");
    const auto xs = d.vec("x", d.integer(1, 2), 0.5, 2.0);
    const Partition lam = d.part("lambda", static_cast<long>(xs.size()), 2);
    if (lam.length() > xs.size()) return false;
    const cplx a = d.c("a", 0.1, 0.9), b = d.c("b", 0.1, 0.9);
    std::vector<cplx> cs{a, b, q * b / a};
    for (const cplx& x : xs) cs.push_back(x), cs.push_back(a * x), cs.push_back(q * b * x), cs.push_back(q * b / (a * x));
    for (const cplx& c : cs)
        if (!clear2({c}, q, t, -4, 4, -4, 4)) return false;
    return true;
}

bool s_weyl(Draw& d)
{
    const cplx q = d.c("q", 0.1, 0.6);
    const long n = d.l("n", 1, 3);
    const long N = d.l("N", 0, 3);
    d.part("mu", n, N + 1);
    const cplx s = d.c("s", 0.1, 0.9);
    const long dl = d.l("delta", 0, 1);
    return clear({s * ipow(q, dl), s, 1.0 / s}, q, -2 * n - N - 4, 2 * n + N + 4);
}

bool s_multilateral_finite(Draw& d)
{
    const cplx q = d.c("q", 0.1, 0.6);
    const long n = d.l("n", 1, 2);
    d.part("lambda", n, 2);
    const long dl = d.l("delta", 0, 1);
    const cplx x = d.c("x", 0.1, 0.9), s = d.c("s", 0.1, 0.9), a = d.c("a", 0.1, 0.9);
    const cplx B = ipow(q, dl + 2 * n - 1);
    return clear({s, a * s, B * x, B / (a * x), B / (a * s), 1.0 / x, a * x, s * ipow(q, dl)}, q, -2 * n - 8, 2 * n + 8);
}

bool s_multilateral_3psi3(Draw& d)
{
    const cplx q = d.c("q", 0.3, 0.75);
    const long n = d.l("n", 1, 2);
    const long dl = d.l("delta", 0, 1);
    const double hi = 0.5 * std::pow(std::abs(q), n - 1);
    const cplx s = d.take("s", d.polar(std::min(0.05, hi / 2), hi));
    const cplx x = d.c("x", 0.1, 0.9), a = d.c("a", 0.1, 0.9);
    if (std::abs(s) > hi) return false;
    const cplx B = ipow(q, dl + 2 * n - 1);
    if (!clear({B / (a * s), a * s, 1.0 / x, a * x, B * x, B / (a * x), s / x, a * s * x, B / a}, q, -60, 60))
        return false;
    // The mu = 0 term is 1, so a product side far below 1 means the lattice
    // sum cancels to that size; keep such draws out of double precision.
    cplx prod(1);
    for (long i = 1; i <= n; ++i) {
        const cplx sh = ipow(q, 1 - i);
        for (const cplx& c : {s / x, a * s * x, B, B / a}) prod *= poch_inf(c * sh, q);
        for (const cplx& c : {s, a * s, B * x, B / (a * x)}) prod /= poch_inf(c * sh, q);
    }
    return std::abs(prod) >= 1e-3;
}

bool s_invariance(Draw& d)
{
    cplx q, sg, rh, ga;
    long n;
    rank1_base(d, q, sg, rh, ga, n);
    d.l("delta", 0, 1);
    d.l("k", -4, 4);
    if (d.has("sign"))
        d.l("sign", -1, 1);
    else
        d.out["sign"] = -1L; // the nontrivial reflection
    const cplx S3 = sg * rh * ga;
    return clear({sg, rh, ga, S3, 1.0 / S3, ga * S3}, q, -20, 20);
}

Sampler sampler_for(const std::string& id)
{
    static const std::map<std::string, Sampler> table{
        {"jackson8phi7", s_jackson},
        {"bailey10phi9", s_bailey10},
        {"bailey6psi6", s_6psi6},
        {"ramanujan1psi1", s_1psi1},
        {"c1macdonald", s_c1},
        {"flippedsummand", s_flipped},
        {"bilateralfinite", s_bilateral_finite},
        {"3psi3delta0", s_3psi3<0>},
        {"3psi3delta1", s_3psi3<1>},
        {"multijackson", s_multijackson},
        {"simplifiedjackson", s_simplified},
        {"duality", s_duality},
        {"flip", s_flip},
        {"weyldegree", s_weyl},
        {"multilateralfinite", s_multilateral_finite},
        {"multilateral3psi3", s_multilateral_3psi3},
        {"summandinvariance", s_invariance},
    };
    return table.at(id);
}

// ---- parameter access -------------------------------------------------------

const ParamValue& need(const ParamMap& m, const std::string& name)
{
    auto it = m.find(name);
    if (it == m.end()) throw ConfigError("missing parameter '" + name + "'");
    return it->second;
}

long get_l(const ParamMap& m, const std::string& name)
{
    if (auto* v = std::get_if<long>(&need(m, name))) return *v;
    throw ConfigError("parameter '" + name + "' must be an integer");
}

Partition get_part(const ParamMap& m, const std::string& name)
{
    if (auto* v = std::get_if<Partition>(&need(m, name))) return *v;
    throw ConfigError("parameter '" + name + "' must be a partition");
}

template <class S>
std::vector<S> get_vec(const ParamMap& m, const std::string& name)
{
    if (auto* v = std::get_if<std::vector<cplx>>(&need(m, name))) {
        std::vector<S> out;
        for (const cplx& z : *v) out.push_back(from_cplx<S>(z));
        return out;
    }
    throw ConfigError("parameter '" + name + "' must be a list of complex numbers");
}

template <class S>
S get_q(const ParamMap& m)
{
    const ParamValue& v = need(m, "q");
    if (auto* z = std::get_if<cplx>(&v)) return from_cplx<S>(*z);
    if (auto* k = std::get_if<long>(&v)) return S(static_cast<double>(*k));
    throw ConfigError("parameter 'q' must be a complex number");
}

template <class S>
QParam<S> get_qp(const ParamMap& m, const std::string& name, const S& q)
{
    const ParamValue& v = need(m, name);
    if (auto* z = std::get_if<cplx>(&v)) return QParam<S>(from_cplx<S>(*z));
    if (auto* k = std::get_if<long>(&v)) return QParam<S>(S(static_cast<double>(*k)));
    if (auto* e = std::get_if<QPow>(&v)) return QParam<S>::power(e->m, q);
    throw ConfigError("parameter '" + name + "' must be a complex number");
}

template <class S>
S get_c(const ParamMap& m, const std::string& name, const S& q)
{
    return get_qp(m, name, q).value;
}

template <class S>
Rank1Params<S> get_rank1(const ParamMap& m, bool with_delta)
{
    const S q = get_q<S>(m);
    Rank1Params<S> r{get_c(m, "sigma", q), get_c(m, "rho", q), get_c(m, "gamma", q), q, get_l(m, "n"), 0, S(0)};
    if (with_delta) r.delta = static_cast<int>(get_l(m, "delta"));
    return r;
}

template <class S>
IdentityReport run_typed(const std::string& id, const ParamMap& m, double tol)
{
    const S q = m.count("q") ? get_q<S>(m) : S(0);
    auto C = [&](const char* name) { return get_c(m, name, q); };
    auto QP = [&](const char* name) { return get_qp(m, name, q); };

    if (id == "jackson8phi7") return verify_jackson_8phi7(C("a"), C("b"), C("c"), C("d"), get_l(m, "n"), q, tol);
    if (id == "bailey10phi9")
        return verify_bailey_10phi9(C("a"), C("b"), C("c"), C("d"), C("e"), C("f"), get_l(m, "n"), q, tol);
    if (id == "bailey6psi6") return verify_bailey_6psi6(C("a"), QP("b"), QP("c"), QP("d"), QP("e"), q, tol);
    if (id == "ramanujan1psi1") return verify_ramanujan_1psi1(QP("a"), QP("b"), C("x"), q, tol);
    if (id == "c1macdonald") return verify_c1_macdonald(C("x"), tol);
    if (id == "flippedsummand") {
        auto r = get_rank1<S>(m, false);
        r.z = C("z");
        return verify_flipped_summand(get_l(m, "k"), r, tol);
    }
    if (id == "bilateralfinite") return verify_bilateral_finite(get_rank1<S>(m, true), tol);
    if (id == "3psi3delta0") return verify_3psi3(0, C("sigma"), C("rho"), C("gamma"), q, tol);
    if (id == "3psi3delta1") return verify_3psi3(1, C("sigma"), C("rho"), C("gamma"), q, tol);
    if (id == "summandinvariance")
        return verify_summand_invariance(get_rank1<S>(m, true), get_l(m, "k"), static_cast<int>(get_l(m, "sign")), tol);

    if (id == "multijackson" || id == "simplifiedjackson") {
        MultiParams<S> mp;
        mp.n = get_l(m, "n");
        mp.lambda = get_part(m, "lambda");
        mp.s = C("s"), mp.a = C("a"), mp.b = C("b"), mp.t = C("t"), mp.q = q, mp.p = C("p");
        if (id == "multijackson") return verify_multiple_jackson(mp, get_vec<S>(m, "z"), tol);
        mp.x = C("x");
        return verify_simplified_jackson(mp, tol);
    }
    if (id == "duality")
        return verify_duality(get_l(m, "n"), get_part(m, "lambda"), get_part(m, "nu"), C("a"), C("a2"), C("b"), q,
                              C("p"), C("t"), tol);
    if (id == "flip") return verify_flip(get_part(m, "lambda"), get_vec<S>(m, "x"), q, C("p"), C("t"), C("a"), C("b"), tol);
    if (id == "weyldegree")
        return verify_weyl_degree(get_part(m, "mu"), get_l(m, "N"), get_l(m, "n"), C("s"),
                                  static_cast<int>(get_l(m, "delta")), q, tol);
    if (id == "multilateralfinite") {
        MultiParams<S> mp;
        mp.n = get_l(m, "n");
        mp.lambda = get_part(m, "lambda");
        mp.delta = static_cast<int>(get_l(m, "delta"));
        mp.x = C("x"), mp.s = C("s"), mp.a = C("a"), mp.q = q, mp.t = q;
        return verify_multilateral_finite(mp, tol);
    }
    if (id == "multilateral3psi3")
        return verify_multilateral_3psi3(get_l(m, "n"), static_cast<int>(get_l(m, "delta")), C("x"), C("s"), C("a"), q, tol);
    throw ConfigError("unknown case '" + id + "'");
}

} // namespace

const std::vector<CaseInfo>& registry()
{
    static const std::vector<CaseInfo> r = build_registry();
    return r;
}

const CaseInfo& find_case(const std::string& id)
{
    for (const CaseInfo& c : registry())
        if (c.id == id) return c;
    throw ConfigError("unknown case '" + id + "'");
}

void validate_params(const std::string& case_id, const ParamMap& params)
{
    const CaseInfo& info = find_case(case_id);
    for (const auto& [name, value] : params) {
        auto it = std::find_if(info.schema.begin(), info.schema.end(), [&](const ParamSpec& s) { return s.name == name; });
        if (it == info.schema.end()) throw ConfigError("case '" + case_id + "' has no parameter '" + name + "'");
        bool ok = false;
        switch (it->kind) {
        case ParamKind::Complex:
            ok = std::holds_alternative<cplx>(value) || std::holds_alternative<QPow>(value)
                 || std::holds_alternative<long>(value);
            break;
        case ParamKind::Integer: ok = std::holds_alternative<long>(value); break;
        case ParamKind::PartitionKind: ok = std::holds_alternative<Partition>(value); break;
        case ParamKind::ComplexVector: ok = std::holds_alternative<std::vector<cplx>>(value); break;
        }
        if (!ok) throw ConfigError("parameter '" + name + "' of case '" + case_id + "' has the wrong kind");
    }
}

ParamMap sample_params(const std::string& case_id, std::uint64_t seed, const ParamMap& fixed)
{
    find_case(case_id);
    validate_params(case_id, fixed);
    if (auto it = fixed.find("q"); it != fixed.end() && std::holds_alternative<QPow>(it->second))
        throw ConfigError("q itself cannot be given as a power of q");
    const Sampler s = sampler_for(case_id);
    // Nothing left to draw: run exactly what was asked for, poles included.
    const auto& schema = find_case(case_id).schema;
    if (std::all_of(schema.begin(), schema.end(), [&](const ParamSpec& p) { return fixed.count(p.name) > 0; }))
        return fixed;
    // Redraws continue the same stream, so the accepted draw is a function of the seed alone.
    Draw d(seed, fixed);
    for (int attempt = 0; attempt < 10000; ++attempt) {
        d.out.clear();
        if (s(d)) {
            ParamMap out = d.out;
            for (const auto& [k, v] : fixed) out[k] = v;
            return out;
        }
    }
    throw ConfigError("case '" + case_id + "': no admissible parameter draw (fixed values too restrictive?)");
}

ParamMap sample_params(const std::string& case_id, std::uint64_t seed) { return sample_params(case_id, seed, {}); }

IdentityReport run_case(const std::string& case_id, const ParamMap& params, double tol, Precision prec)
{
    find_case(case_id);
    validate_params(case_id, params);
    if (!(tol > 0)) throw ConfigError("tolerance must be positive");
    if (prec == Precision::High) return run_typed<cplx_hp>(case_id, params, tol);

    // A double-precision series sum that cancelled by more than four digits
    // is redone at 50 digits. The trigger is the conditioning of the sum,
    // never the residual.
    constexpr double kEscalate = 1e4;
    IdentityReport rep = run_typed<cplx>(case_id, params, tol);
    const auto it = rep.aux.find("cancellation");
    if (it == rep.aux.end() || !(it->second.real() > kEscalate)) return rep;
    IdentityReport hp = run_typed<cplx_hp>(case_id, params, tol);
    std::ostringstream os;
    os << std::setprecision(3) << "re-evaluated at 50 digits: double-precision series cancelled by a factor "
       << it->second.real();
    hp.message = hp.message.empty() ? os.str() : os.str() + "; " + hp.message;
    hp.aux["cancellation"] = it->second;
    return hp;
}

IdentityReport run_sample(const std::string& case_id, std::uint64_t seed, long sample, const ParamMap& overrides,
                          double tol, Precision prec)
{
    const auto t0 = std::chrono::steady_clock::now();
    const std::uint64_t sseed = seed + static_cast<std::uint64_t>(sample);
    IdentityReport rep;
    try {
        const ParamMap params = sample_params(case_id, sseed, overrides);
        rep = run_case(case_id, params, tol, prec);
    } catch (const ConfigError&) {
        throw;
    } catch (const Error& e) {
        rep = IdentityReport{};
        rep.case_id = case_id;
        rep.tol = tol;
        rep.status = Status::Error;
        rep.message = e.what();
    }
    rep.sample = sample;
    rep.seed = sseed;
    rep.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

} // namespace qident
