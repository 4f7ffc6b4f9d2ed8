#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qident/qcore.hpp"
#include "testutil.hpp"

using namespace qident;
using qtest::rel;

TEST_CASE("integer Pochhammer examples")
{
    CHECK(poch_int(cplx(0.7, 0.2), cplx(0.3), 0) == cplx(1));
    // (0.5;0.25)_2 = 0.5 * 0.875
    CHECK(rel(poch_int(cplx(0.5), cplx(0.25), 2), cplx(0.4375)) < 1e-15);
    // negative order: (a)_{-1} = 1/(1 - a/q)
    CHECK(rel(poch_int(cplx(0.2), cplx(0.5), -1), cplx(1.0 / 0.6)) < 1e-15);
    CHECK(rel(poch_int(cplx(0.2), cplx(0.5), -2), cplx(1.0 / (0.6 * 0.2))) < 1e-14);
}

TEST_CASE("vanishing factors are reported, not divided by")
{
    // 1/(q^{-1};q)_{-k}-style: (a)_{-1} with a = q is 1/(1 - 1)
    CHECK_THROWS_AS(poch_int(cplx(0.5), cplx(0.5), -1), DivisionByVanishingFactor);
    CHECK(rpoch_int(cplx(0.5), cplx(0.5), -1) == cplx(0));
    CHECK(poch_qpow(-2, cplx(0.3), 3) == cplx(0));
    CHECK(poch_qpow(-2, cplx(0.3), 2) != cplx(0));
    CHECK(rpoch_qpow(1, cplx(0.3), -1) == cplx(0));
}

TEST_CASE("infinite products")
{
    CHECK(rel(poch_inf(cplx(0.5), cplx(0)), cplx(0.5)) < 1e-16);
    // Euler: (q;q)_inf at q = 0.5, reference value
    CHECK(rel(poch_inf(cplx(0.5), cplx(0.5)), cplx(0.28878809508660242128)) < 1e-14);
    // q-binomial: sum x^k/(q)_k = 1/(x;q)_inf
    const cplx q(0.3, 0.1), x(0.4, -0.2);
    cplx s(0);
    for (int k = 0; k < 80; ++k) s += std::pow(x, k) / poch_int(q, q, k);
    CHECK(rel(s, 1.0 / poch_inf(x, q)) < 1e-13);

    CHECK(poch_inf(cplx(1), cplx(0.5)) == cplx(0)); // a zero, not a division
    TruncationPolicy tiny;
    tiny.max_factors = 3;
    CHECK_THROWS_AS(poch_inf(cplx(0.5), cplx(0.9), tiny), NoConvergence);
}

TEST_CASE("poch_inf is stable once converged")
{
    qtest::Draws d(11);
    for (int i = 0; i < 50; ++i) {
        const cplx a = d.polar(0.1, 0.9), q = d.polar(0.1, 0.9);
        TruncationPolicy pol, more;
        more.max_factors = 2 * pol.max_factors;
        CHECK(rel(poch_inf(a, q, pol), poch_inf(a, q, more)) < 1e-15);
    }
}

TEST_CASE("complex order")
{
    // (a)_0 = 1 structurally, even at a = 1
    CHECK(poch_general(cplx(1), cplx(0.5), cplx(0)) == cplx(1));
    qtest::Draws d(200);
    for (int i = 0; i < 200; ++i) {
        const cplx a = d.polar(0.1, 0.9), q = d.polar(0.1, 0.6);
        const long k = d.integer(-6, 6);
        CHECK(rel(poch_general(a, q, cplx(double(k))), poch_int(a, q, k)) < 1e-12);
    }
}

TEST_CASE("integer order splits additively")
{
    qtest::Draws d(3);
    for (int i = 0; i < 100; ++i) {
        const cplx a = d.polar(0.1, 0.9), q = d.polar(0.1, 0.6);
        const long m = d.integer(-5, 5), n = d.integer(-5, 5);
        CHECK(rel(poch_int(a, q, m + n), poch_int(a, q, m) * poch_int(a * ipow(q, m), q, n)) < 1e-13);
    }
}

TEST_CASE("theta and elliptic Pochhammer")
{
    CHECK(rel(theta(cplx(0.3, 0.4), cplx(0)), cplx(0.7, -0.4)) < 1e-16);
    qtest::Draws d(5);
    for (int i = 0; i < 100; ++i) {
        const cplx x = d.polar(0.2, 2.0), p = d.polar(0.01, 0.5), a = d.polar(0.1, 0.9), q = d.polar(0.1, 0.9);
        CHECK(rel(theta(x, p), theta(p / x, p)) < 1e-12);
        const long n = d.integer(0, 6);
        CHECK(rel(epoch(a, q, cplx(0), n), poch_int(a, q, n)) < 1e-13);
        // quasi-periodicity theta(px) = -x^{-1} theta(x)
        CHECK(rel(theta(p * x, p), -theta(x, p) / x) < 1e-11);
    }
    // negative length is the reciprocal shifted product
    const cplx a(0.4, 0.1), q(0.3), p(0.1);
    CHECK(rel(epoch(a, q, p, -2), 1.0 / epoch(a / (q * q), q, p, 2)) < 1e-14);
    for (long n = -3; n <= 3; ++n) CHECK(rel(repoch(a, q, p, n) * epoch(a, q, p, n), cplx(1)) < 1e-14);
}

TEST_CASE("limit rule")
{
    CHECK(limit_rule(cplx(0.9), cplx(0.4), 0) == cplx(1));
    CHECK(rel(limit_rule(cplx(0.5), cplx(0.25), 2), cplx(0.0625)) < 1e-15);
    CHECK(rel(limit_rule(cplx(0.3), cplx(0.5), 1), cplx(-0.3)) < 1e-15);
    qtest::Draws d(9);
    for (int i = 0; i < 50; ++i) {
        // the error is O(a / |x q^{k-1}|), so keep that ratio small
        const cplx x = d.polar(0.4, 0.9), q = d.polar(0.4, 0.6);
        const long k = d.integer(0, 3);
        const cplx a(1e-8);
        CHECK(rel(std::pow(a, double(k)) * poch_int(x / a, q, k), limit_rule(x, q, k)) < 1e-6);
    }
}

TEST_CASE("50-digit backend agrees with double")
{
    const cplx a(0.4, 0.3), q(0.55, -0.1);
    const cplx_hp ah = from_cplx<cplx_hp>(a), qh = from_cplx<cplx_hp>(q);
    CHECK(rel(to_cplx(poch_inf(ah, qh)), poch_inf(a, q)) < 1e-14);
    CHECK(rel(to_cplx(theta(ah, from_cplx<cplx_hp>(cplx(0.1)))), theta(a, cplx(0.1))) < 1e-14);
}
