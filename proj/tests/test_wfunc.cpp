#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qident/identities.hpp"
#include "qident/wfunc.hpp"
#include "testutil.hpp"

#include <algorithm>

using namespace qident;
using qtest::rel;

namespace {

WParams<cplx> fixed(double p) { return WParams<cplx>{cplx(0.3), cplx(p), cplx(0.45), cplx(0.37), cplx(0.21)}; }

std::vector<Partition> box(long len, long top)
{
    std::vector<Partition> out;
    std::vector<long> v(static_cast<std::size_t>(len), 0);
    for (;;) {
        if (std::is_sorted(v.rbegin(), v.rend())) out.emplace_back(v);
        std::size_t i = 0;
        while (i < v.size() && ++v[i] > top) v[i++] = 0;
        if (i == v.size()) break;
    }
    return out;
}

} // namespace

TEST_CASE("partition Pochhammer examples")
{
    const WParams<cplx> w{cplx(0.25), cplx(0), cplx(0.5), cplx(0), cplx(0)};
    CHECK(poch_partition(cplx(0.5), w, Partition{}) == cplx(1));
    CHECK(std::abs(poch_partition(cplx(0.5), w, Partition{1, 1})) < 1e-16);
    const WParams<cplx> w3{cplx(0.25), cplx(0), cplx(0.3), cplx(0), cplx(0)};
    CHECK(rel(poch_partition(cplx(0.5), w3, Partition{2}), cplx(0.4375)) < 1e-15);
    CHECK(poch_partition_multi<cplx>({}, w3, Partition{2}) == cplx(1));
    CHECK(rel(poch_partition_multi<cplx>({cplx(0.5), cplx(0.2)}, w3, Partition{1}), cplx(0.4)) < 1e-15);
}

TEST_CASE("H-factor")
{
    const auto w = fixed(0);
    CHECK(hfactor(Partition{3}, Partition{1}, w) == cplx(1));
    // lambda = mu: the first product is empty, but the j = n + 1 column of the
    // second still sees mu_n - lambda_{n+1} = 1
    CHECK(rel(hfactor(Partition{1, 1}, Partition{1, 1}, w), cplx(1.1505376344086021505)) < 1e-14);
    CHECK(hfactor(Partition{1, 1}, Partition{1, 1}, w, 1) == hfactor(Partition{1, 1}, Partition{1, 1}, w));
    // reference transcription (40-digit)
    CHECK(rel(hfactor(Partition{2, 1}, Partition{2}, fixed(0)), cplx(0.99810282869245748931)) < 1e-13);
    CHECK(rel(hfactor(Partition{2, 1}, Partition{2}, fixed(0.1)), cplx(0.34237878557941398602)) < 1e-13);
}

TEST_CASE("single-variable skew W")
{
    const auto w = fixed(0);
    const cplx x(0.7);
    CHECK(w_skew_single(x, Partition{3, 2}, Partition{1, 1}, w) == cplx(0));
    CHECK(w_skew_single(x, Partition{}, Partition{}, w) == cplx(1));
    const cplx q = w.q, a = w.a, b = w.b;
    const cplx hand = (1.0 - 1.0 / x) * (1.0 - a * x) / ((1.0 - q * b * x) * (1.0 - q * b / (a * x)));
    CHECK(rel(w_skew_single(x, Partition{1}, Partition{}, w), hand) < 1e-14);
    CHECK(rel(hand, cplx(-0.43900822176344122752)) < 1e-14);
    CHECK(rel(w_skew_single(x, Partition{1}, Partition{}, fixed(0.1)), cplx(0.37507634582675535561)) < 1e-13);
}

TEST_CASE("multivariable W against the reference transcription")
{
    const std::vector<cplx> z2{0.7, 1.3}, z3{0.7, 1.3, 0.55};
    CHECK(w_multi(std::vector<cplx>{0.7}, Partition{2, 1}, Partition{1}, fixed(0))
          == w_skew_single(cplx(0.7), Partition{2, 1}, Partition{1}, fixed(0)));
    CHECK(rel(w_multi(z2, Partition{}, Partition{}, fixed(0)), cplx(1)) < 1e-15);
    CHECK(rel(w_multi(z2, Partition{2, 1}, Partition{}, fixed(0)), cplx(-0.083486600237764292266)) < 1e-12);
    CHECK(rel(w_multi(z2, Partition{2, 1}, Partition{}, fixed(0.1)), cplx(0.58498348548139929615)) < 1e-12);
    CHECK(rel(w_multi(z3, Partition{2, 1, 1}, Partition{1}, fixed(0)), cplx(0.22565386585402352626)) < 1e-12);
    CHECK(rel(w_multi(z3, Partition{2, 1, 1}, Partition{1}, fixed(0.1)), cplx(19797.579103829499853)) < 1e-11);
    CHECK_THROWS_AS(w_multi(std::vector<cplx>{}, Partition{}, Partition{}, fixed(0)), DomainError);
}

TEST_CASE("vanishing off horizontal strips is structural")
{
    const auto all = box(3, 3);
    long zeros = 0;
    for (double p : {0.0, 0.1})
        for (const Partition& l : all)
            for (const Partition& m : all) {
                if (is_horizontal_strip(l, m)) continue;
                // x = 1 would make generic factors vanish too; a zero here
                // must come from the strip rule alone
                CHECK(w_skew_single(cplx(0.83, 0.2), l, m, fixed(p), 3) == cplx(0));
                ++zeros;
            }
    CHECK(zeros > 0);
}

TEST_CASE("symmetry in the variables")
{
    qtest::Draws d(2024);
    int done = 0;
    for (int draw = 0; done < 50 && draw < 500; ++draw) {
        const double p = done % 2 ? 0.1 : 0.0;
        const WParams<cplx> w{d.polar(0.1, 0.6), cplx(p), d.polar(0.3, 0.9), d.polar(0.1, 0.9), d.polar(0.1, 0.9)};
        const long n = d.integer(2, 3);
        std::vector<cplx> z;
        for (long i = 0; i < n; ++i) z.push_back(d.polar(0.5, 2.0));
        std::vector<long> parts;
        for (long i = 0; i < n; ++i) parts.push_back(d.integer(0, 3));
        std::sort(parts.rbegin(), parts.rend());
        const Partition l(parts);
        try {
            const cplx base = w_multi(z, l, Partition{}, w);
            if (std::abs(base) < 1e-8) continue;
            std::vector<cplx> perm = z;
            std::sort(perm.begin(), perm.end(), [](cplx u, cplx v) { return std::arg(u) < std::arg(v); });
            do {
                CHECK(rel(w_multi(perm, l, Partition{}, w), base) < 1e-10);
            } while (std::next_permutation(perm.begin(), perm.end(),
                                           [](cplx u, cplx v) { return std::arg(u) < std::arg(v); }));
            ++done;
        } catch (const DivisionByVanishingFactor&) {
        }
    }
    CHECK(done == 50);
}

TEST_CASE("degree formula against the recursion at the principal specialization")
{
    CHECK(w_degree(Partition{}, 2, 2, cplx(0.3), 0, cplx(0.4)) == cplx(1));
    CHECK(w_degree(Partition{3}, 2, 2, cplx(0.3), 0, cplx(0.4)) == cplx(0));
    for (long n = 1; n <= 3; ++n)
        for (long N = 0; N <= 3; ++N)
            for (const Partition& mu : box(n, N)) {
                for (int delta : {0, 1}) {
                    const auto r = verify_weyl_degree(mu, N, n, cplx(0.3, 0.1), delta, cplx(0.4), 1e-9);
                    CHECK_MESSAGE(r.status == Status::Pass, mu.str(), " N=", N, " n=", n, " ", r.message);
                }
            }
    // mu = (1), N = 2, n = 2, s = 0.3, q = 0.4
    const auto r = verify_weyl_degree(Partition{1}, 2, 2, cplx(0.3), 0, cplx(0.4), 1e-9);
    CHECK(r.status == Status::Pass);
    CHECK(r.lhs != cplx(0));
}

TEST_CASE("flip and duality examples")
{
    const cplx q(0.35), p(0), t(0.6), a(0.45, 0.1), b(0.3, -0.05);
    auto empty = verify_flip(Partition{}, std::vector<cplx>{cplx(0.8)}, q, p, t, a, b, 1e-9);
    CHECK(empty.status == Status::Pass);
    CHECK(rel(empty.lhs, cplx(1)) < 1e-15);
    CHECK(verify_flip(Partition{2}, std::vector<cplx>{cplx(0.8, 0.3)}, q, p, t, a, b, 1e-9).status == Status::Pass);
    CHECK(verify_flip(Partition{2, 1}, std::vector<cplx>{cplx(0.8, 0.3), cplx(1.4, -0.2)}, q, p, t, a, b, 1e-9).status
          == Status::Pass);

    const cplx a2(0.55, -0.1);
    auto same = verify_duality(2, Partition{}, Partition{}, a, a2, b, q, p, t, 1e-9);
    CHECK(same.status == Status::Pass);
    auto mirror = verify_duality(2, Partition{2, 1}, Partition{2, 1}, a, a, b, q, p, t, 1e-9);
    CHECK(mirror.status == Status::Pass);
    CHECK(mirror.abs_residual <= 1e-13 * std::abs(mirror.lhs));
    CHECK(verify_duality(2, Partition{1}, Partition{2}, a, a2, b, q, p, t, 1e-9).status == Status::Pass);
    CHECK(verify_duality(2, Partition{1}, Partition{2}, a, a2, b, q, cplx(0.1), t, 1e-9).status == Status::Pass);
}

TEST_CASE("seeded flip, duality and degree draws")
{
    for (const std::string id : {"flip", "duality", "weyldegree"})
        for (double p : {0.0, 0.1}) {
            if (id == "weyldegree" && p != 0.0) continue; // the closed form is a p = 0 statement
            ParamMap fixedp;
            if (id != "weyldegree") fixedp["p"] = cplx(p);
            for (long s = 0; s < 20; ++s) {
                const auto r = run_sample(id, 500, s, fixedp, 1e-9, Precision::Double);
                CHECK_MESSAGE(r.status == Status::Pass, id, " sample ", s, " ", r.message, " rel ", r.rel_residual);
            }
        }
}
