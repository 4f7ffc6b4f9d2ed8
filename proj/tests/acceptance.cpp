// Acceptance gate: one PASS/FAIL line per criterion, exit status 1 if any
// line fails. Draw counts, tolerances and time limits are the contract's.

#include "qident/report.hpp"
#include "qident/wfunc.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>

using namespace qident;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Tally {
    long runs = 0, passed = 0;
    double worst = 0;
    std::string first_problem;

    void add(const IdentityReport& r)
    {
        ++runs;
        if (r.status == Status::Pass)
            ++passed;
        else if (first_problem.empty())
            first_problem = r.case_id + " sample " + std::to_string(r.sample) + ": " + to_string(r.status) + " "
                            + r.message + " (rel " + std::to_string(r.rel_residual) + ")";
        // tiny-on-both-sides draws are judged on the absolute residual
        const bool tiny = std::max(std::abs(r.lhs), std::abs(r.rhs)) < 1e-12;
        worst = std::max(worst, tiny ? r.abs_residual : r.rel_residual);
    }
    void add(double rel, double tol, const std::string& what)
    {
        ++runs;
        if (rel <= tol)
            ++passed;
        else if (first_problem.empty())
            first_problem = what + " (rel " + std::to_string(rel) + ")";
        worst = std::max(worst, rel);
    }
    bool ok() const { return runs > 0 && passed == runs; }
};

void batch(Tally& t, const std::string& id, std::uint64_t seed, long count, const ParamMap& fixed, double tol)
{
    for (long s = 0; s < count; ++s) t.add(run_sample(id, seed, s, fixed, tol, Precision::Double));
}

int failures = 0;

void line(const char* name, bool ok, const std::string& detail)
{
    std::printf("[%s] %s: %s\n", ok ? "PASS" : "FAIL", name, detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
}

std::string fmt(const char* f, double a = 0, double b = 0, double c = 0, double d = 0)
{
    char buf[256];
    std::snprintf(buf, sizeof buf, f, a, b, c, d);
    return buf;
}

void timed(const char* name, double limit, double tol, const std::function<void(Tally&)>& body)
{
    Tally t;
    const auto t0 = Clock::now();
    body(t);
    const double el = seconds_since(t0);
    std::string detail = std::to_string(t.passed) + "/" + std::to_string(t.runs) + " within tolerance, worst residual "
                         + fmt("%.2e (tol %.0e), %.2f s", t.worst, tol, el)
                         + (limit > 0 ? fmt(" (limit %.0f s)", limit) : std::string());
    if (!t.first_problem.empty()) detail += "; first problem: " + t.first_problem;
    line(name, t.ok() && (limit <= 0 || el < limit), detail);
}

double rel(cplx a, cplx b) { return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300}); }

cplx get(const ParamMap& m, const char* k) { return std::get<cplx>(m.at(k)); }

} // namespace

int main()
{
    timed("Jackson 8phi7, 100 draws, n in 0..6", 2, 1e-9,
          [](Tally& t) { batch(t, "jackson8phi7", 42, 100, {}, 1e-9); });

    timed("Bailey 10phi9, 50 draws, n <= 4", 5, 1e-9, [](Tally& t) { batch(t, "bailey10phi9", 43, 50, {}, 1e-9); });

    timed("Bailey 6psi6 and Ramanujan 1psi1, 50 draws each", 30, 1e-8, [](Tally& t) {
        batch(t, "bailey6psi6", 44, 50, {}, 1e-8);
        batch(t, "ramanujan1psi1", 45, 50, {}, 1e-8);
    });

    timed("rank-1 pipeline (flipped summand, C1, three-way finite, 3psi3 both parities), 50 draws each", 60, 1e-8,
          [](Tally& t) {
              batch(t, "flippedsummand", 46, 50, {}, 1e-9);
              batch(t, "c1macdonald", 47, 50, {}, 1e-9);
              batch(t, "bilateralfinite", 48, 25, {{"delta", 0L}}, 1e-9);
              batch(t, "bilateralfinite", 49, 25, {{"delta", 1L}}, 1e-9);
              batch(t, "3psi3delta0", 50, 50, {}, 1e-8);
              batch(t, "3psi3delta1", 51, 50, {}, 1e-8);
          });

    timed("rank-1 hyperoctahedral invariance at z = delta/2, k in -4..4, 20 draws", 0, 1e-9, [](Tally& t) {
        batch(t, "summandinvariance", 52, 10, {{"delta", 0L}, {"sign", -1L}}, 1e-9);
        batch(t, "summandinvariance", 53, 10, {{"delta", 1L}, {"sign", -1L}}, 1e-9);
    });

    timed("W-function suite (strip vanishing, symmetry, flip, duality, degree formula), p in {0, 0.1}", 120, 1e-9,
          [](Tally& t) {
              // vanishing, exhaustive over parts <= 3, length <= 3
              std::vector<Partition> all;
              for (long a = 0; a <= 3; ++a)
                  for (long b = 0; b <= a; ++b)
                      for (long c = 0; c <= b; ++c) all.push_back(Partition{a, b, c});
              for (double p : {0.0, 0.1}) {
                  const WParams<cplx> w{cplx(0.3), cplx(p), cplx(0.45), cplx(0.37, 0.1), cplx(0.21)};
                  for (const Partition& l : all)
                      for (const Partition& m : all)
                          if (!is_horizontal_strip(l, m))
                              t.add(w_skew_single(cplx(0.83, 0.2), l, m, w, 3) == cplx(0) ? 0.0 : 1.0, 0,
                                    "vanishing " + l.str() + "/" + m.str());
              }
              // symmetry in the variables, <= 3 variables
              std::mt19937_64 g(54);
              auto u = [&](double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(g); };
              auto polar = [&](double lo, double hi) {
                  return std::polar(std::exp(u(std::log(lo), std::log(hi))), u(-3.14159, 3.14159));
              };
              for (double p : {0.0, 0.1})
                  for (int done = 0, tries = 0; done < 20 && tries < 1000; ++tries) {
                      const WParams<cplx> w{polar(0.1, 0.6), cplx(p), polar(0.3, 0.9), polar(0.1, 0.9), polar(0.1, 0.9)};
                      std::vector<cplx> z{polar(0.5, 2), polar(0.5, 2), polar(0.5, 2)};
                      std::vector<long> parts{long(u(0, 4)), long(u(0, 4)), long(u(0, 4))};
                      std::sort(parts.rbegin(), parts.rend());
                      const Partition l(parts);
                      try {
                          const cplx base = w_multi(z, l, Partition{}, w);
                          if (std::abs(base) < 1e-8) continue;
                          std::vector<int> idx{0, 1, 2};
                          double worst = 0;
                          while (std::next_permutation(idx.begin(), idx.end()))
                              worst = std::max(worst, rel(w_multi(std::vector<cplx>{z[idx[0]], z[idx[1]], z[idx[2]]}, l,
                                                                  Partition{}, w),
                                                          base));
                          t.add(worst, 1e-10, "symmetry " + l.str());
                          ++done;
                      } catch (const DivisionByVanishingFactor&) {
                      }
                  }
              for (double p : {0.0, 0.1}) {
                  batch(t, "flip", 55, 20, {{"p", cplx(p)}}, 1e-9);
                  batch(t, "duality", 56, 20, {{"p", cplx(p)}}, 1e-9);
              }
              // the closed form is stated at p = 0
              batch(t, "weyldegree", 57, 40, {}, 1e-9);
          });

    timed("multiple Jackson and simplified form: n=2 (p in {0, 0.1}, 20 draws each), n=3 (p=0, 5 draws)", 180, 1e-7,
          [](Tally& t) {
              for (const char* id : {"multijackson", "simplifiedjackson"}) {
                  for (double p : {0.0, 0.1}) batch(t, id, 58, 20, {{"n", 2L}, {"p", cplx(p)}}, 1e-7);
                  batch(t, id, 59, 5, {{"n", 3L}, {"p", cplx(0)}}, 1e-7);
              }
          });

    {
        Tally t;
        double exterior = 0;
        const auto t0 = Clock::now();
        for (long d : {0L, 1L})
            for (long s = 0; s < 20; ++s) {
                const auto r = run_sample("multilateralfinite", 60 + d * 1000, s, {{"n", 2L}, {"delta", d}}, 1e-7,
                                          Precision::Double);
                t.add(r);
                if (auto it = r.aux.find("exterior_max"); it != r.aux.end()) exterior = std::max(exterior, it->second.real());
            }
        const double el = seconds_since(t0);
        line("multilateral finite sum, n=2, delta in {0,1}, 20 draws each, exterior spot-check", t.ok() && exterior < 1e-12,
             std::to_string(t.passed) + "/" + std::to_string(t.runs)
                 + fmt(" within tolerance, worst residual %.2e (tol 1e-07), max |summand| at 5 exterior points %.1e, %.2f s",
                       t.worst, exterior, el)
                 + (t.first_problem.empty() ? "" : "; first problem: " + t.first_problem));
    }

    timed("multilateral 3psi3: rank-1 reduction (1e-8), n=2 delta in {0,1} 10 draws each (1e-6)", 180, 1e-6,
          [](Tally& t) {
              for (long d : {0L, 1L})
                  for (long s = 0; s < 10; ++s) {
                      const auto p = sample_params("multilateral3psi3", 61 + d * 1000 + s, {{"n", 1L}, {"delta", d}});
                      const cplx x = get(p, "x"), sv = get(p, "s"), a = get(p, "a"), q = get(p, "q");
                      const auto ml = verify_multilateral_3psi3(1, int(d), x, sv, a, q, 1e-8);
                      const auto r1 = verify_3psi3(int(d), 1.0 / x, a * x, ipow(q, 1 + d) / (a * sv), q, 1e-8);
                      const cplx f = d ? 1.0 / (1.0 - q) : cplx(1);
                      t.add(ml);
                      t.add(std::max(rel(f * ml.lhs, r1.rhs), rel(f * ml.rhs, r1.lhs)), 1e-8,
                            "rank-1 reduction, draw " + std::to_string(s));
                  }
              for (long d : {0L, 1L}) batch(t, "multilateral3psi3", 62 + d * 1000, 10, {{"n", 2L}, {"delta", d}}, 1e-6);
          });

    {
        const auto t0 = Clock::now();
        nlohmann::json cases = nlohmann::json::array();
        for (const CaseInfo& c : registry()) cases.push_back({{"case", c.id}, {"samples", 3}});
        const RunConfig cfg = parse_config({{"seed", 2024}, {"cases", cases}});
        const std::string a = strip_timing(report_document(run_all(cfg, 1), cfg)).dump();
        const std::string b = strip_timing(report_document(run_all(cfg, 1), cfg)).dump();
        const std::string c = strip_timing(report_document(run_all(cfg, 4), cfg)).dump();
        const bool same = a == b && a == c;
        line("determinism: full suite twice with identical seeds, and parallelism 1 vs 4", same,
             std::string(same ? "identical" : "different") + " modulo timing fields"
                 + fmt(" (%.0f-byte reports, %.0f runs each), %.2f s", double(a.size()), double(3 * registry().size()),
                       seconds_since(t0)));
    }

    std::printf("%s: %d criterion line(s) failed\n", failures ? "ACCEPTANCE FAILED" : "ACCEPTANCE PASSED", failures);
    return failures ? 1 : 0;
}
