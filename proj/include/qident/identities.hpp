#pragma once

// The identity registry. Every verify_* computes the two sides of one
// summation or transformation through disjoint code paths (series evaluator
// against product formula, or two independent W evaluations) and returns an
// IdentityReport; numerical errors are caught and recorded, not thrown.

#include "qident/partition.hpp"
#include "qident/scalar.hpp"
#include "qident/series.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <variant>
#include <vector>

namespace qident {

struct QPow {
    long m = 0; // the value is q^m exactly
    friend bool operator==(const QPow&, const QPow&) = default;
};

using ParamValue = std::variant<long, cplx, Partition, std::vector<cplx>, QPow>;
using ParamMap = std::map<std::string, ParamValue>;

enum class Status { Pass, Fail, Error };
const char* to_string(Status s);

struct IdentityReport {
    std::string case_id;
    long sample = 0;
    std::uint64_t seed = 0;
    ParamMap params;
    cplx lhs{}, rhs{};
    double abs_residual = 0, rel_residual = 0, tol = 0;
    long terms_used = 0;
    bool terminated = false;
    Status status = Status::Error;
    std::string message;
    std::map<std::string, cplx> aux; // auxiliary evaluations (third side, cross-checks)
    double elapsed_ms = 0;           // timing; excluded from determinism
};

// |l - r| / max(|l|, |r|, 1e-300); both sides below 1e-12 falls back to the
// absolute criterion.
double rel_residual(const cplx& l, const cplx& r);
void judge(IdentityReport& rep, const cplx& lhs, const cplx& rhs);
// Three-way (or more) comparison: residual is the largest pairwise one.
void judge_all(IdentityReport& rep, const std::vector<cplx>& sides);

template <class S>
struct Rank1Params {
    S sigma, rho, gamma, q;
    long n = 0;
    int delta = 0;
    S z{}; // b = q^{2z}; only used by the flipped summand
};

template <class S>
struct MultiParams {
    long n = 1;
    Partition lambda;
    S x{}, s{}, a{}, b{}, t{}, q{}, p{};
    int delta = 0;
};

// ---- rank one -----------------------------------------------------------
template <class S> IdentityReport verify_jackson_8phi7(const S& a, const S& b, const S& c, const S& d, long n, const S& q, double tol);
template <class S> IdentityReport verify_bailey_10phi9(const S& a, const S& b, const S& c, const S& d, const S& e, const S& f, long n, const S& q, double tol);
template <class S> IdentityReport verify_bailey_6psi6(const S& a, const QParam<S>& b, const QParam<S>& c, const QParam<S>& d, const QParam<S>& e, const S& q, double tol);
template <class S> IdentityReport verify_ramanujan_1psi1(const QParam<S>& a, const QParam<S>& b, const S& x, const S& q, double tol);
template <class S> IdentityReport verify_c1_macdonald(const S& x, double tol);
template <class S> IdentityReport verify_flipped_summand(long k, const Rank1Params<S>& r, double tol);
template <class S> IdentityReport verify_bilateral_finite(const Rank1Params<S>& r, double tol);
template <class S> IdentityReport verify_3psi3(int delta, const S& sigma, const S& rho, const S& gamma, const S& q, double tol);
template <class S> IdentityReport verify_summand_invariance(const Rank1Params<S>& r, long k, int sign, double tol);

// ---- multiple -----------------------------------------------------------
template <class S> IdentityReport verify_multiple_jackson(const MultiParams<S>& m, const std::vector<S>& z, double tol);
template <class S> IdentityReport verify_simplified_jackson(const MultiParams<S>& m, double tol);
template <class S> IdentityReport verify_duality(long n, const Partition& lam, const Partition& nu, const S& a, const S& a2, const S& b, const S& q, const S& p, const S& t, double tol);
template <class S> IdentityReport verify_flip(const Partition& lam, const std::vector<S>& xs, const S& q, const S& p, const S& t, const S& a, const S& b, double tol);
template <class S> IdentityReport verify_weyl_degree(const Partition& mu, long N, long n, const S& s, int delta, const S& q, double tol);
template <class S> IdentityReport verify_multilateral_finite(const MultiParams<S>& m, double tol);
template <class S> IdentityReport verify_multilateral_3psi3(long n, int delta, const S& x, const S& s, const S& a, const S& q, double tol);

// ---- shared pieces exposed for cross-checks ------------------------------

// k-th term of the very-well-poised Jackson sum with b = q^{2z}, and the
// flipped infinite-product form of the same term at u = z + k (or any u).
template <class S> S jackson_summand(long k, const Rank1Params<S>& r);
template <class S> S flipped_summand(const S& u, const Rank1Params<S>& r);

// Right-hand sides of the two multiple Jackson forms.
template <class S> S multiple_jackson_rhs(const MultiParams<S>& m, const std::vector<S>& z);
template <class S> S simplified_jackson_rhs(const MultiParams<S>& m);

// Summand of the finite multilateral identity at an arbitrary lattice point,
// extended off the dominant chamber by hyperoctahedral invariance.
cplx multilateral_summand(const MultiParams<cplx>& m, const IntVector& mu);
// Integer window used for the finite multilateral sum: {upper, lower}.
std::pair<IntVector, IntVector> multilateral_window(long n, const Partition& lam, int delta);

// ---- registry -------------------------------------------------------------

enum class ParamKind { Complex, Integer, PartitionKind, ComplexVector };

struct ParamSpec {
    std::string name;
    ParamKind kind;
    std::string doc;
};

struct CaseInfo {
    std::string id;
    std::string description;
    std::vector<ParamSpec> schema;
    double default_tol;
};

const std::vector<CaseInfo>& registry();
const CaseInfo& find_case(const std::string& id); // ConfigError if unknown

// Deterministic parameter draw for one sample.
ParamMap sample_params(const std::string& case_id, std::uint64_t seed);
// Same, with some parameters held fixed; dependent draws and admissibility
// gates respect the fixed values.
ParamMap sample_params(const std::string& case_id, std::uint64_t seed, const ParamMap& fixed);

// Checks names and kinds against the schema; ConfigError on mismatch.
void validate_params(const std::string& case_id, const ParamMap& params);

IdentityReport run_case(const std::string& case_id, const ParamMap& params, double tol, Precision prec);

// Elapsed time is filled in; seed/sample copied into the report.
IdentityReport run_sample(const std::string& case_id, std::uint64_t seed, long sample, const ParamMap& overrides,
                          double tol, Precision prec);

} // namespace qident
