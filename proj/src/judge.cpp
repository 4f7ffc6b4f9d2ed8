#include "qident/identities.hpp"

#include <algorithm>
#include <cmath>

namespace qident {

const char* to_string(Status s)
{
    switch (s) {
    case Status::Pass: return "pass";
    case Status::Fail: return "fail";
    case Status::Error: return "error";
    }
    return "error";
}

double rel_residual(const cplx& l, const cplx& r)
{
    return std::abs(l - r) / std::max({std::abs(l), std::abs(r), 1e-300});
}

void judge(IdentityReport& rep, const cplx& lhs, const cplx& rhs)
{
    rep.lhs = lhs;
    rep.rhs = rhs;
    if (!finite(lhs) || !finite(rhs)) {
        rep.status = Status::Error;
        rep.message = "non-finite evaluation";
        rep.abs_residual = rep.rel_residual = 0;
        if (!finite(lhs)) rep.lhs = cplx(0);
        if (!finite(rhs)) rep.rhs = cplx(0);
        return;
    }
    rep.abs_residual = std::abs(lhs - rhs);
    rep.rel_residual = rel_residual(lhs, rhs);
    // both sides negligible: compare absolutely
    const bool tiny = std::abs(lhs) < 1e-12 && std::abs(rhs) < 1e-12;
    const double measure = tiny ? rep.abs_residual : rep.rel_residual;
    rep.status = measure <= rep.tol ? Status::Pass : Status::Fail;
}

void judge_all(IdentityReport& rep, const std::vector<cplx>& sides)
{
    if (sides.size() < 2) throw DomainError("judge_all needs at least two sides");
    std::size_t wi = 0, wj = 1;
    double worst = -1;
    for (std::size_t i = 0; i < sides.size(); ++i)
        for (std::size_t j = i + 1; j < sides.size(); ++j) {
            const double r = finite(sides[i]) && finite(sides[j]) ? rel_residual(sides[i], sides[j]) : INFINITY;
            if (r > worst) worst = r, wi = i, wj = j;
        }
    judge(rep, sides[wi], sides[wj]);
}

} // namespace qident
