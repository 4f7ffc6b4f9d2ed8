#pragma once

// Removable singularities (0/0 at t = q, or at z = delta/2 in the rank-one
// summand) are evaluated by perturbing along a path through the singular
// point and evaluating in 100-digit arithmetic at eps = +-1e-30. The two
// one-sided values must agree; their mean is accurate to O(eps^2).

#include "qident/errors.hpp"
#include "qident/scalar.hpp"

#include <sstream>

namespace qident {

inline const real_t<cplx_reg>& regularization_eps()
{
    static const real_t<cplx_reg> eps("1e-30");
    return eps;
}

// f : cplx_reg (the path parameter eps) -> cplx_reg, continuous at eps = 0.
template <class F>
cplx regularized_limit(F&& f)
{
    const cplx_reg eps(regularization_eps());
    const cplx_reg up = f(eps);
    const cplx_reg dn = f(-eps);
    const real_t<cplx_reg> gap = modulus(cplx_reg(up - dn));
    const real_t<cplx_reg> scale = std::max(modulus(up), modulus(dn));
    if (gap > real_t<cplx_reg>("1e-20") * scale && gap > real_t<cplx_reg>("1e-18")) {
        std::ostringstream os;
        os << "regularized_limit: one-sided values disagree (" << to_cplx(up) << " vs " << to_cplx(dn) << ")";
        throw NoConvergence(os.str());
    }
    return to_cplx(cplx_reg((up + dn) / 2));
}

} // namespace qident
