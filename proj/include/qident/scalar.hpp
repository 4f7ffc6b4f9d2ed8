#pragma once

// Scalar backends. Everything numeric in the library is templated on one of
//   cplx      - std::complex<double>, the default
//   cplx_hp   - 50-digit complex, selected by QIDENT_PRECISION=high
//   cplx_reg  - 100-digit complex, used internally for regularized limits
// and only touches the scalar through the helpers below.

#include <boost/multiprecision/cpp_complex.hpp>

#include <cmath>
#include <complex>
#include <cstdint>

namespace qident {

using cplx = std::complex<double>;
using cplx_hp = boost::multiprecision::cpp_complex_50;
using cplx_reg = boost::multiprecision::cpp_complex_100;

enum class Precision { Double, High };

template <class S>
struct scalar_traits;

template <>
struct scalar_traits<cplx> {
    using real = double;
    static constexpr int digits10 = 15;
};

template <>
struct scalar_traits<cplx_hp> {
    using real = boost::multiprecision::cpp_bin_float_50;
    static constexpr int digits10 = 50;
};

template <>
struct scalar_traits<cplx_reg> {
    using real = boost::multiprecision::cpp_bin_float_100;
    static constexpr int digits10 = 100;
};

template <class S>
using real_t = typename scalar_traits<S>::real;

template <class S>
inline S from_cplx(const cplx& z)
{
    if constexpr (std::is_same_v<S, cplx>)
        return z;
    else
        return S(z.real(), z.imag());
}

template <class S>
inline cplx to_cplx(const S& z)
{
    if constexpr (std::is_same_v<S, cplx>)
        return z;
    else
        return cplx(z.real().template convert_to<double>(), z.imag().template convert_to<double>());
}

// |z| in the backend's own real type (no underflow to double).
template <class S>
inline real_t<S> modulus(const S& z)
{
    using std::abs;
    if constexpr (std::is_same_v<S, cplx>)
        return std::abs(z);
    else
        return real_t<S>(boost::multiprecision::abs(z));
}

template <class S>
inline double mag(const S& z)
{
    if constexpr (std::is_same_v<S, cplx>)
        return std::abs(z);
    else
        return modulus(z).template convert_to<double>();
}

// |z|^2 without the square root.
template <class S>
inline real_t<S> norm2(const S& z)
{
    if constexpr (std::is_same_v<S, cplx>)
        return std::norm(z);
    else
        return real_t<S>(z.real() * z.real() + z.imag() * z.imag());
}

template <class S>
inline bool below(const S& z, double tol)
{
    return norm2(z) < real_t<S>(tol) * real_t<S>(tol);
}

template <class S>
inline S cexp(const S& z)
{
    using std::exp;
    return exp(z);
}

template <class S>
inline S clog(const S& z)
{
    using std::log;
    return log(z);
}

template <class S>
inline S csqrt(const S& z)
{
    using std::sqrt;
    return sqrt(z);
}

// z^k for integer k by repeated squaring; 0^0 = 1.
template <class S>
inline S ipow(S z, long k)
{
    if (k < 0) return S(1) / ipow(z, -k);
    S r(1);
    while (k) {
        if (k & 1) r *= z;
        z *= z;
        k >>= 1;
    }
    return r;
}

// Principal-branch complex power q^alpha = exp(alpha log q).
template <class S>
inline S cpow(const S& q, const S& alpha)
{
    return cexp(alpha * clog(q));
}

inline bool finite(const cplx& z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

} // namespace qident
