#include "uwofdm/dft.hpp"

#include <cmath>
#include <numbers>

namespace uwofdm {
namespace {

bool is_pow2(size_t n) { return n != 0 && (n & (n - 1)) == 0; }

// Iterative radix-2 Cooley-Tukey, decimation in time. sign = -1 gives the
// forward kernel exp(-j 2 pi k l / N).
void fft_pow2(CVec& a, int sign)
{
    const size_t n = static_cast<size_t>(a.size());
    for (size_t i = 1, j = 0; i < n; ++i) {
        size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (size_t len = 2; len <= n; len <<= 1) {
        const double ang = sign * 2.0 * std::numbers::pi / static_cast<double>(len);
        const cplx wl(std::cos(ang), std::sin(ang));
        for (size_t i = 0; i < n; i += len) {
            cplx w(1.0, 0.0);
            for (size_t k = 0; k < len / 2; ++k) {
                cplx u = a[i + k];
                cplx v = a[i + k + len / 2] * w;
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
                w *= wl;
            }
        }
    }
}

CVec dft_direct(const CVec& x, int sign)
{
    const int n = static_cast<int>(x.size());
    CVec out = CVec::Zero(n);
    const double step = sign * 2.0 * std::numbers::pi / n;
    for (int k = 0; k < n; ++k) {
        cplx acc(0.0, 0.0);
        for (int l = 0; l < n; ++l) {
            const double ang = step * static_cast<double>((static_cast<long long>(k) * l) % n);
            acc += x[l] * cplx(std::cos(ang), std::sin(ang));
        }
        out[k] = acc;
    }
    return out;
}

} // namespace

CVec dft_forward(const CVec& x)
{
    if (is_pow2(static_cast<size_t>(x.size()))) {
        CVec a = x;
        fft_pow2(a, -1);
        return a;
    }
    return dft_direct(x, -1);
}

CVec dft_inverse(const CVec& x)
{
    CVec a;
    if (is_pow2(static_cast<size_t>(x.size()))) {
        a = x;
        fft_pow2(a, +1);
    } else {
        a = dft_direct(x, +1);
    }
    a /= static_cast<double>(x.size());
    return a;
}

CMat dft_matrix(int n)
{
    CMat f(n, n);
    const double step = -2.0 * std::numbers::pi / n;
    for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
            const double ang = step * static_cast<double>((static_cast<long long>(k) * l) % n);
            f(k, l) = cplx(std::cos(ang), std::sin(ang));
        }
    return f;
}

} // namespace uwofdm
