"""Regenerate the Chebyshev tables embedded in deltawell.bessel.

Fits sqrt(x)*exp(-x)*I{0,1}(x) on x in [8, inf) via t = 16/x - 1 and
sqrt(x)*exp(x)*K{0,1}(x) on x in [2, inf) via t = 4/x - 1, sampling at
Chebyshev nodes in 40-digit arithmetic.  28 coefficients leave the
truncation error near 1e-19, well under double-precision roundoff.

Run:  python tools/gen_bessel_coeffs.py
"""

from mpmath import mp, besseli, besselk, cos, exp, sqrt, pi, mpf

mp.dps = 40

N_COEF = 28


def cheb_fit(f, n):
    nodes = [cos(pi * (j + mpf(1) / 2) / n) for j in range(n)]
    vals = [f(t) for t in nodes]
    coeffs = []
    for k in range(n):
        c = 2 * sum(vals[j] * cos(pi * k * (j + mpf(1) / 2) / n)
                    for j in range(n)) / n
        coeffs.append(c / 2 if k == 0 else c)
    return coeffs


def scaled_i(order, lo):
    def f(t):
        x = 2 * lo / (t + 1)  # t = 2*lo/x - 1
        return sqrt(x) * exp(-x) * besseli(order, x)
    return f


def scaled_k(order, lo):
    def f(t):
        x = 2 * lo / (t + 1)
        return sqrt(x) * exp(x) * besselk(order, x)
    return f


def dump(name, coeffs):
    print(f"_CHEB_{name} = (")
    for c in coeffs:
        print(f"    {float(c)!r},")
    print(")")


if __name__ == "__main__":
    dump("I0", cheb_fit(scaled_i(0, 8), N_COEF))
    dump("I1", cheb_fit(scaled_i(1, 8), N_COEF))
    dump("K0", cheb_fit(scaled_k(0, 2), N_COEF))
    dump("K1", cheb_fit(scaled_k(1, 2), N_COEF))
