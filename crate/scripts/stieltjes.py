"""Derive the Stieltjes constants gamma_0..gamma_8 used by the zeta Laurent
expansion in crates/core/src/special/zeta.rs.

gamma_n = lim_{N->oo} ( sum_{k<=N} (log k)^n / k  -  (log N)^(n+1)/(n+1) ).

The limit is evaluated with the Euler-Maclaurin formula applied to
f(x) = (log x)^n / x at a finite N, at 60 significant digits, and then
cross-checked against mpmath's independent implementation.

    python3 scripts/stieltjes.py
"""

from mpmath import mp, mpf, log, bernoulli, factorial, diff, stieltjes, nstr

mp.dps = 60
N = 200
M = 25


def gamma_n(n):
    f = lambda x: log(x) ** n / x
    s = sum(f(mpf(k)) for k in range(1, N + 1))
    s -= log(mpf(N)) ** (n + 1) / (n + 1)
    s -= f(mpf(N)) / 2
    for j in range(1, M + 1):
        s -= bernoulli(2 * j) / factorial(2 * j) * diff(f, mpf(N), 2 * j - 1)
    return s


if __name__ == "__main__":
    for n in range(9):
        g = gamma_n(n)
        ref = stieltjes(n)
        assert abs(g - ref) < mpf(10) ** -30, (n, g, ref)
        print(f"gamma_{n} = {nstr(g, 22)}")
