"""Independent q-series reference values (plain Python Fractions, quadratic algorithms).

lambda/16 is built from the product formula (prod (1+q^{2n})/(1+q^{2n-1}))^8 * q rather than
from eta quotients, so it exercises a different route than the C++ code.
"""
from fractions import Fraction as Fr
import sys


def mul(a, b, n):
    c = [0] * n
    for i, x in enumerate(a[:n]):
        if x:
            for j, y in enumerate(b[: n - i]):
                if y:
                    c[i + j] += x * y
    return c


def inv(a, n):
    b = [Fr(0)] * n
    b[0] = Fr(1) / a[0]
    for m in range(1, n):
        s = sum(a[k] * b[m - k] for k in range(1, min(m, len(a) - 1) + 1))
        b[m] = -s / a[0]
    return b


def power(a, alpha, n):
    # a[0] = 1
    g = [Fr(0)] * n
    g[0] = Fr(1)
    for m in range(1, n):
        s = sum(((alpha + 1) * k - m) * a[k] * g[m - k] for k in range(1, m + 1))
        g[m] = s / m
    return g


def lambda16(n):
    # q * prod (1+q^{2k})^8 / (1+q^{2k-1})^8, coefficients of q^0..q^{n-1} of the unit part
    u = [1] + [0] * (n - 1)
    for k in range(1, n):
        if 2 * k < n:
            f = [0] * n
            f[0] = 1
            f[2 * k] = 1
            u = mul(u, f, n)
        if 2 * k - 1 < n:
            f = [0] * n
            f[0] = 1
            f[2 * k - 1] = 1
            u = mul(u, inv([Fr(x) for x in f], n), n)
    u = power([Fr(x) for x in u], Fr(8), n)
    return [Fr(0)] + u[: n - 1]  # exponents 0..n-1


def compose(f, g, n):
    # f(g) with g[0] = 0
    r = [Fr(0)] * n
    p = [Fr(1)] + [Fr(0)] * (n - 1)
    for k in range(n):
        if k < len(f) and f[k]:
            for i in range(n):
                r[i] += f[k] * p[i]
        p = mul(p, g, n)
    return r


def revert(f, n):
    # Lagrange: [t^k] g = (1/k) [t^{k-1}] (t/f)^k
    u = f[1:n + 1]
    ui = inv(u, n)
    g = [Fr(0)] * n
    pw = [Fr(1)] + [Fr(0)] * (n - 1)
    for k in range(1, n):
        pw = mul(pw, ui, n)
        g[k] = pw[k - 1] / k
    return g


if __name__ == "__main__":
    n = 40
    lam = lambda16(n)
    print("lambda16", [int(x) for x in lam[:14]])
    print("lambda16[39]", lam[39])
    rv = revert(lam, n)
    print("revert", [int(x) for x in rv[:10]])
    print("revert[39]", rv[39])
    h = [a - 16 * b for a, b in zip(lam, mul(lam, lam, n))]
    print("h", [int(x) for x in h[:10]])
    for k in (2, 3, 5, 7, 24):
        r = power([x for x in h[1:]] + [Fr(0)], Fr(1, k), 30)
        print("h^(1/%d) integral to 30:" % k, all(x.denominator == 1 for x in r), r[:6])
    r3 = power(lam[1:] + [Fr(0)], Fr(1, 3), 30)
    print("lambda16^(1/3) dens", [x.denominator for x in r3[:12]])
    E = [Fr(1)]
    a, b, c = Fr(-1, 2), Fr(1, 2), Fr(1)
    for k in range(n - 1):
        E.append(E[-1] * (a + k) * (b + k) / ((c + k) * (k + 1)))
    lam16x = [16 * x for x in lam]
    print("E(lambda)", [int(x) for x in compose(E, lam16x, 12)])
    s = [Fr(1, 8)]
    b8 = [Fr(1)]
    for k in range(30):
        b8.append(b8[-1] * (Fr(1, 8) - k) / (k + 1) * (-16))
    print("(1-16x)^(1/8)", [int(x) for x in b8[:10]], all(x.denominator == 1 for x in b8))
    # j^{1/3}: q^{-1/3} E4 / prod(1-q^n)^8
    m = 12
    E4 = [1] + [240 * sum(d ** 3 for d in range(1, k + 1) if k % d == 0) for k in range(1, m)]
    P = [1] + [0] * (m - 1)
    for k in range(1, m):
        f = [0] * m
        f[0] = 1
        f[k] = -1
        P = mul(P, f, m)
    P8 = power([Fr(x) for x in P], Fr(8), m)
    j3 = mul([Fr(x) for x in E4], inv(P8, m), m)
    print("j^(1/3)", [int(x) for x in j3[:8]])
