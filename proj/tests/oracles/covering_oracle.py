"""Independent mpmath reference for the covering map F_N of C minus the N-th roots of unity.

Inverts the hypergeometric Schwarz map with mpmath.findroot (mpmath's own hyp2f1
continuation) and reduces points to the Dirichlet domain by parabolic translations.
Used only to freeze expected values for the C++ test-suite.
"""
import mpmath as mp

mp.mp.prec = 200


def gamma_n(N):
    N = mp.mpf(N)
    return mp.mpf(16) ** (1 / N) * mp.gamma(1 + 1 / (2 * N)) ** 2 * mp.gamma(1 - 1 / N) / (
        mp.gamma(1 - 1 / (2 * N)) ** 2 * mp.gamma(1 + 1 / N))


def s_ratio(N, w):
    a1 = mp.mpf(N + 1) / (2 * N)
    a2 = mp.mpf(N - 1) / (2 * N)
    return mp.hyp2f1(a1, a1, 2 * a1, w) / mp.hyp2f1(a2, a2, 2 * a2, w)


def phi(N, w):
    """x in the triangle (0, 1, zeta^(1/2)) for w = F_N(x)^N in the upper half plane."""
    return mp.power(w, mp.mpf(1) / N) * s_ratio(N, w) / gamma_n(N)


def psi(N, z):
    return z * s_ratio(N, z ** N) / gamma_n(N)


def reduce(N, x):
    c = mp.cot(mp.pi / (2 * N))
    zeta = mp.expjpi(mp.mpf(2) / N)
    for _ in range(100000):
        moved = False
        for k in range(N):
            y = x * zeta ** (-k)
            tau = 1j * (1 + y) / (1 - y)
            n = mp.nint(tau.real / (2 * c))
            if abs(tau.real) > c and n != 0:
                tau = tau - 2 * c * n
                y = (tau - 1j) / (tau + 1j)
                x = y * zeta ** k
                moved = True
        if not moved:
            return x
    raise RuntimeError("no convergence")


def _solve_half_triangle(N, x):
    best = None
    for re in [-60, -40, -20, -12, -8, -6, -4, -3, -2, -1.5, -1, -0.5, -0.2, -0.05]:
        for im in [-3.1, -2.8, -2.5, -2, -1.5, -1, -0.5, -0.1]:
            l = mp.mpc(re, im)
            d = abs(phi(N, 1 - mp.exp(l)) - x)
            if best is None or d < best[0]:
                best = (d, l)
    g = gamma_n(N)
    z0 = g * x
    if abs(z0 ** N) < 0.3:
        z = mp.findroot(lambda z: psi(N, z) - x, z0)
        return z ** N
    l = mp.findroot(lambda l: phi(N, 1 - mp.exp(l)) - x, best[1])
    return 1 - mp.exp(l)


def f_eval(N, x):
    x = reduce(N, mp.mpc(x))
    zeta = mp.expjpi(mp.mpf(2) / N)
    k = int(mp.nint(mp.arg(x) / (2 * mp.pi / N)))
    x1 = x * zeta ** (-k)
    conj = mp.arg(x1) < 0
    if conj:
        x1 = mp.conj(x1)
    flip = mp.arg(x1) > mp.pi / (2 * N)
    if flip:
        x1 = mp.expjpi(mp.mpf(1) / N) * mp.conj(x1)
    w = _solve_half_triangle(N, x1)
    if flip:
        w = mp.conj(w / (w - 1))
    z = mp.power(w, mp.mpf(1) / N)
    if conj:
        z = mp.conj(z)
    return z * zeta ** k


if __name__ == "__main__":
    import random
    random.seed(1)
    for N in (2, 3, 5):
        print("gamma", N, mp.nstr(gamma_n(N), 40))
        zeta = mp.expjpi(mp.mpf(2) / N)
        c2 = 2 * mp.cot(mp.pi / (2 * N))
        for x in (mp.mpc(0.2, 0.1), mp.mpc(0.5, 0.3), mp.mpc(-0.3, 0.6), mp.mpc(0.9, -0.3)):
            F = f_eval(N, x)
            # deck transformation t0 (translation by c2 in the frame of cusp 1)
            tau = 1j * (1 + x) / (1 - x) + c2
            gx = (tau - 1j) / (tau + 1j)
            Fg = f_eval(N, gx)
            Fr = f_eval(N, x * zeta)
            print(N, mp.nstr(x, 5), mp.nstr(F, 25), "deck", mp.nstr(abs(Fg - F), 3),
                  "rot", mp.nstr(abs(Fr - zeta * F), 3))
