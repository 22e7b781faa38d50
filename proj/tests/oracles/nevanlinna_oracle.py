# Reference values for tests/test_nevanlinna.cpp.
import mpmath as mp

mp.mp.dps = 40

# m(1/2, 1/(1-z)): log+ |1/(1-z)| is positive only for cos(theta) > 1/4.
r = mp.mpf(1) / 2
edge = mp.acos(mp.mpf(1) / 4)
print("m_half", mp.quad(lambda t: -mp.log(abs(1 - r * mp.expj(t))), [0, edge]) / mp.pi)
