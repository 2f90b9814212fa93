#!/usr/bin/env python3
"""Extended-precision reference values frozen into the C++ tests.

Run with `python3 tests/oracle/generate_golden.py`; requires mpmath.
Every map evaluation here uses 50 significant digits and exact rational
cosines for the named angles, independently of the C++ implementation.
"""
from mpmath import mp, mpf, acos, ceil, log, log10, sqrt

mp.dps = 50

K = {  # 1 - cos(theta) for the named angles
    "pi/3": mpf(1) / 2,
    "pi/2": mpf(1),
    "acos(-1/4)": mpf(5) / 4,
    "2pi/3": mpf(3) / 2,
    "pi": mpf(2),
}


def f(k, x):
    return 4 * k**2 * x * (x - (1 - 2 * (1 - k)) / (2 * k)) ** 2


def orbit(k, e0, n, digits=None):
    out = [mpf(e0)]
    for _ in range(n):
        y = f(k, out[-1])
        if digits:
            y = mpf(mp.nstr(y, digits))
        out.append(y)
    return out


def show(name, values):
    print(name, "= {" + ", ".join(mp.nstr(v, 17, min_fixed=-30, max_fixed=30) for v in values) + "};")


traces = [
    ("pi2_from_099999", "pi/2", mpf("0.99999"), 8),
    ("acos_quarter_from_09999", "acos(-1/4)", mpf("0.9999"), 10),
    ("twopi3_from_099999", "2pi/3", mpf("0.99999"), 13),
    ("pi_from_099999", "pi", mpf("0.99999"), 10),
    ("pi3_n1e4", "pi/3", 1 - mpf(10) ** -4, 8),
    ("pi3_n2e10", "pi/3", 1 - mpf(2) ** -10, 6),
    ("pi_n1e4", "pi", 1 - mpf(10) ** -4, 4),
]
for name, angle, e0, n in traces:
    show(name + "_exact", orbit(K[angle], e0, n))
    show(name + "_5sf", orbit(K[angle], e0, n, digits=5))

# step_delta identity at theta = 2pi/3, eps = 0.9 (both sides)
k, e = K["2pi/3"], mpf("0.9")
a = (k - 1) / k
print("step_delta(2pi/3, 0.9) rhs =", mp.nstr(4 * e * k**2 * (1 - e) * (a - e), 20),
      " lhs =", mp.nstr(f(k, e) - e, 20))

# n_star(0.76) by the cube chain
e, n = mpf("0.76"), 0
while e > mpf(3) / 4:
    e, n = e**3, n + 1
print("n_star(0.76) =", n)

# M*(pi/3) for N = 2^10
print("M*(pi/3, n=10) raw =", mp.nstr(10 * log(2) / log(3) - 2 * log(2) / log(3), 10))

# stage-2 phase after four Phase-pi iterations from 1 - 1e-4
e4 = orbit(K["pi"], 1 - mpf(10) ** -4, 4)[-1]
print("plan stage-2 theta =", mp.nstr(acos(1 - 1 / (2 * (1 - e4))), 20), " eps4 =", mp.nstr(e4, 20))

# bracket sequences at 2pi/3 from g
k = K["2pi/3"]
m = 2 * k - 1
g = 2 * m**3 / (27 * k)
x, seq = g, []
for _ in range(41):
    x = f(k, x)
    seq.append(x)
print("bracket 2pi/3 k_max=20 alpha =", mp.nstr(seq[39], 17), " beta =", mp.nstr(seq[40], 17))
