#!/usr/bin/env python3
"""Independent high-precision evaluation of the closed-form bounds.

Writes formula_values.json next to this file. The C++ tests compare the
library against these numbers to 1e-12 relative error.
"""
import json
import pathlib

from mpmath import mp, mpf, sqrt, exp, log

mp.dps = 40


def f(x):
    return float(x)


def eps_factor(eps):
    return max(eps, eps * eps)


cases = []


def add(name, **values):
    cases.append({"name": name, **{k: f(v) for k, v in values.items()}})


# Sub-gaussian rows, d <= n.
for n, d, t, K, C in [(10000, 100, 2, 1, 1), (500, 500, 0, 1, 1), (1000, 30, 1.5, 2, 0.7)]:
    eps = sqrt(mpf(d) / n) + mpf(t) / sqrt(n)
    add("lowdim_subgaussian", n=n, d=d, t=t, K=K, C=C, epsilon=eps,
        factor=C * mpf(K) ** 2 * eps_factor(eps), failure=min(1, 2 * exp(-mpf(t) ** 2)))

# Gaussian rows.
for n, d, t in [(10000, 100, mpf("2.7157")), (400, 1, 1), (2000, 50, sqrt(2 * log(40))), (1000, 10, 0)]:
    eps = sqrt(mpf(d) / n) + mpf(t) / sqrt(n)
    add("gaussian", n=n, d=d, t=t, epsilon=eps, factor=2 * eps + eps * eps,
        failure=min(1, 2 * exp(-mpf(t) ** 2 / 2)))
add("gaussian_t_for_failure", delta=0.05, t=sqrt(2 * log(mpf(2) / mpf("0.05"))))

# Bounded norm.
for n, d, m, t, c in [(10000, 100, 100, 3, 1), (5000, 20, 40, 2, 0.5), (100, 10, 10, 0, 1)]:
    eps = mpf(t) * sqrt(mpf(m) / n)
    add("bounded_norm", n=n, d=d, m=m, t=t, c=c, epsilon=eps, factor=eps_factor(eps),
        failure=min(1, 2 * d * exp(-c * mpf(t) ** 2)))
add("bounded_norm_t_for_failure", d=50, delta=0.05, c=1, t=sqrt(log(2 * mpf(50) / mpf("0.05")) / 1))

# Independent entries, d >= n.
for n, d, t, K, C in [(100, 10000, 2, 1, 1), (64, 64, 1, 1.5, 2)]:
    eps = sqrt(mpf(n) / d) + mpf(t) / sqrt(d)
    add("highdim_subgaussian", n=n, d=d, t=t, K=K, C=C, epsilon=eps,
        factor=C * mpf(K) ** 2 * eps_factor(eps), failure=min(1, 2 * exp(-mpf(t) ** 2)))

# Constant-norm rows, high-probability mode.
for n, d, t, CK, cK in [(64, 4096, 2, 1, 1), (20, 500, 1, 1.5, 0.5)]:
    eps = CK * sqrt(mpf(n) / d) + mpf(t) / sqrt(d)
    add("highdim_rows", n=n, d=d, t=t, C_K=CK, c_K=cK, epsilon=eps, factor=eps_factor(eps),
        failure=min(1, 2 * exp(-cK * mpf(t) ** 2)))


def budget(n, p, K2p, C):
    n = mpf(n)
    root = n ** (mpf(1) / p)
    return C * (mpf(p) / log(p + 1)) * root * max(n, root * mpf(K2p) ** 2) * log(n)


for n, d, p, K2p, C in [(100, 10 ** 6, 2, sqrt(3), 1), (100, 10 ** 6, 1, 1, 1), (32, 4096, 2, mpf("1.3"), 1),
                        (50, 2000, 3, 2, mpf("0.25"))]:
    B = budget(n, p, K2p, C)
    add("moment_budget", n=n, d=d, p=p, K2p=K2p, C=C, budget=B, epsilon=sqrt(B / d))

# Nearly square.
for n, d, t1, t2, K, CK, cK, Ct in [(100, 100, 2, 1, 1, 1, 1, 1), (200, 150, 3, 2, 1, 0.5, 0.1, 2),
                                    (150, 200, 3, 2, 1, 0.5, 0.1, 2), (1000, 1, 2, 1, 1, 1, 1, 1)]:
    big, small = (n, d) if n >= d else (d, n)
    e1 = sqrt(mpf(small - 1) / big)
    e2 = sqrt(mpf(small) / big) + mpf(t2) / sqrt(big)
    lower = (1 / mpf(t1) ** 2) * (1 - e1) ** 2
    upper = 1 + Ct * mpf(K) ** 2 * eps_factor(e2)
    raw = (mpf(CK) / t1) ** (big - small + 1) + exp(-cK * mpf(big)) + 2 * exp(-mpf(t2) ** 2)
    add("square", n=n, d=d, t1=t1, t2=t2, K=K, C_K=CK, c_K=cK, C_tilde=Ct, epsilon1=e1, epsilon2=e2,
        lower_factor=lower, upper_factor=upper, failure=min(1, raw))

for g in [mpf("0.25"), mpf("0.5"), mpf("0.01")]:
    add("bai_yin", gamma=g, lo=(1 - sqrt(g)) ** 2, hi=(1 + sqrt(g)) ** 2)

# Incoherence bounds.
for s2, s2p, n, d, p, C in [(100 * 10 ** 4, 1, 100, 10 ** 4, 2, 1), (5000, 10 ** 9, 50, 100, 3, mpf("0.5"))]:
    p = mpf(p)
    add("rosenthal", sum_sq=s2, sum_2p=s2p, n=n, d=d, p=p, C=C,
        value=C * (p / log(p)) * mpf(n) ** (1 / p) / d * max(mpf(s2), mpf(s2p) ** (1 / p)))
for n, p, K2p, C in [(64, 2, sqrt(3), 1), (64, 1, 2, 1), (1000, 4, 5, mpf("0.3"))]:
    nn = mpf(n)
    root = nn ** (mpf(1) / p)
    add("corollary", n=n, p=p, K2p=K2p, C=C,
        value=C * (mpf(p) / (log(p) + 1)) * root * max(nn, root * mpf(K2p) ** 2))
for m, n, d, C in [(100, 100, 10 ** 6, 1), (0, 10, 10, 1), (73.5, 50, 2000, 2)]:
    add("expectation_deviation", m=m, n=n, d=d, C=C, value=C * sqrt(mpf(m) * log(n) / d))

# Gaussian absolute moments E|g|^p.
for p in range(1, 9):
    add("gaussian_abs_moment", p=p, value=mpf(2) ** (mpf(p) / 2) * mp.gamma((mpf(p) + 1) / 2) / sqrt(mp.pi))

out = pathlib.Path(__file__).with_name("formula_values.json")
out.write_text(json.dumps({"cases": cases}, indent=1) + "\n")
print(f"wrote {len(cases)} cases to {out}")
