#!/usr/bin/env python3
# SPDX-License-Identifier: Apache-2.0
# Copyright 2026 The tvisi Authors
"""Independent high-resolution oracle for the constants frozen into the C++ tests.

Uses plain periodic trapezoid sums on 2^19 and 2^20 points with Richardson
extrapolation (kinked integrands converge at O(h^2)), and SciPy root finding.
Nothing here shares code with the library.
"""
import math
import numpy as np
from scipy.optimize import brentq, minimize_scalar

C = np.array([1.0, 0.5, 0.5])
R = np.array([0.001, 0.001, 0.001])
K = len(C) - 1


def fsq(w, c=C):
    l = np.arange(len(c))
    re = np.cos(np.outer(w, l)) @ c
    im = np.sin(np.outer(w, l)) @ c
    return re * re + im * im


def mean_periodic(fn, npts):
    w = np.arange(npts) * (2 * math.pi / npts)
    return float(np.mean(fn(w)))


def richardson(fn):
    a = mean_periodic(fn, 1 << 19)
    b = mean_periodic(fn, 1 << 20)
    return b + (b - a) / 3.0


def extrema(c=C):
    w = np.linspace(0, 2 * math.pi, 1 << 16, endpoint=False)
    v = np.sqrt(fsq(w, c))
    i = int(np.argmin(v)); j = int(np.argmax(v))
    h = w[1] - w[0]
    g = lambda x: math.sqrt(fsq(np.array([x]), c)[0])
    lo = minimize_scalar(g, bracket=(w[i] - h, w[i], w[i] + h), tol=1e-14).fun
    hi = -minimize_scalar(lambda x: -g(x), bracket=(w[j] - h, w[j], w[j] + h), tol=1e-14).fun
    return lo, hi


alpha, beta = extrema()
J = mean_periodic(lambda w: 1.0 / fsq(w), 1 << 20)
g = lambda th: richardson(lambda w: np.maximum(th - 1.0 / fsq(w), 0.0))
c0int = lambda th: 0.5 * richardson(lambda w: np.maximum(np.log2(th * fsq(w)), 0.0))

print(f"alpha        = {alpha:.15g}")
print(f"beta         = {beta:.15g}")
print(f"J            = {J:.15g}")

# Theta_1 at P = 0.1 (below closed-form threshold 1/alpha^2 - J)
P = 0.1
th1 = brentq(lambda t: g(t) - P, 1 / beta**2, 1 / alpha**2, xtol=1e-13)
print(f"theta1(P=0.1)= {th1:.15g}")
print(f"C0(P=0.1)    = {c0int(th1):.15g}")

# C0 at P = 20 dBW; P >= 1/alpha^2 - J so theta = P + J
P20 = 100.0
th20 = P20 + J
print(f"C0(20dBW)    = {c0int(th20):.15g}")
# and at 0 dBW (needs root)
P0 = 1.0
th0 = brentq(lambda t: g(t) - P0, 1 / beta**2, P0 + 1 / alpha**2, xtol=1e-13)
print(f"theta1(0dBW) = {th0:.15g}")
print(f"C0(0dBW)     = {c0int(th0):.15g}")

nr2 = float(np.sum(R**2)); rs = float(np.sum(R))
A = (2.0 / (K + 1)) / nr2
Psat = A - 2 * J
print(f"Psat_W       = {Psat:.15g}")
print(f"Psat_dBW     = {10*math.log10(Psat):.15g}")
gap2 = 1 + 1 / (2 * math.log(2)) - 0.5 * math.log2(1 - rs * (rs + 2 * beta) / alpha**2)
print(f"gap_cor2     = {gap2:.15g}")

th2 = A - J
I2 = 2 * th2 - A
q = rs * (rs + 2 * beta)
def delta(theta, I):
    dmin = max(theta - 1 / alpha**2, 0.0); dmax = max(theta - 1 / beta**2, 0.0)
    return (-0.5 * math.log2(1 - q * dmax / (1 + alpha**2 * dmin))
            + (1 - max(1 - q * I, 0.0) / (1 + q * dmax)) / (2 * math.log(2)))
d2 = delta(th2, I2)
print(f"theta2       = {th2:.15g}")
print(f"delta2       = {d2:.15g}")
# log-mean of |f| (closed-form pieces for C_LB2)
logf = mean_periodic(lambda w: 0.5 * np.log2(fsq(w)), 1 << 20)
clb2 = logf + 0.5 * math.log2(th2) - math.log2(1 + (K + 1) / 2 * nr2 * I2) - d2
print(f"C_LB2        = {clb2:.15g}")

# pillow bound at P = 30 dBW, r_s = 1e-3
P30 = 1000.0
th30 = P30 + J
rs_ = 1e-3; q_ = rs_ * (rs_ + 2 * beta)
dmin = th30 - 1 / alpha**2; dmax = th30 - 1 / beta**2
t1 = math.log2(1 + (K + 1) / 2 * rs_**2 * P30)
t2 = -0.5 * math.log2(1 - q_ * dmax / (1 + alpha**2 * dmin))
t3 = (1 - max(1 - q_ * P30, 0.0) / (1 + q_ * dmax)) / (2 * math.log(2))
print(f"pillow(30dBW,1e-3) = {t1+t2+t3:.15g}  terms {t1:.15g} {t2:.15g} {t3:.15g}")

# flat k=0, c=1, r=0.5: theta2 by bisection on g(t) = (t-1)^+
A0 = 2.0 / 0.25
th2flat = brentq(lambda t: max(t - 1, 0) - 2 * t + A0, 1.0, 100.0, xtol=1e-14)
print(f"theta2(flat r=0.5) = {th2flat:.15g}")

# C_LB1 and delta1 at 20 dBW and at 0.1 W
def clb1(P, theta):
    dmin = max(theta - 1 / alpha**2, 0.0); dmax = max(theta - 1 / beta**2, 0.0)
    d1 = (-0.5 * math.log2(1 - q * dmax / (1 + alpha**2 * dmin))
          + (1 - max(1 - q * P, 0.0) / (1 + q * dmax)) / (2 * math.log(2)))
    return c0int(theta) - math.log2(1 + (K + 1) / 2 * nr2 * P) - d1, d1
v, d = clb1(P20, th20)
print(f"C_LB1(20dBW) = {v:.15g}  delta1 {d:.15g}")
v, d = clb1(P, th1)
print(f"C_LB1(0.1W)  = {v:.15g}  delta1 {d:.15g}")

# finite-n first term: n = 512, P = 100, water-fill over the Gram eigenvalues
from scipy.linalg import toeplitz, eigvalsh
n = 512
acf = np.zeros(n)
for j in range(K + 1):
    acf[j] = float(np.dot(C[: K + 1 - j], C[j:]))
lam = np.sort(eigvalsh(toeplitz(acf)))
lo, hi = 0.0, n * P20 + 1 / lam[0] + 1
for _ in range(300):
    mid = 0.5 * (lo + hi)
    if np.sum(np.maximum(mid - 1 / lam, 0.0)) > n * P20: hi = mid
    else: lo = mid
dfin = np.maximum(0.5 * (lo + hi) - 1 / lam, 0.0)
print(f"finite_n first_term(512, 20dBW) = {np.sum(np.log2(1 + lam * dfin)) / (2 * n):.15g}")

# ellipsoid shell volumes, Sigma = diag(linspace(0.5, 2, 20))
from scipy.special import gammaln
dv = np.linspace(0.5, 2.0, 20)
nn = 20
def log2vol(r):
    return ((nn / 2) * math.log2(math.pi * nn) - gammaln(nn / 2 + 1) / math.log(2)
            + 0.5 * float(np.sum(np.log2(dv))) + (nn / 2) * math.log2(r))
for eta in (0.5, 2.0):
    outer = 2 ** log2vol(1 + eta)
    inner = 2 ** log2vol(1 - eta) if eta < 1 else 0.0
    print(f"log2 vol(eta={eta}) = {math.log2(outer - inner):.15g}")
