"""Generate Alpert hybrid Gauss-trapezoidal correction tables for log singularities.

Solves the 2j moment equations for j nodes/weights per side, replacing the
trapezoidal points 0 < i < a:

    sum_k w_k x_k^b          = -zeta(-b)  + sum_{i<a} i^b
    sum_k w_k x_k^b log x_k  =  zeta'(-b) + sum_{i<a} i^b log i,   b = 0..j-1

in a shifted Legendre basis on [0, a], by Newton continuation from a positive
starting rule. Usage: python alpert_log_rules.py J A   (e.g. 15 10 for order 16)
"""
import sys

import mpmath as mp

mp.mp.dps = 80


def monomial_targets(j, a):
    p = [-mp.zeta(-b) + sum(mp.mpf(i) ** b for i in range(1, a)) for b in range(j)]
    l = [mp.zeta(-b, derivative=1) + sum(mp.mpf(i) ** b * mp.log(i) for i in range(1, a)) for b in range(j)]
    return p, l


def legendre_monomials(j, a):
    """Monomial coefficients of P_b(2x/a - 1), b < j."""
    out = []
    for b in range(j):
        cy = mp.taylor(lambda y: mp.legendre(b, y), 0, b)
        cx = [mp.mpf(0)] * (b + 1)
        for k, ck in enumerate(cy):
            for m in range(k + 1):
                cx[m] += ck * mp.binomial(k, m) * (2 / mp.mpf(a)) ** m * (-1) ** (k - m)
        out.append(cx)
    return out


def system(j, a):
    A = mp.mpf(a)
    pm, lm = monomial_targets(j, a)
    C = legendre_monomials(j, a)
    target = [sum(c * pm[m] for m, c in enumerate(C[b])) for b in range(j)]
    target += [sum(c * lm[m] for m, c in enumerate(C[b])) for b in range(j)]

    def basis(x):
        y = 2 * x / A - 1
        P, dP = [mp.mpf(1), y], [mp.mpf(0), mp.mpf(1)]
        for n in range(1, j - 1):
            P.append(((2 * n + 1) * y * P[n] - n * P[n - 1]) / (n + 1))
            dP.append(dP[n - 1] + (2 * n + 1) * P[n])
        return P[:j], [d * 2 / A for d in dP[:j]]

    # Unknowns: (log x_k, w_k).
    def moments(v):
        m = [mp.mpf(0)] * (2 * j)
        for k in range(j):
            lx, w = v[k], v[j + k]
            P, _ = basis(mp.e ** lx)
            for b in range(j):
                m[b] += w * P[b]
                m[j + b] += w * P[b] * lx
        return m

    def jacobian(v):
        J = mp.matrix(2 * j, 2 * j)
        for k in range(j):
            lx, w = v[k], v[j + k]
            x = mp.e ** lx
            P, dP = basis(x)
            for b in range(j):
                J[b, k] = w * dP[b] * x
                J[b, j + k] = P[b]
                J[j + b, k] = w * (dP[b] * x * lx + P[b])
                J[j + b, j + k] = P[b] * lx
        return J

    return target, moments, jacobian


def newton(v, tgt, moments, jacobian, j, maxit=12):
    for _ in range(maxit):
        res = [m - t for m, t in zip(moments(v), tgt)]
        if mp.sqrt(sum(r * r for r in res)) < mp.mpf(10) ** -60:
            return v, True
        d = mp.lu_solve(jacobian(v), mp.matrix([-r for r in res]))
        if max(abs(d[i]) for i in range(j)) > 0.5:
            return v, False
        v = [v[i] + d[i] for i in range(2 * j)]
    return v, False


def solve(j, a):
    target, moments, jacobian = system(j, a)
    A = mp.mpf(a)
    half = mp.mpf("0.5")
    xs = [(A - half) * ((k + half) / j) ** 2 for k in range(j)]
    ws = [2 * (A - half) * ((k + half) / j) / j for k in range(j)]
    v = [mp.log(x) for x in xs] + ws
    start = moments(v)
    lam, step = mp.mpf(0), mp.mpf("0.01")
    while lam < 1:
        nl = min(lam + step, mp.mpf(1))
        tgt = [(1 - nl) * m + nl * t for m, t in zip(start, target)]
        nv, ok = newton(v, tgt, moments, jacobian, j)
        if ok:
            v, lam, step = nv, nl, step * mp.mpf("1.5")
        else:
            step /= 3
            if step < mp.mpf("1e-12"):
                raise RuntimeError(f"continuation stalled at {mp.nstr(lam, 5)}")
    return [mp.e ** x for x in v[:j]], v[j:]


if __name__ == "__main__":
    j, a = map(int, sys.argv[1:3])
    for x, w in zip(*solve(j, a)):
        print(mp.nstr(x, 24, min_fixed=1, max_fixed=0), mp.nstr(w, 24, min_fixed=1, max_fixed=0))
