"""Brute-force N, N1, N2 from the Hasse invariant criterion.

A nondegenerate quaternary form over Q_p is anisotropic exactly when its
discriminant is a square in Q_p and its Hasse invariant equals -(-1,-1)_p.
Nothing here shares code with the C++ library.

    python3 count_oracle.py 30 40 60
prints B,N,N1,N2 rows.
"""
import sys
from math import gcd, isqrt


def prime_factors(n):
    n = abs(n)
    out, p = [], 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def split(a, p):
    v = 0
    while a % p == 0:
        a //= p
        v += 1
    return v, a


def legendre(a, p):
    r = pow(a % p, (p - 1) // 2, p)
    return -1 if r == p - 1 else r


def hilbert(a, b, p):
    va, u = split(a, p)
    vb, w = split(b, p)
    if p == 2:
        e = lambda x: ((x - 1) // 2) % 2
        om = lambda x: ((x * x - 1) // 8) % 2
        s = e(u) * e(w) + va * om(w) + vb * om(u)
        return -1 if s % 2 else 1
    s = (-1) ** ((va * vb * ((p - 1) // 2)) % 2)
    return s * legendre(u, p) ** vb * legendre(w, p) ** va


def square_in_Qp(d, p):
    v, u = split(d, p)
    if v % 2:
        return False
    return u % 8 == 1 if p == 2 else legendre(u, p) == 1


def isotropic(a):
    if all(x > 0 for x in a) or all(x < 0 for x in a):
        return False
    d = a[0] * a[1] * a[2] * a[3]
    for p in set([2] + prime_factors(d)):
        eps = 1
        for i in range(4):
            for j in range(i + 1, 4):
                eps *= hilbert(a[i], a[j], p)
        if square_in_Qp(d, p) and eps == -hilbert(-1, -1, p):
            return False
    return True


def is_square(n):
    return n >= 0 and isqrt(n) ** 2 == n


def counts(B):
    raw = n1 = n2 = 0
    for t0 in range(-B, B + 1):
        for t1 in range(-B, B + 1):
            if t0 == 0 or t1 == 0 or gcd(t0, t1) != 1:
                continue
            h01 = max(abs(t0), abs(t1))
            lim = B // h01
            for t2 in range(-lim, lim + 1):
                for t3 in range(-lim, lim + 1):
                    if t2 == 0 or t3 == 0 or gcd(t2, t3) != 1:
                        continue
                    if max(abs(t2), abs(t3)) * h01 > B:
                        continue
                    if not is_square(-t0 * t1) and not is_square(-t2 * t3):
                        if isotropic([t0 * t2, t1 * t3, t1 * t2, t0 * t3]):
                            raw += 1
                    if min(t0, t1, t2, t3) < 0:
                        continue
                    if not is_square(t0 * t1):
                        if isotropic([-t0 * t2, t1 * t3, t1 * t2, -t0 * t3]):
                            n1 += 1
                        if not is_square(t2 * t3) and isotropic([t0 * t2, t1 * t3, -t1 * t2, -t0 * t3]):
                            n2 += 1
    assert raw % 4 == 0
    return raw // 4, n1, n2


if __name__ == "__main__":
    print("B,N,N1,N2")
    for arg in sys.argv[1:]:
        B = int(arg)
        print(",".join(map(str, (B,) + counts(B))))
