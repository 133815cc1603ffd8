"""Dense univariate polynomial arithmetic over Q(i).

Polynomials are tuples of Scalar coefficients, lowest degree first, with no
trailing zeros; the zero polynomial is the empty tuple. Everything here is
exact, and the quotient-ring helpers (mulmod / invmod / compose_mod) are
what the Newton iteration for the Jordan decomposition runs on.
"""

from __future__ import annotations

from .scalars import ONE, ZERO, Scalar


def pnormal(coeffs) -> tuple:
    cs = [c if isinstance(c, Scalar) else Scalar(c) for c in coeffs]
    while cs and not cs[-1]:
        cs.pop()
    return tuple(cs)


def deg(f) -> int:
    """Degree, with deg 0 = -1."""
    return len(f) - 1


def padd(f, g):
    n = max(len(f), len(g))
    return pnormal(
        (f[i] if i < len(f) else ZERO) + (g[i] if i < len(g) else ZERO)
        for i in range(n)
    )


def psub(f, g):
    n = max(len(f), len(g))
    return pnormal(
        (f[i] if i < len(f) else ZERO) - (g[i] if i < len(g) else ZERO)
        for i in range(n)
    )


def pscale(a: Scalar, f):
    if not a:
        return ()
    return tuple(a * c for c in f)


def pmul(f, g):
    if not f or not g:
        return ()
    out = [ZERO] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if not a:
            continue
        for j, b in enumerate(g):
            out[i + j] = out[i + j] + a * b
    return pnormal(out)


def pdivmod(f, g):
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    q = [ZERO] * max(0, len(f) - len(g) + 1)
    r = list(f)
    inv_lead = ONE / g[-1]
    while len(r) >= len(g):
        while r and not r[-1]:
            r.pop()
        if len(r) < len(g):
            break
        c = r[-1] * inv_lead
        k = len(r) - len(g)
        q[k] = c
        for i, b in enumerate(g):
            r[k + i] = r[k + i] - c * b
        r.pop()
    return pnormal(q), pnormal(r)


def pmod(f, g):
    return pdivmod(f, g)[1]


def pmonic(f):
    if not f:
        return f
    if f[-1] == 1:
        return f
    return pscale(ONE / f[-1], f)


def pgcd(f, g):
    """Monic gcd by the Euclidean algorithm."""
    a, b = f, g
    while b:
        a, b = b, pmod(a, b)
    return pmonic(a)


def plcm(f, g):
    if not f or not g:
        return ()
    return pmonic(pdivmod(pmul(f, g), pgcd(f, g))[0])


def pderiv(f):
    return pnormal(Scalar(i) * f[i] for i in range(1, len(f)))


def peval(f, x: Scalar) -> Scalar:
    out = ZERO
    for c in reversed(f):
        out = out * x + c
    return out


def is_squarefree(f) -> bool:
    if deg(f) <= 1:
        return bool(f)
    return deg(pgcd(f, pderiv(f))) == 0


def squarefree_part(f):
    """The radical: product of distinct irreducible factors, monic."""
    if not f:
        return f
    g = pgcd(f, pderiv(f))
    return pmonic(pdivmod(f, g)[0])


# -- arithmetic in Q(i)[t]/(m) ------------------------------------------


def pmulmod(f, g, m):
    return pmod(pmul(f, g), m)


def pinvmod(f, m):
    """Inverse of f modulo m via extended Euclid; requires gcd(f, m) = 1."""
    r0, r1 = m, pmod(f, m)
    s0, s1 = (), (ONE,)
    while r1:
        q, r2 = pdivmod(r0, r1)
        r0, r1 = r1, r2
        s0, s1 = s1, psub(s0, pmul(q, s1))
    if deg(r0) != 0:
        raise ValueError("element is not invertible modulo m")
    return pmod(pscale(ONE / r0[0], s0), m)


def pcompose_mod(f, s, m):
    """f(s) mod m by Horner."""
    out = ()
    for c in reversed(f):
        out = pmod(padd(pmul(out, s), (c,)), m)
    return out


def semisimple_projector_poly(m):
    """Given a monic minimal polynomial m, return s with s == t modulo each
    irreducible factor of m taken once, i.e. the polynomial whose evaluation
    extracts the semisimple part of any operator with minimal polynomial m.

    Newton iteration on the radical f: s <- s - f(s)/f'(s) computed in
    Q(i)[t]/(m); the derivative stays invertible because f is squarefree.
    Converges quadratically, so log2(deg m) + 1 steps always suffice.
    """
    if not m:
        raise ValueError("zero modulus")
    m = pmonic(m)
    f = squarefree_part(m)
    s = pmod((ZERO, ONE), m)
    if psub(f, m) == ():
        return s  # already semisimple
    steps = 0
    while pcompose_mod(f, s, m):
        fp = pcompose_mod(pderiv(f), s, m)
        s = pmod(psub(s, pmul(pcompose_mod(f, s, m), pinvmod(fp, m))), m)
        steps += 1
        if steps > len(m):
            raise RuntimeError("Newton iteration failed to converge")
    return s


def poly_str(f, var="t") -> str:
    if not f:
        return "0"
    parts = []
    for i in range(len(f) - 1, -1, -1):
        c = f[i]
        if not c:
            continue
        if i == 0:
            parts.append(str(c))
        else:
            t = var if i == 1 else f"{var}^{i}"
            if c == 1:
                parts.append(t)
            elif c == -1:
                parts.append(f"-{t}")
            else:
                cs = str(c)
                if ("+" in cs[1:]) or ("-" in cs[1:]):
                    cs = f"({cs})"
                parts.append(f"{cs}*{t}")
    out = parts[0]
    for p in parts[1:]:
        out += p if p.startswith("-") else "+" + p
    return out
