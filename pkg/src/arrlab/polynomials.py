"""Integer univariate polynomial helpers.

Polynomials are tuples of ints indexed by power (coeffs[i] is the t^i
coefficient).  Everything is exact; division raises unless it is exact.
"""

from __future__ import annotations

from .errors import InputError


def trim(coeffs) -> tuple[int, ...]:
    c = list(coeffs)
    while len(c) > 1 and c[-1] == 0:
        c.pop()
    return tuple(c)


def add(p, q) -> tuple[int, ...]:
    n = max(len(p), len(q))
    return trim(tuple((p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0) for i in range(n)))


def neg(p) -> tuple[int, ...]:
    return tuple(-c for c in p)


def sub(p, q) -> tuple[int, ...]:
    return add(p, neg(q))


def mul(p, q) -> tuple[int, ...]:
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a == 0:
            continue
        for j, b in enumerate(q):
            out[i + j] += a * b
    return trim(out)


def scale_var(p, k: int) -> tuple[int, ...]:
    """p(t) * t^k."""
    return trim((0,) * k + tuple(p))


def divmod_exact(p, q):
    """Polynomial division over Z; returns (quotient, remainder)."""
    p = list(trim(p))
    q = trim(q)
    if q == (0,):
        raise InputError("division by zero polynomial")
    dq = len(q) - 1
    lead = q[-1]
    quot = [0] * max(1, len(p) - dq)
    while len(p) - 1 >= dq and any(p):
        dp = len(p) - 1
        if dp < dq:
            break
        c, r = divmod(p[-1], lead)
        if r != 0:
            break
        quot[dp - dq] = c
        for i in range(len(q)):
            p[dp - dq + i] -= c * q[i]
        p = list(trim(p))
        if p == [0]:
            p = [0]
            break
    return trim(quot), trim(p)


def divides(q, p) -> bool:
    """True iff q divides p exactly over Z."""
    _, rem = divmod_exact(p, q)
    return rem == (0,)


def evaluate(p, x: int) -> int:
    acc = 0
    for c in reversed(p):
        acc = acc * x + c
    return acc


def from_roots(roots) -> tuple[int, ...]:
    out = (1,)
    for r in roots:
        out = mul(out, (-r, 1))
    return out


def _divisors(n: int):
    n = abs(n)
    out = []
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            if d != n // d:
                out.append(n // d)
        d += 1
    return sorted(out)


def integer_roots(p):
    """Integer roots of a monic-leading integer polynomial, with
    multiplicity, or None if it does not split into linear factors over Z.

    Uses trial division of the constant term's divisors only (exactness;
    no numerical root finding)."""
    p = trim(p)
    if len(p) == 1:
        return None if p[0] == 0 else ()
    roots = []
    while len(p) > 1 and p[0] == 0:
        roots.append(0)
        p = trim(p[1:])
    while len(p) > 1:
        found = None
        for d in _divisors(p[0]):
            for cand in (d, -d):
                if evaluate(p, cand) == 0:
                    found = cand
                    break
            if found is not None:
                break
        if found is None:
            return None
        q, rem = divmod_exact(p, (-found, 1))
        if rem != (0,):
            return None
        roots.append(found)
        p = q
    return tuple(sorted(roots))


def to_string(p, var: str = "t") -> str:
    p = trim(p)
    if p == (0,):
        return "0"
    parts = []
    for i in range(len(p) - 1, -1, -1):
        c = p[i]
        if c == 0:
            continue
        if i == 0:
            term = str(abs(c))
        else:
            mag = "" if abs(c) == 1 else f"{abs(c)}*"
            term = f"{mag}{var}" + (f"^{i}" if i > 1 else "")
        if not parts:
            parts.append(("-" if c < 0 else "") + term)
        else:
            parts.append(("- " if c < 0 else "+ ") + term)
    return " ".join(parts)
