"""Exact real-root certificates (Sturm sequences over Q) and numeric roots.

Certificates never touch floating point. ``numeric_roots`` is the only
approximate routine; it runs an Aberth-Ehrlich iteration in mpmath on each
square-free factor so that repeated roots do not limit its accuracy.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

import mpmath

from .cyclotomic import Cyc8
from .poly import IntPoly

__all__ = [
    "NotIntegral",
    "Certificate",
    "RootReport",
    "HalfplaneReport",
    "to_int_poly",
    "square_free_decomposition",
    "sturm_sequence",
    "sturm_count",
    "isolate_real_roots",
    "certify_real_negative",
    "certify_deg2_bound",
    "certify_purely_imaginary",
    "numeric_roots",
    "check_halfplane_negative",
]

QPoly = list  # ascending list of Fractions, no trailing zeros
Endpoint = Optional[Fraction]  # None stands for -inf (lo) or +inf (hi)


class NotIntegral(ValueError):
    def __init__(self, degree: int, coeff):
        self.degree = degree
        super().__init__(f"coefficient of z^{degree} is not a rational integer: {coeff}")


def to_int_poly(coeffs: Sequence[Cyc8]) -> IntPoly:
    out = []
    for k, c in enumerate(coeffs):
        c = Cyc8.coerce(c)
        if not c.is_integer():
            raise NotIntegral(k, c)
        out.append(int(c.coords[0]))
    return IntPoly(tuple(out))


# -- dense arithmetic over Q -----------------------------------------------


def _strip(p: QPoly) -> QPoly:
    while p and p[-1] == 0:
        p.pop()
    return p


def _qpoly(p) -> QPoly:
    if isinstance(p, IntPoly):
        return [Fraction(c) for c in p.coeffs]
    return _strip([Fraction(c) for c in p])


def _deriv(p: QPoly) -> QPoly:
    return _strip([k * c for k, c in enumerate(p)][1:])


def _divmod(a: QPoly, b: QPoly) -> tuple[QPoly, QPoly]:
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = list(a)
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    lead = b[-1]
    while len(a) >= len(b) and a:
        shift = len(a) - len(b)
        f = a[-1] / lead
        q[shift] = f
        for i, c in enumerate(b):
            a[shift + i] -= f * c
        a.pop()
        _strip(a)
    return _strip(q), a


def _monic(p: QPoly) -> QPoly:
    return [c / p[-1] for c in p] if p else p


def _gcd(a: QPoly, b: QPoly) -> QPoly:
    while b:
        a, b = b, _divmod(a, b)[1]
    return _monic(a)


def _eval(p: QPoly, x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(p):
        acc = acc * x + c
    return acc


def square_free_decomposition(p) -> list[tuple[QPoly, int]]:
    """Yun's algorithm: monic square-free, pairwise coprime factors with multiplicities.

    ``p == lc(p) * prod(f ** m)``; constant factors are omitted.
    """
    p = _qpoly(p)
    if not p:
        raise ValueError("zero polynomial has no square-free decomposition")
    out: list[tuple[QPoly, int]] = []
    if len(p) == 1:
        return out
    dp = _deriv(p)
    a = _gcd(p, dp)
    b = _divmod(p, a)[0]
    c = _divmod(dp, a)[0]
    d = _strip([x - y for x, y in _pad(c, _deriv(b))])
    k = 1
    while len(b) > 1:
        a = _gcd(b, d)
        if len(a) > 1:
            out.append((a, k))
        b = _divmod(b, a)[0]
        c = _divmod(d, a)[0]
        d = _strip([x - y for x, y in _pad(c, _deriv(b))])
        k += 1
    return out


def _pad(a: QPoly, b: QPoly):
    n = max(len(a), len(b))
    return zip(a + [Fraction(0)] * (n - len(a)), b + [Fraction(0)] * (n - len(b)))


def sturm_sequence(p) -> list[QPoly]:
    """Sturm sequence of the square-free part of ``p``."""
    p = _qpoly(p)
    if not p:
        raise ValueError("identically zero polynomial")
    g = _gcd(p, _deriv(p)) if len(p) > 1 else [Fraction(1)]
    f = _divmod(p, g)[0]
    seq = [f, _deriv(f)]
    while seq[-1]:
        r = _divmod(seq[-2], seq[-1])[1]
        seq.append([-c for c in r])
    return seq[:-1]


def _sign_at(p: QPoly, x: Endpoint, at_minus_inf: bool) -> int:
    if x is None:
        lead = 1 if p[-1] > 0 else -1
        if at_minus_inf and (len(p) - 1) % 2:
            return -lead
        return lead
    v = _eval(p, x)
    return (v > 0) - (v < 0)


def _variations(seq: list[QPoly], x: Endpoint, at_minus_inf: bool = False) -> int:
    signs = [s for s in (_sign_at(p, x, at_minus_inf) for p in seq) if s]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def sturm_count(p, lo: Endpoint = None, hi: Endpoint = None, *, seq=None) -> int:
    """Number of distinct real roots of ``p`` in (lo, hi]; None means infinite."""
    if seq is None:
        seq = sturm_sequence(p)
    lo = None if lo is None else Fraction(lo)
    hi = None if hi is None else Fraction(hi)
    if lo is not None and hi is not None and lo >= hi:
        return 0
    return _variations(seq, lo, at_minus_inf=True) - _variations(seq, hi)


def _cauchy_bound(p: QPoly) -> Fraction:
    lead = abs(p[-1])
    return 1 + max((abs(c) / lead for c in p[:-1]), default=Fraction(0))


def isolate_real_roots(p) -> list[tuple[Fraction, Fraction, int]]:
    """Disjoint intervals (lo, hi] each holding one distinct real root, with multiplicity.

    Bisection on Sturm counts of the square-free part, then each interval is
    assigned the multiplicity of the square-free factor that vanishes in it.
    """
    q = _qpoly(p)
    if not q:
        raise ValueError("identically zero polynomial")
    if len(q) == 1:
        return []
    seq = sturm_sequence(q)
    bound = _cauchy_bound(q)
    # split at 0 first so no interval straddles the origin
    todo = [(Fraction(0), bound), (-bound, Fraction(0))]
    found = []
    while todo:
        lo, hi = todo.pop()
        n = sturm_count(None, lo, hi, seq=seq)
        if n == 0:
            continue
        if n == 1:
            found.append((lo, hi))
            continue
        mid = (lo + hi) / 2
        todo.append((mid, hi))
        todo.append((lo, mid))
    found.sort()
    factors = [(sturm_sequence(f), m) for f, m in square_free_decomposition(q)]
    out = []
    for lo, hi in found:
        mult = next(m for s, m in factors if sturm_count(None, lo, hi, seq=s) == 1)
        out.append((lo, hi, mult))
    return out


# -- certificates ----------------------------------------------------------


def _fmt(x: Fraction) -> str:
    return str(x)


@dataclass
class Certificate:
    """Exact verdict on where the roots of a polynomial lie.

    Intervals are half-open (lo, hi] with rational endpoints; ``counts`` holds
    the Sturm count recorded for each interval so the evidence can be
    re-checked with ``recheck``.
    """

    property: str
    verdict: str
    isolating_intervals: list[tuple[Fraction, Fraction]] = field(default_factory=list)
    multiplicities: list[int] = field(default_factory=list)
    notes: str = ""
    counts: list[int] = field(default_factory=list)
    subject: Optional[IntPoly] = None
    window: Optional[tuple[Fraction, Fraction]] = None
    window_count: Optional[int] = None

    @property
    def proven(self) -> bool:
        return self.verdict == "proven"

    def __bool__(self) -> bool:
        return self.proven

    def to_dict(self) -> dict:
        return {
            "property": self.property,
            "verdict": self.verdict,
            "isolating_intervals": [[_fmt(a), _fmt(b)] for a, b in self.isolating_intervals],
            "multiplicities": list(self.multiplicities),
            "notes": self.notes,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    def recheck(self) -> bool:
        """Recount roots of the certified polynomial in every recorded interval."""
        if self.subject is None:
            raise ValueError("certificate carries no subject polynomial")
        seq = sturm_sequence(self.subject)
        got = [sturm_count(None, lo, hi, seq=seq) for lo, hi in self.isolating_intervals]
        if self.window is not None and sturm_count(None, *self.window, seq=seq) != self.window_count:
            return False
        return got == self.counts


def _real_cert(p: IntPoly, allow_zero_root: bool, prop: str) -> Certificate:
    if p.is_zero:
        raise ValueError("identically zero polynomial; handle the vanishing case first")
    roots = isolate_real_roots(p)
    intervals = [(lo, hi) for lo, hi, _ in roots]
    mults = [m for _, _, m in roots]
    zero_mult = next(k for k, c in enumerate(p.coeffs) if c)
    # intervals never straddle 0; one ending at 0 holds the root 0 iff p(0) == 0
    negative = sum(m for lo, hi, m in roots if hi < 0 or (hi == 0 and not zero_mult))
    seq = sturm_sequence(p)
    region = "(-inf, 0]" if allow_zero_root else "(-inf, 0)"
    in_region = negative + (zero_mult if allow_zero_root else 0)
    counts = [sturm_count(None, lo, hi, seq=seq) for lo, hi in intervals]
    notes = f"{in_region} of {p.degree} roots (with multiplicity) are real in {region}"
    if zero_mult:
        notes += f"; z = 0 is a root of multiplicity {zero_mult}"
    proven = in_region == p.degree
    if not proven:
        nonreal = p.degree - sum(mults)
        if nonreal:
            notes += f"; {nonreal} roots are not real"
        if zero_mult and not allow_zero_root:
            notes += "; root at 0 excluded from the region"
    return Certificate(
        prop, "proven" if proven else "refuted", intervals, mults, notes, counts, p
    )


def certify_real_negative(p: IntPoly, allow_zero_root: bool = False) -> Certificate:
    """Prove or refute that every root of ``p`` is real and < 0 (or <= 0)."""
    prop = "real-nonpositive" if allow_zero_root else "real-negative"
    return _real_cert(p, allow_zero_root, prop)


def certify_deg2_bound(p: IntPoly, d2: int) -> Certificate:
    """Prove or refute that all roots are real and <= -1/d2."""
    if d2 < 0:
        raise ValueError("deg2 must be nonnegative")
    if d2 == 0:
        if p.degree != 0:
            raise ValueError("deg2 = 0 only arises for arcless graphs, whose polynomial is constant")
        return Certificate("deg2-bound", "proven", notes="no arcs: constant polynomial, no roots",
                           subject=p)
    base = certify_real_negative(p)
    bound = Fraction(-1, d2)
    seq = sturm_sequence(p)
    window = (bound, Fraction(0))
    window_count = sturm_count(None, *window, seq=seq)
    inside = window_count - (1 if p[0] == 0 else 0)
    notes = f"deg2 = {d2}; {inside} distinct real roots in ({bound}, 0)"
    proven = base.proven and inside == 0
    if not base.proven:
        notes += "; not all roots are real and negative: " + base.notes
    return Certificate("deg2-bound", "proven" if proven else "refuted",
                       base.isolating_intervals, base.multiplicities, notes,
                       base.counts, p, window, window_count)


def certify_purely_imaginary(p: IntPoly) -> Certificate:
    """Prove or refute that every root of ``p`` lies on the imaginary axis.

    Requires only even powers; then q(u) with z**2 = u must have all roots
    real and <= 0. Intervals and multiplicities are reported for q.
    """
    if p.is_zero:
        raise ValueError("identically zero polynomial")
    odd = p.odd_exponents()
    if odd:
        return Certificate(
            "purely-imaginary", "refuted",
            notes=f"odd exponent present: z^{odd[0]} has coefficient {p[odd[0]]}"
            + ("; with p(0) != 0 the root set is not symmetric under z -> -z"
               if p[0] else "; p(0) = 0, refuted by the parity rule only"),
            subject=p,
        )
    q = IntPoly(p.coeffs[::2])
    inner = certify_real_negative(q, allow_zero_root=True)
    notes = "substituted u = z^2; " + inner.notes
    if q.degree > 0 and q[0] == 0:
        notes += "; degenerate root z = 0 counted as imaginary"
    inner.property = "purely-imaginary"
    inner.notes = notes
    return inner


# -- numerics --------------------------------------------------------------


@dataclass
class RootReport:
    roots: list[complex]
    residuals: list[float]
    converged: bool
    iterations: int

    def to_dict(self) -> dict:
        return {
            "roots": [[z.real, z.imag] for z in self.roots],
            "residuals": self.residuals,
            "converged": self.converged,
            "iterations": self.iterations,
        }


MAX_ITER = 500
_DPS = 60


def _aberth(coeffs: list, tol: float) -> tuple[list, bool, int]:
    """Aberth-Ehrlich iteration on a square-free polynomial (ascending mpf coeffs)."""
    n = len(coeffs) - 1
    if n == 1:
        return [-coeffs[0] / coeffs[1]], True, 0
    desc = coeffs[::-1]
    ddesc = [c * (n - k) for k, c in enumerate(desc[:-1])]
    lead = abs(coeffs[-1])
    radius = 1 + max(abs(c) / lead for c in coeffs[:-1])
    # offset angle keeps starts off the real axis and away from symmetric traps
    z = [radius * mpmath.expj(2 * mpmath.pi * k / n + mpmath.mpf("0.4")) for k in range(n)]
    for it in range(1, MAX_ITER + 1):
        worst = mpmath.mpf(0)
        for i in range(n):
            pz = mpmath.polyval(desc, z[i])
            if pz == 0:
                continue
            ratio = pz / mpmath.polyval(ddesc, z[i])
            s = mpmath.fsum(1 / (z[i] - z[j]) for j in range(n) if j != i)
            step = ratio / (1 - ratio * s)
            z[i] -= step
            worst = max(worst, abs(step))
        if worst < tol:
            return z, True, it
    return z, False, MAX_ITER


def numeric_roots(p: IntPoly, tol: float = 1e-12) -> RootReport:
    """Approximate all roots of ``p`` with their |p(root)| residuals.

    Each square-free factor is solved separately, so a root of multiplicity
    m is reported m times. Starts sit on a circle whose radius is the
    Cauchy bound of the factor.
    """
    if p.is_zero or p.degree < 1:
        raise ValueError("numeric_roots needs a polynomial of degree >= 1")
    roots: list = []
    converged, iters = True, 0
    with mpmath.workdps(_DPS):
        for f, m in square_free_decomposition(p):
            coeffs = [mpmath.mpf(c.numerator) / c.denominator for c in f]
            z, ok, it = _aberth(coeffs, tol)
            converged &= ok
            iters = max(iters, it)
            roots.extend(r for r in z for _ in range(m))
        desc = [mpmath.mpf(c) for c in reversed(p.coeffs)]
        residuals = [float(abs(mpmath.polyval(desc, r))) for r in roots]
        roots = [complex(mpmath.mpc(r)) for r in roots]
    order = sorted(range(len(roots)), key=lambda i: (roots[i].real, roots[i].imag))
    return RootReport([roots[i] for i in order], [residuals[i] for i in order], converged, iters)


@dataclass
class HalfplaneReport:
    ok: bool
    max_real_part: Optional[float]
    tol: float
    roots: list[complex]

    def __bool__(self) -> bool:
        return self.ok

    def to_dict(self) -> dict:
        return {
            "ok": self.ok,
            "max_real_part": self.max_real_part,
            "tol": self.tol,
            "certified": False,
        }


def check_halfplane_negative(p: IntPoly, tol: float = 1e-9) -> HalfplaneReport:
    """Numeric check that every root has real part < -tol. Not a certificate."""
    if p.is_zero:
        raise ValueError("identically zero polynomial")
    if p.degree < 1:
        return HalfplaneReport(True, None, tol, [])
    report = numeric_roots(p)
    worst = max(z.real for z in report.roots)
    return HalfplaneReport(worst < -tol, worst, tol, report.roots)
