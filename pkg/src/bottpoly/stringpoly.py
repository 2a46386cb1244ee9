"""Generalized string polytopes ``Delta_{i,m}``.

Membership is decided pointwise by the descending recursion

    x^(n) = x,   x_i^(k-1) = min(x_i^(k), Psi^(k)(i)),

where ``Psi^(k)(i)`` is the maximum of

    s(i,j,k) = x_j^(k) - sum_{i<s<=j} <beta_s, beta_k^vee> x_s^(k)
               + sum_{i<=s<j} [i_k = i_s] m_s

over ``i < j <= k`` with ``beta_j = beta_k`` when ``beta_i = beta_k``, and is
``x_i^(k)`` otherwise.  A point lies in ``Delta`` iff every ``Psi`` is
non-negative and it lies in the twisted cube.  The recursion is run verbatim
on rationals; no H-description of ``Delta`` is ever built.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from . import polyhedra
from .errors import DomainError, PreconditionError, ResourceError
from .polyhedra import DEFAULT_LATTICE_CAP
from .rootsys import RootDatum, is_dominant
from .twistedcube import WordMult, a_forms, satisfies_P, twisted_cube


def _num(v):
    if isinstance(v, Fraction) and v.denominator == 1:
        return v.numerator
    return v


@dataclass
class PsiTrace:
    levels: dict[int, tuple]  # k -> x^(k)
    psi: dict[tuple[int, int], object]  # (k, i) -> Psi^(k)(i)
    s_values: dict[tuple[int, int, int], object] = field(default_factory=dict)  # (i, j, k) -> s(i,j,k)


def _walk(wm: WordMult, x: Sequence, trace: PsiTrace | None):
    """Run the recursion; return the first ``(k, i, value)`` with a negative Psi, or None.

    With a trace the full recursion is recorded; without one it stops at the
    first violation.
    """
    c = wm.datum.cartan
    w, m = wm.word, wm.mult
    n = wm.n
    cur = list(x)
    first = None
    if trace is not None:
        trace.levels[n] = tuple(cur)
    for k in range(n, 1, -1):
        kk = k - 1
        bk = w[kk]
        crow = c[bk - 1]
        new = []
        for ii in range(kk):
            if w[ii] == bk:
                best = None
                cart = 0
                mass = 0
                for jj in range(ii + 1, k):
                    # s(i,j,k): sums over i<s<=j and i<=s<j grow by one term each step
                    cart += crow[w[jj] - 1] * cur[jj]
                    if w[jj - 1] == bk:
                        mass += m[jj - 1]
                    if w[jj] != bk:
                        continue
                    s_val = cur[jj] - cart + mass
                    if trace is not None:
                        trace.s_values[(ii + 1, jj + 1, k)] = _num(s_val)
                    if best is None or s_val > best:
                        best = s_val
                psi = best
            else:
                psi = cur[ii]
            if trace is not None:
                trace.psi[(k, ii + 1)] = _num(psi)
            if psi < 0 and first is None:
                first = (k, ii + 1, _num(psi))
                if trace is None:
                    return first
            new.append(psi if psi < cur[ii] else cur[ii])
        cur = new
        if trace is not None:
            trace.levels[k - 1] = tuple(_num(v) for v in cur)
    return first


def _coerce_point(wm: WordMult, x: Sequence) -> list:
    if len(x) != wm.n:
        raise DomainError(f"point of length {len(x)} for a word of length {wm.n}")
    out = []
    for v in x:
        if isinstance(v, int):
            out.append(v)
        else:
            q = Fraction(v)
            out.append(q.numerator if q.denominator == 1 else q)
    return out


def psi_trace(wm: WordMult, x: Sequence) -> PsiTrace:
    pt = _coerce_point(wm, x)
    trace = PsiTrace({}, {}, {})
    _walk(wm, pt, trace)
    return trace


@dataclass(frozen=True)
class StringMembership:
    inside: bool
    # ("box", j, side) or ("psi", k, i); None when inside
    violation: tuple | None = None
    value: object = None

    def __bool__(self) -> bool:
        return self.inside


def _box_violation(wm: WordMult, x: Sequence):
    forms = a_forms(wm)
    for j in range(wm.n - 1, -1, -1):
        if x[j] < 0:
            return ("box", j + 1, "lower"), _num(x[j])
        a = forms[j](x)
        if x[j] > a:
            return ("box", j + 1, "upper"), _num(a)
    return None


def in_delta(wm: WordMult, x: Sequence) -> StringMembership:
    pt = _coerce_point(wm, x)
    box = _box_violation(wm, pt)
    if box is not None:
        return StringMembership(False, box[0], box[1])
    bad = _walk(wm, pt, None)
    if bad is not None:
        k, i, val = bad
        return StringMembership(False, ("psi", k, i), val)
    return StringMembership(True)


def m_of_lambda(datum: RootDatum, word: Sequence[int], lam: Sequence[int]) -> tuple[int, ...]:
    """Put ``lam_a`` at the rightmost occurrence of each letter ``a``, zeros elsewhere."""
    word = datum.check_word(word)
    lam = datum.check_weight(lam)
    if not is_dominant(lam):
        raise DomainError(f"weight {lam} is not dominant")
    m = [0] * len(word)
    for a in range(1, datum.rank + 1):
        pos = [j for j, letter in enumerate(word) if letter == a]
        if pos:
            m[pos[-1]] = lam[a - 1]
    return tuple(m)


class _DeltaScanner:
    """Depth-first walk over the lattice points of ``Delta_{i,m}``, last coordinate outermost.

    ``x_s^(k)`` only depends on ``x_s..x_n``, and when ``beta_i = beta_k`` so
    does ``Psi^(k)(i)`` on ``x_{i+1}..x_n``.  The Psi values for coordinate
    ``i`` are therefore computed once per suffix, and the first coordinate is
    never enumerated when only counting.  Agrees with filtering the twisted
    cube through ``in_delta``.
    """

    def __init__(self, wm: WordMult) -> None:
        n = self.n = wm.n
        w = self.w = wm.word
        self.m = wm.mult
        forms = a_forms(wm)
        self.consts = [f.constant for f in forms]
        self.coeffs = [[(l, c) for l, c in enumerate(f.coeffs) if c] for f in forms]
        cart = wm.datum.cartan
        self.crow = [cart[w[k] - 1] for k in range(n)]
        # levels k (1-based, descending) whose Psi at coordinate i is a genuine maximum
        self.levels = [[k for k in range(n, i + 1, -1) if w[k - 1] == w[i]] for i in range(n)]
        # X[s][k] = x_s^(k)
        self.X = [[0] * (n + 1) for _ in range(n)]

    def upper(self, i: int, x: list[int]) -> int:
        return self.consts[i] + sum(c * x[l] for l, c in self.coeffs[i])

    def psis(self, i: int):
        """``[(k, Psi^(k)(i))]`` for the same-letter levels, or None if one is negative."""
        X, w, m = self.X, self.w, self.m
        out = []
        for k in self.levels[i]:
            bk = w[k - 1]
            crow = self.crow[k - 1]
            best = None
            cart = mass = 0
            for jj in range(i + 1, k):
                xv = X[jj][k]
                cart += crow[w[jj] - 1] * xv
                if w[jj - 1] == bk:
                    mass += m[jj - 1]
                if w[jj] == bk:
                    v = xv - cart + mass
                    if best is None or v > best:
                        best = v
            if best < 0:
                return None
            out.append((k, best))
        return out

    def fill(self, i: int, v: int, psis) -> None:
        col = self.X[i]
        col[self.n] = v
        cur = v
        idx = 0
        for k in range(self.n, i + 1, -1):
            if idx < len(psis) and psis[idx][0] == k:
                if psis[idx][1] < cur:
                    cur = psis[idx][1]
                idx += 1
            col[k - 1] = cur

    def points(self, cap: int):
        n = self.n
        if n == 0:
            yield ()
            return
        x = [0] * n
        budget = [cap]

        def rec(i):
            ps = self.psis(i)
            if ps is None:
                return
            hi = self.upper(i, x)
            if hi < 0:
                return
            budget[0] -= hi + 1
            if budget[0] < 0:
                raise ResourceError(f"lattice point scan exceeded cap of {cap} candidates")
            for v in range(hi + 1):
                x[i] = v
                if i == 0:
                    yield tuple(x)
                else:
                    self.fill(i, v, ps)
                    yield from rec(i - 1)
            x[i] = 0

        yield from rec(n - 1)

    def count(self, cap: int, partner: "_DeltaScanner | None" = None):
        """``(points, missing, first_missing)``; missing is relative to ``partner``'s polytope."""
        n = self.n
        if n == 0:
            return 1, 0, None
        x = [0] * n
        budget = cap
        total = missing = 0
        first = None

        def rec(i, ok):
            nonlocal budget, total, missing, first
            ps = self.psis(i)
            if ps is None:
                return
            hi = self.upper(i, x)
            if hi < 0:
                return
            phi = -1
            pps = None
            if ok:
                pps = partner.psis(i)
                if pps is None:
                    ok = False
                else:
                    phi = partner.upper(i, x)
            if i == 0:
                total += hi + 1
                if partner is not None:
                    inside = min(hi, phi) + 1 if ok and phi >= 0 else 0
                    if inside <= hi:
                        missing += hi + 1 - inside
                        if first is None:
                            first = (inside,) + tuple(x[1:])
                return
            budget -= hi + 1
            if budget < 0:
                raise ResourceError(f"lattice point scan exceeded cap of {cap} candidates")
            for v in range(hi + 1):
                x[i] = v
                self.fill(i, v, ps)
                sub_ok = ok and v <= phi
                if sub_ok:
                    partner.fill(i, v, pps)
                rec(i - 1, sub_ok)
            x[i] = 0

        rec(n - 1, partner is not None)
        return total, missing, first


def iter_delta_lattice_points(wm: WordMult, dilate: int = 1, cap: int = DEFAULT_LATTICE_CAP):
    if dilate < 1:
        raise DomainError("dilate must be a positive integer")
    return _DeltaScanner(wm.scaled(dilate)).points(cap)


def filtered_delta_lattice_points(wm: WordMult, dilate: int = 1, cap: int = DEFAULT_LATTICE_CAP):
    """Reference enumeration: lattice points of the dilated twisted cube that pass ``in_delta``.

    Slower than ``iter_delta_lattice_points`` but uses nothing beyond the
    definitions; kept as a cross-check.
    """
    if dilate < 1:
        raise DomainError("dilate must be a positive integer")
    big = wm.scaled(dilate)
    return sorted(p for p in polyhedra.iter_lattice_points(twisted_cube(big), cap) if in_delta(big, p).inside)


def delta_lattice_points(wm: WordMult, dilate: int = 1, cap: int = DEFAULT_LATTICE_CAP) -> list[tuple[int, ...]]:
    """Lattice points of ``dilate * Delta_{i,m}`` (computed as ``Delta_{i, dilate*m}``)."""
    return sorted(iter_delta_lattice_points(wm, dilate, cap))


def count_delta_lattice_points(wm: WordMult, dilate: int = 1, cap: int = DEFAULT_LATTICE_CAP) -> int:
    if dilate < 1:
        raise DomainError("dilate must be a positive integer")
    return _DeltaScanner(wm.scaled(dilate)).count(cap)[0]


def count_missing(small: WordMult, big: WordMult, dilate: int = 1, cap: int = DEFAULT_LATTICE_CAP):
    """``(points, missing, first_missing)`` for lattice points of ``dilate*Delta_small`` outside ``dilate*Delta_big``."""
    if small.word != big.word or small.datum != big.datum:
        raise DomainError("containment needs the same root datum and word")
    if dilate < 1:
        raise DomainError("dilate must be a positive integer")
    return _DeltaScanner(small.scaled(dilate)).count(cap, _DeltaScanner(big.scaled(dilate)))


@dataclass(frozen=True)
class DeltaEqualsP:
    equal: bool
    vertices_inside: bool
    outside_vertices: tuple
    counts: dict[int, tuple[int, int]]  # dilate -> (|Delta points|, |P points|)

    def __bool__(self) -> bool:
        return self.equal


def delta_equals_P(wm: WordMult, dilates: int = 3, cap: int = DEFAULT_LATTICE_CAP) -> DeltaEqualsP:
    """Falsification test of ``Delta_{i,m} = P_{i,m}``, valid only under condition (P).

    Checks that every vertex of the twisted cube passes the string-polytope
    membership test and that lattice counts agree at dilates ``1..dilates``.
    """
    cert = satisfies_P(wm)
    if not cert.holds:
        raise PreconditionError(f"condition (P) fails: {cert.witness}")
    verts = polyhedra.vertices(twisted_cube(wm)).points
    outside = tuple(v for v in verts if not in_delta(wm, v).inside)
    counts = {}
    for k in range(1, dilates + 1):
        n_p = polyhedra.count_lattice_points(twisted_cube(wm.scaled(k)), cap)
        n_d = count_delta_lattice_points(wm, k, cap)
        counts[k] = (n_d, n_p)
    equal = not outside and all(a == b for a, b in counts.values())
    return DeltaEqualsP(equal, not outside, outside, counts)
