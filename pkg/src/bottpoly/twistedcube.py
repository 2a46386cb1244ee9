"""Twisted cubes ``P_{i,m}``, their Cartier data and condition (P).

For a word ``i = (i_1..i_n)`` and multiplicities ``m`` the bounding forms are

    A_j(x) = m_j + sum_{l > j, i_l = i_j} m_l - sum_{l > j} c[i_j][i_l] x_l

and the twisted cube is ``{0 <= x_j <= A_j(x_{j+1}..x_n)}``.  Sign vectors
are strings over ``"-+"`` and are always listed in lexicographic order with
``-`` before ``+``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Sequence

from .errors import DomainError, ResourceError
from .polyhedra import Halfspace, HPolytope
from .rootsys import RootDatum


@dataclass(frozen=True)
class WordMult:
    datum: RootDatum
    word: tuple[int, ...]
    mult: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "word", self.datum.check_word(self.word))
        object.__setattr__(self, "mult", tuple(int(v) for v in self.mult))
        if len(self.mult) != len(self.word):
            raise DomainError(f"multiplicity list has length {len(self.mult)}, word has length {len(self.word)}")
        if any(v < 0 for v in self.mult):
            raise DomainError(f"multiplicities must be non-negative, got {self.mult}")

    @property
    def n(self) -> int:
        return len(self.word)

    def with_mult(self, mult: Sequence[int]) -> "WordMult":
        return WordMult(self.datum, self.word, tuple(mult))

    def scaled(self, k: int) -> "WordMult":
        return self.with_mult(tuple(k * v for v in self.mult))


@dataclass(frozen=True)
class AffineForm:
    """``constant + sum(coeffs[l] * x_l)`` over all n coordinates (0-based)."""

    constant: int
    coeffs: tuple[int, ...]

    def __call__(self, x: Sequence):
        return self.constant + sum(c * v for c, v in zip(self.coeffs, x) if c)

    def __str__(self) -> str:
        parts = [str(self.constant)]
        for l, c in enumerate(self.coeffs):
            if c:
                sign = "+" if c > 0 else "-"
                mag = "" if abs(c) == 1 else str(abs(c))
                parts.append(f"{sign} {mag}x_{l + 1}")
        return " ".join(parts)


@lru_cache(maxsize=4096)
def a_forms(wm: WordMult) -> tuple[AffineForm, ...]:
    """The forms ``A_1..A_n``; ``A_j`` only involves ``x_{j+1}..x_n``."""
    c = wm.datum.cartan
    w, m, n = wm.word, wm.mult, wm.n
    forms = []
    for j in range(n):
        const = m[j] + sum(m[l] for l in range(j + 1, n) if w[l] == w[j])
        coeffs = tuple(0 if l <= j else -c[w[j] - 1][w[l] - 1] for l in range(n))
        forms.append(AffineForm(const, coeffs))
    return tuple(forms)


def twisted_cube(wm: WordMult) -> HPolytope:
    n = wm.n
    hs = []
    for j, form in enumerate(a_forms(wm)):
        lower = [0] * n
        lower[j] = -1
        upper = [-v for v in form.coeffs]
        upper[j] = 1
        hs.append(Halfspace(tuple(lower), 0))
        hs.append(Halfspace(tuple(upper), form.constant))
    return HPolytope(n, tuple(hs), bounded_by_construction=True)


def reverse_coords(P: HPolytope) -> HPolytope:
    """Image of ``P`` under ``(x_1..x_n) -> (x_n..x_1)``."""
    return HPolytope(P.dim, tuple(Halfspace(h.normal[::-1], h.bound) for h in P.halfspaces),
                     P.bounded_by_construction)


def negate_coords(P: HPolytope) -> HPolytope:
    return HPolytope(P.dim, tuple(Halfspace(tuple(-a for a in h.normal), h.bound) for h in P.halfspaces),
                     P.bounded_by_construction)


# ---------------------------------------------------------------------------
# Cartier data


def sign_vectors(n: int) -> list[str]:
    return ["".join(s) for s in product("-+", repeat=n)]


def _suffix_tables(wm: WordMult, start: int = 0) -> dict[str, tuple[int, ...]]:
    """``r_sigma`` restricted to coordinates ``start..n-1``, keyed by the sign suffix."""
    forms = a_forms(wm)
    n = wm.n
    table: dict[str, tuple[int, ...]] = {"": ()}
    for i in range(n - 1, start - 1, -1):
        form = forms[i]
        nxt = {}
        for s, r in table.items():
            full = (0,) * (i + 1) + r
            nxt["-" + s] = (form(full),) + r
            nxt["+" + s] = (0,) + r
        table = nxt
    return table


@dataclass(frozen=True)
class CartierTable:
    n: int
    table: dict[str, tuple[int, ...]]

    def __getitem__(self, sigma: str) -> tuple[int, ...]:
        return self.table[sigma]

    def items(self):
        return ((s, self.table[s]) for s in sign_vectors(self.n))

    def vectors(self) -> set[tuple[int, ...]]:
        return set(self.table.values())

    def all_nonnegative(self) -> bool:
        return all(v >= 0 for r in self.table.values() for v in r)

    def all_distinct(self) -> bool:
        return len(set(self.table.values())) == len(self.table)

    def column_max(self, l: int) -> int:
        """``max_sigma r_{sigma,l}`` for a 1-based coordinate ``l``."""
        return max(r[l - 1] for r in self.table.values())


def cartier_data(wm: WordMult) -> CartierTable:
    """``r_{sigma,i} = 0`` if ``sigma_i = +`` else ``A_i(r_{sigma,i+1}..r_{sigma,n})``."""
    return CartierTable(wm.n, _suffix_tables(wm))


def suffix_column_max(wm: WordMult, l: int) -> int:
    """``max_sigma r_{sigma,l}`` using only ``m_l..m_n`` (2^(n-l+1) suffixes)."""
    tab = _suffix_tables(wm, l - 1)
    return max(r[0] for r in tab.values())


# ---------------------------------------------------------------------------
# condition (P)


@dataclass(frozen=True)
class PWitness:
    k: int
    sigma: str
    point: tuple[int, ...]  # (x_{k+1}, ..., x_n)
    value: int  # A_k at that point

    def __str__(self) -> str:
        return f"k={self.k} x=({','.join(map(str, self.point))}) A_{self.k}={self.value}"


@dataclass(frozen=True)
class ConditionPCertificate:
    holds: bool
    witness: PWitness | None
    table: CartierTable

    def __bool__(self) -> bool:
        return self.holds


def satisfies_P(wm: WordMult) -> ConditionPCertificate:
    """Decide condition (P) by non-negativity of the Cartier data.

    On failure the witness uses the largest violating coordinate ``k`` over
    all sign vectors, the lexicographically first such sign vector, and the
    suffix of its ``r_sigma`` as the point at which ``A_k < 0``.
    """
    table = cartier_data(wm)
    best: tuple[int, str] | None = None
    for sigma, r in table.items():
        bad = [i for i, v in enumerate(r) if v < 0]
        if bad and (best is None or bad[-1] > best[0]):
            best = (bad[-1], sigma)
    if best is None:
        return ConditionPCertificate(True, None, table)
    k0, sigma = best
    r = table[sigma]
    point = r[k0 + 1:]
    value = a_forms(wm)[k0]((0,) * (k0 + 1) + point)
    return ConditionPCertificate(False, PWitness(k0 + 1, sigma, point, value), table)


def direct_P_oracle(wm: WordMult, denominator_cap: int = 2, cap: int = 10**7) -> bool:
    """Check every (P-k) directly on the grid ``(1/denominator_cap) Z``.

    Walks the region ``0 <= x_l <= A_l`` from ``l = n`` downwards and fails
    as soon as some ``A_k`` is negative on a grid point of the region
    cut out by the later coordinates.
    """
    if denominator_cap < 1:
        raise DomainError("denominator_cap must be positive")
    D = denominator_cap
    forms = a_forms(wm)
    n = wm.n
    # scaled: y = D x, D*A_j(x) = D*const + coeffs . y
    consts = [D * f.constant for f in forms]
    coeffs = [f.coeffs for f in forms]
    y = [0] * n
    budget = [cap]

    def rec(j: int) -> bool:
        val = consts[j] + sum(c * y[l] for l, c in enumerate(coeffs[j]) if c)
        if val < 0:
            return False
        if j == 0:
            return True
        budget[0] -= val + 1
        if budget[0] < 0:
            raise ResourceError(f"condition (P) scan exceeded cap of {cap} candidates")
        for v in range(val + 1):
            y[j] = v
            if not rec(j - 1):
                return False
        y[j] = 0
        return True

    if n == 0:
        return True
    return rec(n - 1)


def evaluate_form(wm: WordMult, k: int, suffix: Sequence) -> Fraction:
    """``A_k`` at ``(x_{k+1}..x_n) = suffix`` for a 1-based ``k``."""
    form = a_forms(wm)[k - 1]
    return Fraction(form((0,) * k + tuple(suffix)))
