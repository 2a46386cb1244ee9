"""Finite root systems: Cartan integers, weights and Weyl-group words.

Conventions
-----------
``cartan[i][j] = <alpha_j, alpha_i^vee>`` (0-based indices internally,
letters of words are 1-based).  Nodes follow the Bourbaki labelling, except
for G2 where alpha_1 is the *long* simple root, so that

    G2 -> [[2, -1], [-3, 2]]

Weights are integer tuples in fundamental-weight coordinates, i.e. the
entries ``<lambda, alpha_i^vee>``.  Roots are integer tuples in the simple-root
basis.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Sequence

from .errors import DomainError

FAMILIES = "ABCDEFG"


def _as_int(v, what: str) -> int:
    try:
        iv = int(v)
    except (TypeError, ValueError):
        raise DomainError(f"{what} {v!r} is not an integer") from None
    if iv != v:
        raise DomainError(f"{what} {v!r} is not an integer")
    return iv


def _chain(rank: int) -> list[list[int]]:
    c = [[0] * rank for _ in range(rank)]
    for i in range(rank):
        c[i][i] = 2
        if i + 1 < rank:
            c[i][i + 1] = c[i + 1][i] = -1
    return c


def _check_rank(family: str, rank: int) -> None:
    if family not in FAMILIES or len(family) != 1:
        raise DomainError(f"unknown family {family!r}")
    if not isinstance(rank, int) or rank < 1:
        raise DomainError(f"rank must be a positive integer, got {rank!r}")
    ok = {
        "A": rank >= 1,
        "B": rank >= 2,
        "C": rank >= 2,
        "D": rank >= 3,
        "E": rank in (6, 7, 8),
        "F": rank == 4,
        "G": rank == 2,
    }[family]
    if not ok:
        raise DomainError(f"rank {rank} is not admissible for family {family}")


def cartan_matrix(family: str, rank: int) -> tuple[tuple[int, ...], ...]:
    """Cartan matrix with entry ``[i][j] = <alpha_j, alpha_i^vee>``."""
    family = family.upper()
    _check_rank(family, rank)
    n = rank
    if family == "A":
        c = _chain(n)
    elif family == "B":
        # alpha_n short
        c = _chain(n)
        c[n - 1][n - 2] = -2
    elif family == "C":
        # alpha_n long
        c = _chain(n)
        c[n - 2][n - 1] = -2
    elif family == "D":
        c = _chain(n)
        c[n - 2][n - 1] = c[n - 1][n - 2] = 0
        c[n - 3][n - 1] = c[n - 1][n - 3] = -1
    elif family == "E":
        # 1-3-4-5-...-n with 2 attached to 4
        c = [[0] * n for _ in range(n)]
        for i in range(n):
            c[i][i] = 2
        edges = [(1, 3), (3, 4), (2, 4)] + [(k, k + 1) for k in range(4, n)]
        for a, b in edges:
            c[a - 1][b - 1] = c[b - 1][a - 1] = -1
    elif family == "F":
        # alpha_1, alpha_2 long; alpha_3, alpha_4 short
        c = _chain(4)
        c[2][1] = -2
    else:
        c = [[2, -1], [-3, 2]]
    return tuple(tuple(row) for row in c)


def _positive_roots(cartan: Sequence[Sequence[int]]) -> tuple[tuple[int, ...], ...]:
    """Positive roots in the simple-root basis, by closing the simple roots under reflections."""
    r = len(cartan)
    simple = [tuple(int(i == k) for k in range(r)) for i in range(r)]
    seen = set(simple)
    frontier = list(simple)
    while frontier:
        nxt = []
        for beta in frontier:
            for i in range(r):
                p = sum(beta[k] * cartan[i][k] for k in range(r))
                if p == 0:
                    continue
                gamma = tuple(beta[k] - (p if k == i else 0) for k in range(r))
                if all(g >= 0 for g in gamma) and gamma not in seen:
                    seen.add(gamma)
                    nxt.append(gamma)
        frontier = nxt
    return tuple(sorted(seen, key=lambda b: (sum(b), b)))


@dataclass(frozen=True)
class RootDatum:
    family: str
    rank: int
    cartan: tuple[tuple[int, ...], ...]

    @classmethod
    def of(cls, family: str, rank: int) -> "RootDatum":
        family = family.upper()
        return cls(family, rank, cartan_matrix(family, rank))

    def __post_init__(self) -> None:
        c = self.cartan
        if len(c) != self.rank or any(len(row) != self.rank for row in c):
            raise DomainError("Cartan matrix shape does not match rank")
        for i in range(self.rank):
            if c[i][i] != 2:
                raise DomainError("Cartan diagonal must be 2")
            for j in range(self.rank):
                if i != j and (c[i][j] > 0 or (c[i][j] == 0) != (c[j][i] == 0)):
                    raise DomainError(f"bad off-diagonal Cartan entry at ({i}, {j})")

    def __str__(self) -> str:
        return f"{self.family}{self.rank}"

    @cached_property
    def positive_roots(self) -> tuple[tuple[int, ...], ...]:
        return _positive_roots(self.cartan)

    @cached_property
    def positive_coroots(self) -> tuple[tuple[int, ...], ...]:
        """Positive coroots in the simple-coroot basis (roots of the transposed matrix)."""
        t = [[self.cartan[j][i] for j in range(self.rank)] for i in range(self.rank)]
        return _positive_roots(t)

    @property
    def num_positive_roots(self) -> int:
        return len(self.positive_roots)

    def check_index(self, i: int) -> None:
        if not (isinstance(i, int) and 1 <= i <= self.rank):
            raise DomainError(f"index {i!r} out of range 1..{self.rank}")

    def check_weight(self, lam: Sequence[int]) -> tuple[int, ...]:
        lam = tuple(_as_int(v, "weight") for v in lam)
        if len(lam) != self.rank:
            raise DomainError(f"weight has length {len(lam)}, expected {self.rank}")
        return lam

    def check_word(self, word: Sequence[int]) -> tuple[int, ...]:
        word = tuple(_as_int(a, "word letter") for a in word)
        for a in word:
            if not 1 <= a <= self.rank:
                raise DomainError(f"word letter {a} outside 1..{self.rank}")
        return word


def pairing(datum: RootDatum, lam: Sequence[int], i: int) -> int:
    """``<lambda, alpha_i^vee>`` for a weight in fundamental coordinates."""
    datum.check_index(i)
    return datum.check_weight(lam)[i - 1]


def root_to_weight_coords(datum: RootDatum, a: Sequence[int]) -> tuple[int, ...]:
    if len(a) != datum.rank:
        raise DomainError(f"root vector has length {len(a)}, expected {datum.rank}")
    c = datum.cartan
    r = datum.rank
    return tuple(sum(c[j][i] * a[i] for i in range(r)) for j in range(r))


def simple_root_weight(datum: RootDatum, i: int) -> tuple[int, ...]:
    datum.check_index(i)
    return tuple(datum.cartan[j][i - 1] for j in range(datum.rank))


def apply_simple_reflection(datum: RootDatum, i: int, lam: Sequence[int]) -> tuple[int, ...]:
    lam = datum.check_weight(lam)
    alpha = simple_root_weight(datum, i)
    p = lam[i - 1]
    return tuple(x - p * a for x, a in zip(lam, alpha))


def reflect_root(datum: RootDatum, i: int, beta: Sequence[int]) -> tuple[int, ...]:
    """Simple reflection ``s_i`` acting on a root written in the simple-root basis."""
    c = datum.cartan
    p = sum(beta[k] * c[i - 1][k] for k in range(datum.rank))
    return tuple(b - (p if k == i - 1 else 0) for k, b in enumerate(beta))


def is_reduced(datum: RootDatum, word: Sequence[int]) -> bool:
    """Reducedness by the positivity test: ``s_{i_1}...s_{i_{j-1}}(alpha_{i_j}) > 0`` for all j."""
    word = datum.check_word(word)
    for j, letter in enumerate(word):
        beta = tuple(int(k == letter - 1) for k in range(datum.rank))
        for prev in reversed(word[:j]):
            beta = reflect_root(datum, prev, beta)
        if any(b < 0 for b in beta):
            return False
    return True


def is_reduced_for_longest(datum: RootDatum, word: Sequence[int]) -> bool:
    return len(word) == datum.num_positive_roots and is_reduced(datum, word)


def is_dominant(lam: Sequence[int]) -> bool:
    return all(v >= 0 for v in lam)


def weyl_dim(datum: RootDatum, lam: Sequence[int]) -> int:
    """Dimension of the irreducible module of highest weight ``lam`` (Weyl dimension formula)."""
    lam = datum.check_weight(lam)
    if not is_dominant(lam):
        raise DomainError(f"weight {lam} is not dominant")
    num = Fraction(1)
    for k in datum.positive_coroots:
        num *= Fraction(sum(ki * (li + 1) for ki, li in zip(k, lam)), sum(k))
    assert num.denominator == 1
    return int(num)
