"""Smooth resolutions: choosing ``m`` from ``(i, lambda)`` and auditing the result.

``construct_m`` picks multiplicities from ``m_n`` down to ``m_1``, each the
least integer that is at least

    max(m(lambda)_k, 1, 1 - sum_{l > k, i_l = i_k} (m_l - 2 M_l)),

with ``M_l = max_sigma r_{sigma,l}``.  This forces ``r_{sigma,k} > 0``
whenever ``sigma_k = -``, hence condition (P) and pairwise distinct Cartier
vectors.  ``verify_resolution`` re-derives every consequence independently.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from . import polyhedra
from .errors import DomainError
from .polyhedra import DEFAULT_LATTICE_CAP
from .rootsys import RootDatum, is_dominant, is_reduced, is_reduced_for_longest
from .stringpoly import count_missing, delta_equals_P, m_of_lambda
from .twistedcube import WordMult, cartier_data, satisfies_P, suffix_column_max, twisted_cube


def recursion_bound(datum: RootDatum, word: Sequence[int], m_lambda: Sequence[int],
                    m: Sequence[int], k: int) -> int:
    """Lower bound for ``m_k`` (1-based) given ``m_{k+1}..m_n``; entries ``m_1..m_k`` are ignored."""
    word = tuple(word)
    n = len(word)
    trial = tuple(0 if j < k else int(m[j]) for j in range(n))
    wm = WordMult(datum, word, trial)
    total = 0
    for l in range(k + 1, n + 1):
        if word[l - 1] == word[k - 1]:
            total += trial[l - 1] - 2 * suffix_column_max(wm, l)
    return max(m_lambda[k - 1], 1, 1 - total)


def construct_m(datum: RootDatum, word: Sequence[int], lam: Sequence[int],
                offset: Sequence[int] | None = None) -> tuple[int, ...]:
    """Multiplicity list with (M1), (M2) and strictly positive Cartier entries for ``sigma_k = -``.

    ``offset`` (non-negative) is added to each minimal choice before moving
    on to the next index, giving the other admissible lists.
    """
    word = datum.check_word(word)
    lam = datum.check_weight(lam)
    if not is_dominant(lam):
        raise DomainError(f"weight {lam} is not dominant")
    if not is_reduced(datum, word):
        raise DomainError(f"word {word} is not reduced")
    n = len(word)
    if offset is None:
        offset = (0,) * n
    if len(offset) != n or any(v < 0 for v in offset):
        raise DomainError("offset must be a non-negative vector of the word's length")
    mlam = m_of_lambda(datum, word, lam)
    m = [0] * n
    # column maxima M_l only depend on m_l..m_n, so cache them as they are fixed
    col_max: dict[int, int] = {}
    for k in range(n, 0, -1):
        total = sum(m[l - 1] - 2 * col_max[l] for l in range(k + 1, n + 1) if word[l - 1] == word[k - 1])
        m[k - 1] = max(mlam[k - 1], 1, 1 - total) + offset[k - 1]
        col_max[k] = suffix_column_max(WordMult(datum, word, tuple(m)), k)
    return tuple(m)


def _jsonable(obj):
    if isinstance(obj, Fraction):
        return polyhedra.rational_str(obj)
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    return obj


@dataclass
class Check:
    passed: bool
    witness: object = None

    def to_json(self) -> dict:
        return {"pass": self.passed, "witness": _jsonable(self.witness)}


@dataclass
class ContainmentReport:
    componentwise_leq: bool
    # dilate -> (points of k*Delta_small, how many are missing from k*Delta_big, first missing point)
    per_dilate: dict[int, tuple[int, int, tuple | None]] = field(default_factory=dict)

    @property
    def contained(self) -> bool:
        return all(missing == 0 for _, missing, _ in self.per_dilate.values())

    def to_json(self) -> dict:
        return {
            "label": f"lattice-level, dilates <= {max(self.per_dilate, default=0)}",
            "componentwise_leq": self.componentwise_leq,
            "dilates": {str(k): {"points": p, "missing": miss, "example": list(ex) if ex else None}
                        for k, (p, miss, ex) in self.per_dilate.items()},
        }


def containment_check(datum: RootDatum, word: Sequence[int], m_small: Sequence[int], m_big: Sequence[int],
                      max_dilate: int = 3, cap: int = DEFAULT_LATTICE_CAP) -> ContainmentReport:
    """Count lattice points of ``k Delta_small`` that miss ``k Delta_big`` for ``k <= max_dilate``."""
    small = WordMult(datum, tuple(word), tuple(m_small))
    big = WordMult(datum, tuple(word), tuple(m_big))
    rep = ContainmentReport(all(a <= b for a, b in zip(small.mult, big.mult)))
    for k in range(1, max_dilate + 1):
        rep.per_dilate[k] = count_missing(small, big, k, cap)
    return rep


CHECK_ORDER = ("M1", "M2", "M3", "M4", "conditionP", "lattice", "simple", "smooth",
               "delta_equals_P", "containment")


@dataclass
class ResolutionReport:
    datum: RootDatum
    word: tuple[int, ...]
    lam: tuple[int, ...]
    m_lambda: tuple[int, ...]
    m: tuple[int, ...]
    checks: dict[str, Check]
    vertices: polyhedra.VertexSet
    lattice_counts: dict[int, int]
    info: dict

    @property
    def all_passed(self) -> bool:
        return all(c.passed for c in self.checks.values())

    def failed(self) -> list[str]:
        return [k for k, c in self.checks.items() if not c.passed]

    def to_json(self) -> dict:
        return {
            "input": {"family": self.datum.family, "rank": self.datum.rank,
                      "word": list(self.word), "weight": list(self.lam)},
            "m_lambda": list(self.m_lambda),
            "m": list(self.m),
            "checks": {k: self.checks[k].to_json() for k in CHECK_ORDER if k in self.checks},
            "vertices": polyhedra.vertices_to_json(self.vertices)["vertices"],
            "lattice_counts": {str(k): v for k, v in self.lattice_counts.items()},
            "info": _jsonable(self.info),
        }


def polytope_verdicts(P: polyhedra.HPolytope) -> dict[str, Check]:
    V = polyhedra.vertices(P)
    lattice = polyhedra.is_lattice_polytope(V)
    non_int = next((v for v in V if any(c.denominator != 1 for c in v)), None)
    simple_ok, simple_wit = polyhedra.check_simple(P)
    if lattice:
        smooth_ok, smooth_wit = polyhedra.check_smooth(P)
    else:
        smooth_ok, smooth_wit = False, {"reason": "not a lattice polytope", "vertex": non_int}
    return {
        "lattice": Check(lattice, None if lattice else {"vertex": non_int}),
        "simple": Check(simple_ok, simple_wit),
        "smooth": Check(smooth_ok, smooth_wit),
    }


def verify_resolution(datum: RootDatum, word: Sequence[int], lam: Sequence[int], m: Sequence[int],
                      dilates: int = 3, cap: int = DEFAULT_LATTICE_CAP) -> ResolutionReport:
    """Audit a candidate multiplicity list; failures are recorded, never raised."""
    word = datum.check_word(word)
    lam = datum.check_weight(lam)
    mlam = m_of_lambda(datum, word, lam)
    wm = WordMult(datum, word, tuple(m))
    n = wm.n
    checks: dict[str, Check] = {}

    bad = [j + 1 for j in range(n) if mlam[j] > wm.mult[j]]
    checks["M1"] = Check(not bad, {"indices": bad} if bad else None)
    bad = [j + 1 for j in range(n) if wm.mult[j] <= 0]
    checks["M2"] = Check(not bad, {"indices": bad} if bad else None)

    table = cartier_data(wm)
    neg = next(((s, r) for s, r in table.items() if any(v < 0 for v in r)), None)
    checks["M3"] = Check(neg is None, {"sigma": neg[0], "r": neg[1]} if neg else None)
    seen: dict[tuple[int, ...], str] = {}
    dup = None
    for s, r in table.items():
        if r in seen:
            dup = {"sigmas": [seen[r], s], "r": r}
            break
        seen[r] = s
    checks["M4"] = Check(dup is None, dup)

    cert = satisfies_P(wm)
    checks["conditionP"] = Check(cert.holds, None if cert.holds else str(cert.witness))

    P = twisted_cube(wm)
    checks.update(polytope_verdicts(P))

    if cert.holds:
        ev = delta_equals_P(wm, dilates, cap)
        checks["delta_equals_P"] = Check(ev.equal, {
            "outside_vertices": list(ev.outside_vertices),
            "counts": {k: {"delta": a, "P": b} for k, (a, b) in ev.counts.items()},
        })
        lattice_counts = {k: b for k, (a, b) in ev.counts.items()}
    else:
        checks["delta_equals_P"] = Check(False, f"precondition: condition (P) fails: {cert.witness}")
        lattice_counts = {k: polyhedra.count_lattice_points(twisted_cube(wm.scaled(k)), cap)
                          for k in range(1, dilates + 1)}

    cont = containment_check(datum, word, mlam, wm.mult, dilates, cap)
    checks["containment"] = Check(cont.contained, cont.to_json())

    info: dict = {
        "reduced": is_reduced(datum, word),
        "reduced_for_longest": is_reduced_for_longest(datum, word),
    }
    small = twisted_cube(WordMult(datum, word, mlam))
    info["m_lambda_polytope"] = {k: c.to_json() for k, c in polytope_verdicts(small).items()}

    return ResolutionReport(datum, word, lam, mlam, wm.mult, checks, polyhedra.vertices(P),
                            lattice_counts, info)


def resolve(datum: RootDatum, word: Sequence[int], lam: Sequence[int], dilates: int = 3,
            cap: int = DEFAULT_LATTICE_CAP, offset: Sequence[int] | None = None) -> ResolutionReport:
    """``construct_m`` followed by ``verify_resolution``."""
    m = construct_m(datum, word, lam, offset)
    return verify_resolution(datum, word, lam, m, dilates, cap)

