from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from bottpoly.errors import DomainError
from bottpoly.rootsys import (
    RootDatum,
    apply_simple_reflection,
    cartan_matrix,
    is_dominant,
    is_reduced,
    is_reduced_for_longest,
    pairing,
    root_to_weight_coords,
    simple_root_weight,
    weyl_dim,
)


def _e(n, *pairs):
    v = [F(0)] * n
    for i, c in pairs:
        v[i - 1] += F(c)
    return tuple(v)


def euclidean_simple_roots(family, rank):
    """Simple roots as explicit vectors (G2 listed long root first)."""
    n = rank
    if family == "A":
        return [_e(n + 1, (i, 1), (i + 1, -1)) for i in range(1, n + 1)]
    chain = [_e(n, (i, 1), (i + 1, -1)) for i in range(1, n)]
    if family == "B":
        return chain + [_e(n, (n, 1))]
    if family == "C":
        return chain + [_e(n, (n, 2))]
    if family == "D":
        return chain + [_e(n, (n - 1, 1), (n, 1))]
    if family == "E":
        h = F(1, 2)
        e8 = [
            _e(8, (1, h), (8, h), *[(k, -h) for k in range(2, 8)]),
            _e(8, (1, 1), (2, 1)),
            _e(8, (2, 1), (1, -1)),
            _e(8, (3, 1), (2, -1)),
            _e(8, (4, 1), (3, -1)),
            _e(8, (5, 1), (4, -1)),
            _e(8, (6, 1), (5, -1)),
            _e(8, (7, 1), (6, -1)),
        ]
        return e8[:rank]
    if family == "F":
        h = F(1, 2)
        return [_e(4, (2, 1), (3, -1)), _e(4, (3, 1), (4, -1)), _e(4, (4, 1)),
                _e(4, (1, h), (2, -h), (3, -h), (4, -h))]
    if family == "G":
        return [_e(3, (1, -2), (2, 1), (3, 1)), _e(3, (1, 1), (2, -1))]
    raise ValueError(family)


def dot(u, v):
    return sum(a * b for a, b in zip(u, v))


def oracle_cartan(family, rank):
    roots = euclidean_simple_roots(family, rank)
    return tuple(tuple(int(2 * dot(roots[j], roots[i]) / dot(roots[i], roots[i])) for j in range(rank))
                 for i in range(rank))


ADMISSIBLE = [("A", 1), ("A", 2), ("A", 3), ("A", 5), ("B", 2), ("B", 3), ("B", 4), ("C", 2), ("C", 3),
              ("C", 5), ("D", 3), ("D", 4), ("D", 6), ("E", 6), ("E", 7), ("E", 8), ("F", 4), ("G", 2)]


@pytest.mark.parametrize("family,rank", ADMISSIBLE)
def test_cartan_matches_euclidean_table(family, rank):
    assert cartan_matrix(family, rank) == oracle_cartan(family, rank)


@pytest.mark.parametrize("family,rank", ADMISSIBLE)
def test_cartan_shape(family, rank):
    c = cartan_matrix(family, rank)
    for i in range(rank):
        assert c[i][i] == 2
        for j in range(rank):
            if i != j:
                assert c[i][j] <= 0
                assert (c[i][j] == 0) == (c[j][i] == 0)
                assert c[i][j] * c[j][i] in (0, 1, 2, 3)


def test_cartan_examples():
    assert cartan_matrix("A", 2) == ((2, -1), (-1, 2))
    assert cartan_matrix("A", 1) == ((2,),)
    assert cartan_matrix("G", 2) == ((2, -1), (-3, 2))


@pytest.mark.parametrize("family,rank", [("D", 2), ("E", 5), ("E", 9), ("F", 3), ("G", 3), ("B", 1),
                                         ("C", 1), ("A", 0), ("H", 3)])
def test_inadmissible(family, rank):
    with pytest.raises(DomainError):
        cartan_matrix(family, rank)


@pytest.mark.parametrize("family,rank,count", [("A", 2, 3), ("A", 3, 6), ("B", 2, 4), ("G", 2, 6), ("B", 3, 9),
                                               ("D", 4, 12), ("F", 4, 24), ("E", 6, 36), ("E", 8, 120)])
def test_number_of_positive_roots(family, rank, count):
    assert RootDatum.of(family, rank).num_positive_roots == count


def test_pairing_examples():
    a2 = RootDatum.of("A", 2)
    assert pairing(a2, (1, 1), 1) == 1
    assert pairing(a2, (0, 0), 1) == 0 and pairing(a2, (0, 0), 2) == 0
    assert pairing(a2, (3, 5), 2) == 5
    with pytest.raises(DomainError):
        pairing(a2, (1, 1), 3)


def test_root_to_weight_examples():
    a2 = RootDatum.of("A", 2)
    assert root_to_weight_coords(a2, (1, 1)) == (1, 1)
    assert root_to_weight_coords(a2, (1, 0)) == (2, -1)
    for fam, rk in ADMISSIBLE:
        d = RootDatum.of(fam, rk)
        assert root_to_weight_coords(d, (0,) * rk) == (0,) * rk
    with pytest.raises(DomainError):
        root_to_weight_coords(a2, (1, 0, 0))


def test_reflection_examples():
    a2 = RootDatum.of("A", 2)
    assert apply_simple_reflection(a2, 1, (1, 0)) == (-1, 1)
    assert apply_simple_reflection(a2, 2, (1, 0)) == (1, 0)
    assert simple_root_weight(a2, 1) == (2, -1)
    with pytest.raises(DomainError):
        apply_simple_reflection(a2, 0, (1, 0))


DATA = [RootDatum.of(f, r) for f, r in [("A", 2), ("A", 3), ("B", 2), ("C", 3), ("G", 2), ("F", 4), ("D", 4)]]


@st.composite
def datum_and_weight(draw):
    d = draw(st.sampled_from(DATA))
    lam = tuple(draw(st.lists(st.integers(-6, 6), min_size=d.rank, max_size=d.rank)))
    return d, lam


@given(datum_and_weight(), st.data())
def test_reflection_is_involution(dl, data):
    d, lam = dl
    i = data.draw(st.integers(1, d.rank))
    assert apply_simple_reflection(d, i, apply_simple_reflection(d, i, lam)) == lam


@given(datum_and_weight(), st.data())
def test_reflection_fixes_orthogonal_weights(dl, data):
    d, lam = dl
    i = data.draw(st.integers(1, d.rank))
    lam = lam[:i - 1] + (0,) + lam[i:]
    assert apply_simple_reflection(d, i, lam) == lam


@given(st.sampled_from(DATA), st.data())
def test_root_to_weight_is_linear(d, data):
    vec = st.lists(st.integers(-5, 5), min_size=d.rank, max_size=d.rank)
    a, b = data.draw(vec), data.draw(vec)
    fa, fb = root_to_weight_coords(d, a), root_to_weight_coords(d, b)
    assert root_to_weight_coords(d, [x + y for x, y in zip(a, b)]) == tuple(x + y for x, y in zip(fa, fb))


# -- brute-force Weyl group -------------------------------------------------

WEYL_ORDER = {("A", 1): 2, ("A", 2): 6, ("A", 3): 24, ("B", 2): 8, ("B", 3): 48, ("C", 3): 48, ("G", 2): 12}


def _reflect(p, a):
    f = 2 * dot(p, a) / dot(a, a)
    return tuple(x - f * y for x, y in zip(p, a))


class WeylOracle:
    """Orbit of a generic point; word length = BFS distance in the Cayley graph."""

    def __init__(self, family, rank):
        self.roots = euclidean_simple_roots(family, rank)
        dim = len(self.roots[0])
        gen = tuple(F(k * k + 1, k + 3) for k in range(1, dim + 1))
        self.start = gen
        self.dist = {gen: 0}
        frontier = [gen]
        while frontier:
            nxt = []
            for p in frontier:
                for a in self.roots:
                    q = _reflect(p, a)
                    if q not in self.dist:
                        self.dist[q] = self.dist[p] + 1
                        nxt.append(q)
            frontier = nxt

    def length(self, word):
        p = self.start
        for letter in reversed(word):
            p = _reflect(p, self.roots[letter - 1])
        return self.dist[p]


@pytest.fixture(scope="module")
def oracles():
    return {key: WeylOracle(*key) for key in WEYL_ORDER}


def test_oracle_group_orders(oracles):
    for key, order in WEYL_ORDER.items():
        assert len(oracles[key].dist) == order


@settings(max_examples=300, deadline=None)
@given(st.sampled_from(sorted(WEYL_ORDER)), st.data())
def test_is_reduced_matches_weyl_group(oracles, key, data):
    d = RootDatum.of(*key)
    word = data.draw(st.lists(st.integers(1, d.rank), max_size=8))
    assert is_reduced(d, word) == (oracles[key].length(word) == len(word))


def test_is_reduced_examples():
    a2 = RootDatum.of("A", 2)
    assert is_reduced(a2, (1, 2, 1))
    assert not is_reduced(a2, (1, 2, 1, 2))
    assert is_reduced(a2, ())
    for d in DATA:
        for k in range(1, d.rank + 1):
            assert not is_reduced(d, (k, k))


def test_is_reduced_for_longest_examples():
    assert is_reduced_for_longest(RootDatum.of("A", 2), (1, 2, 1))
    assert not is_reduced_for_longest(RootDatum.of("A", 2), (1, 2))
    assert is_reduced_for_longest(RootDatum.of("B", 2), (1, 2, 1, 2))
    assert is_reduced_for_longest(RootDatum.of("G", 2), (2, 1, 2, 1, 2, 1))
    assert not is_reduced_for_longest(RootDatum.of("G", 2), (1, 2, 1, 2, 1, 2, 1))


def test_word_letters_checked():
    with pytest.raises(DomainError):
        is_reduced(RootDatum.of("A", 2), (1, 3))


def test_weyl_dim_examples():
    assert weyl_dim(RootDatum.of("A", 2), (0, 0)) == 1
    assert weyl_dim(RootDatum.of("E", 8), (0,) * 8) == 1
    for m in range(6):
        assert weyl_dim(RootDatum.of("A", 1), (m,)) == m + 1
    assert weyl_dim(RootDatum.of("A", 2), (1, 1)) == 8
    assert weyl_dim(RootDatum.of("A", 2), (2, 2)) == 27
    # standard and adjoint representations
    assert weyl_dim(RootDatum.of("B", 3), (1, 0, 0)) == 7
    assert weyl_dim(RootDatum.of("C", 3), (1, 0, 0)) == 6
    assert weyl_dim(RootDatum.of("G", 2), (0, 1)) == 7
    assert weyl_dim(RootDatum.of("G", 2), (1, 0)) == 14
    assert weyl_dim(RootDatum.of("F", 4), (0, 0, 0, 1)) == 26
    assert weyl_dim(RootDatum.of("E", 6), (1, 0, 0, 0, 0, 0)) == 27
    assert weyl_dim(RootDatum.of("E", 7), (0, 0, 0, 0, 0, 0, 1)) == 56
    assert weyl_dim(RootDatum.of("E", 8), (0, 0, 0, 0, 0, 0, 0, 1)) == 248


def test_weyl_dim_type_a_hook_formula():
    # A_n: product over i<j of (sum_{i<=k<j} (l_k + 1)) / (j - i)
    d = RootDatum.of("A", 3)
    for lam in [(1, 0, 2), (2, 3, 1), (0, 4, 0)]:
        num = den = 1
        for i in range(4):
            for j in range(i + 1, 4):
                num *= sum(lam[k] + 1 for k in range(i, j))
                den *= j - i
        assert weyl_dim(d, lam) == num // den


def test_weyl_dim_rejects_non_dominant():
    assert not is_dominant((1, -1))
    with pytest.raises(DomainError):
        weyl_dim(RootDatum.of("A", 2), (1, -1))


def test_empty_word_is_legal():
    d = RootDatum.of("B", 2)
    assert d.check_word(()) == ()
    assert is_reduced(d, ())


def test_non_integral_input_rejected():
    d = RootDatum.of("A", 2)
    with pytest.raises(DomainError):
        pairing(d, (F(1, 2), 0), 1)
    with pytest.raises(DomainError):
        d.check_word((1, 1.5))
    assert d.check_weight((F(2), 1)) == (2, 1)
