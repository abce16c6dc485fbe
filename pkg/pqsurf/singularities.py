# Cyclic quotient singularities, their resolutions and the basket of a product-quotient surface

# Author  : pqsurf contributors
# Date    : 2024-09-04
# License : BSD-3-Clause

"""
### singularities.py
Hirzebruch-Jung expansions, normal forms 1/n(1,a), exceptional chains with discrepancies,
the per-singularity invariants k, e, B, D and the basket of (C1 x C2)/G.\n

All arithmetic is exact (`fractions.Fraction`); nothing here touches floats.
"""

# fmt: off
import logging
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from math import ceil, gcd
from typing import Iterable, NamedTuple

from sympy import Matrix, mod_inverse

from pqsurf.errors import InconsistencyError, ValidationError
from pqsurf.covers import SphericalSystem
from pqsurf.permgroup import Subgroup
# fmt: on

logger = logging.getLogger("pqsurf")


def _check_pair(n: int, a: int) -> None:
    if n < 2:
        raise ValidationError(f"Singularity order must be at least 2, got {n}")
    if not 1 <= a < n:
        raise ValidationError(f"Weight {a} out of range 1..{n - 1}")
    if gcd(n, a) != 1:
        raise ValidationError(f"gcd({n}, {a}) = {gcd(n, a)} != 1")


class HJExpansion(NamedTuple):
    """Coefficients b_1, ..., b_l (all >= 2) of n/a = b_1 - 1/(b_2 - 1/(...))."""

    coefficients: tuple[int, ...]

    @property
    def length(self) -> int:
        return len(self.coefficients)

    def value(self) -> Fraction:
        result = Fraction(self.coefficients[-1])
        for b in reversed(self.coefficients[:-1]):
            result = b - 1 / result
        return result

    def __repr__(self) -> str:
        return f"[{', '.join(map(str, self.coefficients))}]"


def hj_expansion(n: int, a: int) -> HJExpansion:
    """
    Hirzebruch-Jung continued fraction of n/a.

    ### Raises:
        `ValidationError` : n < 2, a outside 1..n-1, or gcd(n, a) != 1.
    """
    _check_pair(n, a)
    coefficients = []
    while a:
        b = ceil(Fraction(n, a))
        coefficients.append(b)
        n, a = a, b * a - n
    return HJExpansion(tuple(coefficients))


class CyclicQuotientType:
    """
    A singularity type 1/n(1,a) in normal form a <= a^-1 mod n.

    ### Properties:
        `n: int` - Order of the cyclic group\n
        `a: int` - Normalized weight\n
        `inverse_weight: int` - a^-1 mod n\n
        `hj: HJExpansion` - Expansion of n/a\n
        `is_canonical: bool` - True for the A_{n-1} type 1/n(1,n-1)\n
        `label: str` - `A{n-1}` for canonical types, otherwise `1/n(1,a)`\n
    """

    __slots__ = ("_n", "_a")

    def __init__(self, n: int, a: int) -> None:
        self._n = n
        self._a = a

    @property
    def n(self) -> int:
        return self._n

    @property
    def a(self) -> int:
        return self._a

    @property
    def inverse_weight(self) -> int:
        return int(mod_inverse(self._a, self._n))

    @property
    def hj(self) -> HJExpansion:
        return hj_expansion(self._n, self._a)

    @property
    def is_canonical(self) -> bool:
        return self._a == self._n - 1

    @property
    def label(self) -> str:
        return f"A{self._n - 1}" if self.is_canonical else f"1/{self._n}(1,{self._a})"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, CyclicQuotientType) and (self._n, self._a) == (other._n, other._a)

    def __lt__(self, other: "CyclicQuotientType") -> bool:
        return (self._n, self._a) < (other._n, other._a)

    def __hash__(self) -> int:
        return hash((self._n, self._a))

    def __repr__(self) -> str:
        return f"CyclicQuotientType({self.label})"


def normalize_type(n: int, a: int) -> CyclicQuotientType:
    """
    1/n(1,a) and 1/n(1,a^-1) are the same singularity; keep the smaller weight.
    """
    a %= n
    _check_pair(n, a)
    return CyclicQuotientType(n, min(a, int(mod_inverse(a, n))))


class ExceptionalChain(NamedTuple):
    """The resolution chain: self-intersections -b_i and discrepancies a_i."""

    self_intersections: tuple[int, ...]
    discrepancies: tuple[Fraction, ...]

    def intersection_matrix(self) -> Matrix:
        size = len(self.self_intersections)
        return Matrix(
            size,
            size,
            lambda i, j: self.self_intersections[i] if i == j else (1 if abs(i - j) == 1 else 0),
        )

    def is_negative_definite(self) -> bool:
        return bool(self.intersection_matrix().is_negative_definite)


def _solve_tridiagonal(diagonal: list[Fraction], rhs: list[Fraction]) -> list[Fraction]:
    """
    Thomas algorithm for a symmetric tridiagonal system with unit off-diagonals.
    """
    size = len(diagonal)
    c_prime = [Fraction(0)] * size
    d_prime = [Fraction(0)] * size
    c_prime[0] = Fraction(1) / diagonal[0]
    d_prime[0] = rhs[0] / diagonal[0]
    for i in range(1, size):
        denominator = diagonal[i] - c_prime[i - 1]
        c_prime[i] = Fraction(1) / denominator
        d_prime[i] = (rhs[i] - d_prime[i - 1]) / denominator
    solution = [Fraction(0)] * size
    solution[-1] = d_prime[-1]
    for i in range(size - 2, -1, -1):
        solution[i] = d_prime[i] - c_prime[i] * solution[i + 1]
    return solution


def chain_data(t: CyclicQuotientType) -> ExceptionalChain:
    """
    Exceptional chain of the minimal resolution; discrepancies solve sum_j a_j (E_j . E_i) = b_i - 2.
    """
    b = t.hj.coefficients
    discrepancies = _solve_tridiagonal([Fraction(-x) for x in b], [Fraction(x - 2) for x in b])
    chain = ExceptionalChain(tuple(-x for x in b), tuple(discrepancies))
    if not all(-1 < d <= 0 for d in discrepancies):
        raise InconsistencyError(f"Discrepancies of {t.label} outside (-1, 0]: {discrepancies}")
    return chain


def k_invariant(t: CyclicQuotientType) -> Fraction:
    b = t.hj.coefficients
    return -2 + Fraction(2 + t.a + t.inverse_weight, t.n) + sum(x - 2 for x in b)


def e_invariant(t: CyclicQuotientType) -> Fraction:
    return t.hj.length + 1 - Fraction(1, t.n)


def B_invariant(t: CyclicQuotientType) -> Fraction:
    return 2 * e_invariant(t) + k_invariant(t)


def D_invariant(t: CyclicQuotientType) -> Fraction:
    return Fraction(3 * sum(x - 2 for x in t.hj.coefficients) + 2)


class Basket:
    """
    Multiset of singularity types with multiplicities, iterated in (n, a) order.

    ### Properties:
        `types: list[tuple[CyclicQuotientType, int]]` - (type, multiplicity) pairs\n
        `points: int` - Total number of singular points\n
    """

    def __init__(self, items: Iterable[tuple[CyclicQuotientType, int]] = ()) -> None:
        self._counts: Counter = Counter()
        for t, multiplicity in items:
            self.add(t, multiplicity)

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[int, int, int]]) -> "Basket":
        """
        Build from `(n, a, multiplicity)` triples; weights are normalized.
        """
        return cls((normalize_type(n, a), m) for n, a, m in pairs)

    def add(self, t: CyclicQuotientType, multiplicity: int = 1) -> None:
        if t.n < 2:
            raise ValidationError("Smooth points do not belong in a basket")
        if multiplicity:
            self._counts[t] += multiplicity

    @property
    def types(self) -> list[tuple[CyclicQuotientType, int]]:
        return sorted(self._counts.items())

    @property
    def points(self) -> int:
        return sum(self._counts.values())

    def multiplicity(self, t: CyclicQuotientType) -> int:
        return self._counts.get(t, 0)

    def __iter__(self):
        return iter(self.types)

    def __len__(self) -> int:
        return len(self._counts)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Basket) and self._counts == other._counts

    def __repr__(self) -> str:
        return "{" + ", ".join(f"{m} x {t.label}" for t, m in self.types) + "}"


class BasketInvariants(NamedTuple):
    """Multiplicity-weighted sums k(B), e(B), B(B) = 2e(B) + k(B), D(B)."""

    k: Fraction
    e: Fraction
    B: Fraction
    D: Fraction


def basket_invariants(basket: Basket) -> BasketInvariants:
    k = sum((m * k_invariant(t) for t, m in basket), Fraction(0))
    e = sum((m * e_invariant(t) for t, m in basket), Fraction(0))
    D = sum((m * D_invariant(t) for t, m in basket), Fraction(0))
    return BasketInvariants(k, e, 2 * e + k, D)


class BasketResult(NamedTuple):
    """Basket with the singular-point count and the number of smooth (n = 1) orbits seen."""

    basket: Basket
    singular_points: int
    smooth_orbits: int


def _pair_types(g, h, group) -> tuple[list[CyclicQuotientType], int]:
    m, m_h = g.order, h.order
    A = Subgroup(group, g.powers(), [g])
    B = Subgroup(group, h.powers(), [h])
    g_powers = g.powers()
    h_powers = h.powers()
    types = []
    smooth = 0
    for orbit in group.double_coset_orbits(A, B):
        r = orbit.representative
        r_inv = ~r
        # stabilizer of (A, B r) is A ∩ r^-1 B r; exponent delta in 1..m_h
        delta_of = {r_inv * hp * r: (delta or m_h) for delta, hp in enumerate(h_powers)}
        gamma = next(c for c in range(1, m + 1) if g_powers[c % m] in delta_of)
        n = m // gamma
        if n == 1:
            smooth += 1
            continue
        delta = delta_of[g_powers[gamma % m]]
        if (delta * n) % m_h:
            raise InconsistencyError(f"Non-integral weight from delta={delta}, n={n}, ord(h)={m_h}")
        a = delta * n // m_h
        if gcd(a, n) != 1:
            raise InconsistencyError(f"Stabilizer type 1/{n}(1,{a}) has gcd != 1")
        types.append(normalize_type(n, a))
    return types, smooth


def compute_basket(sys1: SphericalSystem, sys2: SphericalSystem, threads: int = 1) -> BasketResult:
    """
    Basket of (C1 x C2)/G for the covers given by `sys1` and `sys2`.

    For each branch pair (g_i, h_j) and each diagonal orbit on (<g_i>\\G) x (<h_j>\\G) with
    representative (1, r): gamma is least with g_i^gamma in r^-1 <h_j> r, delta is given by
    g_i^gamma = r^-1 h_j^delta r, n = ord(g_i) / gamma and a = delta * n / ord(h_j).
    """
    if sys1.group is not sys2.group:
        raise ValidationError("Both systems must be over the same group object")
    group = sys1.group
    pairs = [(g, h) for g in sys1 for h in sys2]
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(lambda p: _pair_types(p[0], p[1], group), pairs))
    else:
        results = [_pair_types(g, h, group) for g, h in pairs]
    basket = Basket()
    smooth = 0
    for types, smooth_count in results:
        smooth += smooth_count
        for t in types:
            basket.add(t)
    logger.info(f"Basket {basket} ({basket.points} singular points, {smooth} smooth orbits)")
    return BasketResult(basket, basket.points, smooth)
