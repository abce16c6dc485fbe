# Surface invariants of the minimal resolution of (C1 x C2)/G

# Author  : pqsurf contributors
# Date    : 2024-09-05
# License : BSD-3-Clause

# fmt: off
import logging
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from typing import NamedTuple, Sequence

from pqsurf.covers import SphericalSystem, genus_of_cover, induced_quotient_monodromy, push_to_subgroup
from pqsurf.errors import InconsistencyError, ValidationError
from pqsurf.params import Limits
from pqsurf.permgroup import Subgroup
from pqsurf.singularities import Basket, BasketInvariants, basket_invariants, compute_basket
# fmt: on

logger = logging.getLogger("pqsurf")

# left/right just factor
LJF = 22
RJF = 12


def _integral(value: Fraction, what: str) -> int:
    if value.denominator != 1:
        raise InconsistencyError(f"{what} = {value} is not an integer; the basket does not fit the data")
    return value.numerator


def _volume(g1: int, g2: int, group_order: int) -> Fraction:
    return Fraction(8 * (g1 - 1) * (g2 - 1), group_order)


def chern_numbers(g1: int, g2: int, group_order: int, basket: Basket) -> tuple[int, int]:
    """
    K^2 = 8(g1-1)(g2-1)/|G| - k(B) and c2 = 4(g1-1)(g2-1)/|G| + e(B).

    ### Raises:
        `InconsistencyError` : Either value is not an integer.
    """
    inv = basket_invariants(basket)
    K2 = _integral(_volume(g1, g2, group_order) - inv.k, "K^2")
    c2 = _integral(_volume(g1, g2, group_order) / 2 + inv.e, "c2")
    return K2, c2


def k_minus_e_squared(g1: int, g2: int, group_order: int, basket: Basket) -> tuple[int, bool]:
    """
    (K - E)^2 = 8(g1-1)(g2-1)/|G| - k(B) - D(B), with the flag "value > 0".
    """
    inv = basket_invariants(basket)
    value = _integral(_volume(g1, g2, group_order) - inv.k - inv.D, "(K-E)^2")
    return value, value > 0


class HodgeDiamond(NamedTuple):
    """h^{p,q} of a surface: rows (1), (q, q), (pg, h11, pg), (q, q), (1)."""

    q: int
    pg: int
    h11: int

    @property
    def rows(self) -> tuple[tuple[int, ...], ...]:
        return (1,), (self.q, self.q), (self.pg, self.h11, self.pg), (self.q, self.q), (1,)

    def __str__(self) -> str:
        width = 5 * 3
        return "\n".join(" ".join(str(v).rjust(4) for v in row).center(width) for row in self.rows)


class SurfaceInvariants:
    """
    Invariants of the minimal resolution X of (C1 x C2)/G.

    ### Properties:
        `g1: int` - Genus of C1\n
        `g2: int` - Genus of C2\n
        `group_order: int` - |G|\n
        `basket: Basket` - Singularities of the quotient\n
        `basket_invariants: BasketInvariants` - k, e, B, D of the basket\n
        `KX2: int` - K_X^2\n
        `c2: int` - Topological Euler number\n
        `chi: int` - Holomorphic Euler characteristic\n
        `q: int` - Irregularity\n
        `pg: int` - Geometric genus\n
        `h11: int` - h^{1,1}\n
        `KminusE2: int` - (K_X - E)^2\n
        `criterion_satisfied: bool` - (K_X - E)^2 > 0\n
        `general_type_assumed: bool` - Positivity only certifies bigness for surfaces of general type,
            which is assumed, not checked\n
        `singular_points: int` - Points in the basket\n
    """

    def __init__(self, g1: int, g2: int, group_order: int, basket: Basket, q: int = 0) -> None:
        self._g1 = g1
        self._g2 = g2
        self._group_order = group_order
        self._basket = basket
        self._q = q
        self._basket_invariants = basket_invariants(basket)
        self._KX2, self._c2 = chern_numbers(g1, g2, group_order, basket)
        self._KminusE2, self._criterion_satisfied = k_minus_e_squared(g1, g2, group_order, basket)
        self._diamond = hodge_diamond(self)

    @property
    def g1(self) -> int:
        return self._g1

    @property
    def g2(self) -> int:
        return self._g2

    @property
    def group_order(self) -> int:
        return self._group_order

    @property
    def basket(self) -> Basket:
        return self._basket

    @property
    def basket_invariants(self) -> BasketInvariants:
        return self._basket_invariants

    @property
    def KX2(self) -> int:
        """
        A `int` representing K_X^2.
        """
        return self._KX2

    @property
    def c2(self) -> int:
        """
        A `int` representing c_2(X), the topological Euler number.
        """
        return self._c2

    @property
    def e_top(self) -> int:
        return self._c2

    @property
    def chi(self) -> int:
        """
        A `int` representing chi(O_X) = (K^2 + c2) / 12.
        """
        return (self._KX2 + self._c2) // 12

    @property
    def q(self) -> int:
        return self._q

    @property
    def pg(self) -> int:
        return self._diamond.pg

    @property
    def h11(self) -> int:
        return self._diamond.h11

    @property
    def diamond(self) -> HodgeDiamond:
        return self._diamond

    @property
    def KminusE2(self) -> int:
        """
        A `int` representing (K_X - E)^2, E the reduced exceptional divisor.
        """
        return self._KminusE2

    @property
    def criterion_satisfied(self) -> bool:
        return self._criterion_satisfied

    @property
    def general_type_assumed(self) -> bool:
        return True

    @property
    def K2_over_chi(self) -> Fraction:
        return Fraction(self._KX2, self.chi) if self.chi else Fraction(0)

    @property
    def singular_points(self) -> int:
        return self._basket.points

    def numerics(self) -> tuple[int, int, int, int, int]:
        """
        `(K^2, c2, pg, h11, (K-E)^2)`, the tuple compared across twists.
        """
        return self._KX2, self._c2, self.pg, self.h11, self._KminusE2

    def __repr__(self) -> str:
        return (
            f"[SurfaceInvariants: |G|={self._group_order}, g=({self._g1},{self._g2})]\n{'-' * 80}\n"
            f"{'Basket'.ljust(LJF)} {'(Basket)'.rjust(RJF)} | {self._basket}\n"
            f"{'Singular Points'.ljust(LJF)} {'(int)'.rjust(RJF)} | {self.singular_points}\n"
            f"{'K^2'.ljust(LJF)} {'(int)'.rjust(RJF)} | {self._KX2}\n"
            f"{'c2'.ljust(LJF)} {'(int)'.rjust(RJF)} | {self._c2}\n"
            f"{'chi'.ljust(LJF)} {'(int)'.rjust(RJF)} | {self.chi}\n"
            f"{'q'.ljust(LJF)} {'(int)'.rjust(RJF)} | {self._q}\n"
            f"{'pg'.ljust(LJF)} {'(int)'.rjust(RJF)} | {self.pg}\n"
            f"{'h11'.ljust(LJF)} {'(int)'.rjust(RJF)} | {self.h11}\n"
            f"{'(K-E)^2'.ljust(LJF)} {'(int)'.rjust(RJF)} | {self._KminusE2}\n"
            f"{'Criterion Satisfied'.ljust(LJF)} {'(bool)'.rjust(RJF)} | {self._criterion_satisfied}\n"
        )


def hodge_diamond(inv: SurfaceInvariants) -> HodgeDiamond:
    """
    Hodge numbers from Noether: chi = (K^2 + c2)/12, pg = chi - 1 + q, h11 = c2 - 2 + 4q - 2pg.

    ### Raises:
        `InconsistencyError` : K^2 + c2 not divisible by 12, or a negative Hodge number.
    """
    total = inv.KX2 + inv.c2
    if total % 12:
        raise InconsistencyError(f"Noether fails: K^2 + c2 = {total} is not divisible by 12")
    chi = total // 12
    pg = chi - 1 + inv.q
    h11 = inv.c2 - 2 + 4 * inv.q - 2 * pg
    if min(pg, h11, inv.q) < 0:
        raise InconsistencyError(f"Negative Hodge number: q={inv.q}, pg={pg}, h11={h11}")
    return HodgeDiamond(inv.q, pg, h11)


def irregularity(sys1: SphericalSystem, sys2: SphericalSystem) -> int:
    """
    q = g(C1/G) + g(C2/G), each read off the induced monodromy on the single coset of G.
    """
    return sum(induced_quotient_monodromy(s, s.group.whole).quotient_genus for s in (sys1, sys2))


def surface_invariants(
    sys1: SphericalSystem, sys2: SphericalSystem, q: int | None = None, threads: int = 1
) -> SurfaceInvariants:
    """
    Full invariants of the surface defined by two systems over the same group; `q` defaults to
    `irregularity(sys1, sys2)`.
    """
    result = compute_basket(sys1, sys2, threads)
    if q is None:
        q = irregularity(sys1, sys2)
    return SurfaceInvariants(genus_of_cover(sys1), genus_of_cover(sys2), sys1.group.order, result.basket, q)


class TwistReport(NamedTuple):
    """Invariants over ordered pairs, with the minimum (K-E)^2 and the uniformity flags."""

    systems1: list[SphericalSystem]
    systems2: list[SphericalSystem]
    entries: list[list[SurfaceInvariants]]
    min_KminusE2: int
    all_positive: bool
    numerically_constant: bool

    def distinct_numerics(self) -> list[tuple[int, int, int, int, int]]:
        return sorted({entry.numerics() for row in self.entries for entry in row})


def twist_report(
    systems1: Sequence[SphericalSystem],
    systems2: Sequence[SphericalSystem],
    subgroup: Subgroup | None = None,
    threads: int = 1,
    node_cap: int = Limits.SEARCH_NODE_CAP,
) -> TwistReport:
    """
    Invariants for every ordered pair (s, t) of `systems1` x `systems2`.

    ### Args:
        subgroup : `Subgroup, optional`
            When given, the systems are over the parent group and each is first pushed to an H-system
            of the same H-group through its induced monodromy on C -> C/H.
    """
    if not systems1 or not systems2:
        raise ValidationError("Twist sweep needs at least one system on each side")
    if subgroup is not None:
        systems1 = [push_to_subgroup(s, subgroup, node_cap) for s in systems1]
        systems2 = [push_to_subgroup(s, subgroup, node_cap) for s in systems2]
    pairs = [(s, t) for s in systems1 for t in systems2]
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            flat = list(pool.map(lambda p: surface_invariants(p[0], p[1]), pairs))
    else:
        flat = [surface_invariants(s, t) for s, t in pairs]
    width = len(systems2)
    entries = [flat[k : k + width] for k in range(0, len(flat), width)]
    min_value = min(entry.KminusE2 for entry in flat)
    constant = len({entry.numerics() for entry in flat}) == 1
    logger.info(f"Twist sweep: {len(flat)} pairs, min (K-E)^2 = {min_value}, constant = {constant}")
    return TwistReport(list(systems1), list(systems2), entries, min_value, min_value > 0, constant)
