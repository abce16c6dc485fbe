# Spherical generator systems and the branched covers of the line they define

# Author  : pqsurf contributors
# Date    : 2024-09-03
# License : BSD-3-Clause

"""
### covers.py
Spherical systems, Riemann-Hurwitz genera, induced monodromy on intermediate quotients C/H,
Hurwitz moves and enumeration of systems with prescribed conjugacy classes.\n
"""

# fmt: off
import logging
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from itertools import permutations, product
from typing import Callable, Iterable, NamedTuple, Sequence

from pqsurf.errors import InconsistencyError, ResourceCapError, ValidationError
from pqsurf.params import Limits
from pqsurf.permgroup import FiniteGroup, Permutation, Subgroup
# fmt: on

logger = logging.getLogger("pqsurf")


class SphericalSystem:
    """
    An ordered generating tuple g_1, ..., g_r of a group with g_1 * ... * g_r = 1.

    ### Properties:
        `group: FiniteGroup` - Group the elements live in\n
        `elements: tuple[Permutation, ...]` - The local monodromies in order\n
        `signature: tuple[int, ...]` - Element orders m_1, ..., m_r\n
    """

    def __init__(self, group: FiniteGroup, elements: Sequence[Permutation]) -> None:
        self._group = group
        self._elements = tuple(elements)
        self._signature = tuple(g.order for g in self._elements)

    @property
    def group(self) -> FiniteGroup:
        return self._group

    @property
    def elements(self) -> tuple[Permutation, ...]:
        return self._elements

    @property
    def signature(self) -> tuple[int, ...]:
        return self._signature

    def __len__(self) -> int:
        return len(self._elements)

    def __iter__(self):
        return iter(self._elements)

    def __getitem__(self, i: int) -> Permutation:
        return self._elements[i]

    def __eq__(self, other: object) -> bool:
        return isinstance(other, SphericalSystem) and other._group is self._group and other._elements == self._elements

    def __hash__(self) -> int:
        return hash(self._elements)

    def class_indices(self) -> tuple[int, ...]:
        return tuple(self._group.class_index(g) for g in self._elements)

    def conjugate(self, x: Permutation) -> "SphericalSystem":
        """
        Simultaneous conjugation g_i -> x g_i x^-1.
        """
        return SphericalSystem(self._group, [g.conjugate(x) for g in self._elements])

    def __repr__(self) -> str:
        return f"SphericalSystem(group={self._group.name}, signature={self._signature})"

    def __str__(self) -> str:
        return f"[{', '.join(str(g) for g in self._elements)}]"


def validate_system(group: FiniteGroup, elements: Sequence[Permutation]) -> SphericalSystem:
    """
    Check product-one, generation and nontriviality, then wrap `elements` as a `SphericalSystem`.

    ### Raises:
        `ValidationError` : Empty list, foreign element, identity entry, product != 1, or a proper subgroup.
    """
    if not elements:
        raise ValidationError("A spherical system needs at least one element")
    product = group.identity
    for k, g in enumerate(elements):
        group.check_element(g)
        if g.is_identity():
            raise ValidationError(f"Element {k + 1} is the identity; branch points need order >= 2")
        product = product * g
    if not product.is_identity():
        raise ValidationError(f"Product of the system is {product}, not the identity")
    if not group.generates(elements):
        raise ValidationError(f"The elements generate a proper subgroup of {group.name}")
    return SphericalSystem(group, elements)


def _genus_from_euler(euler: Fraction, what: str) -> int:
    # euler = 2g - 2
    if euler.denominator != 1 or euler.numerator % 2:
        raise InconsistencyError(f"{what}: 2g - 2 = {euler} is not an even integer")
    genus = euler.numerator // 2 + 1
    if genus < 0:
        raise InconsistencyError(f"{what}: negative genus {genus}")
    return genus


def genus_of_cover(sys: SphericalSystem) -> int:
    """
    Genus of the G-cover of P^1 with monodromy `sys`: 2g - 2 = |G| (-2 + sum(1 - 1/m_i)).
    """
    euler = sys.group.order * (-2 + sum(1 - Fraction(1, m) for m in sys.signature))
    return _genus_from_euler(euler, f"cover of signature {sys.signature}")


class BranchDatum(NamedTuple):
    """Branch points of C -> C/H sharing one H-conjugacy class."""

    representative: Permutation
    order: int
    count: int
    class_index: int


class CoverDescription:
    """
    The cover C -> C/H induced by a G-system and a subgroup H.

    ### Properties:
        `total_genus: int` - Genus of C\n
        `quotient_genus: int` - Genus of C/H\n
        `branch_data: list[BranchDatum]` - Grouped by H-class, first-appearance order\n
        `branch_sequence: list[Permutation]` - One H-element per branch point, in encounter order\n
        `subgroup: Subgroup` - The subgroup H\n
    """

    def __init__(
        self,
        total_genus: int,
        quotient_genus: int,
        branch_data: list[BranchDatum],
        branch_sequence: list[Permutation],
        subgroup: Subgroup,
    ) -> None:
        self._total_genus = total_genus
        self._quotient_genus = quotient_genus
        self._branch_data = branch_data
        self._branch_sequence = branch_sequence
        self._subgroup = subgroup

    @property
    def total_genus(self) -> int:
        return self._total_genus

    @property
    def quotient_genus(self) -> int:
        return self._quotient_genus

    @property
    def branch_data(self) -> list[BranchDatum]:
        return self._branch_data

    @property
    def branch_sequence(self) -> list[Permutation]:
        return self._branch_sequence

    @property
    def subgroup(self) -> Subgroup:
        return self._subgroup

    @property
    def branch_points(self) -> int:
        return sum(b.count for b in self._branch_data)

    def class_sequence(self) -> list[Permutation]:
        """
        Class representatives expanded by multiplicity, grouped in first-appearance order.
        """
        return [b.representative for b in self._branch_data for _ in range(b.count)]

    def __repr__(self) -> str:
        classes = ", ".join(f"{b.count}x[{b.representative}] (order {b.order})" for b in self._branch_data)
        return (
            f"CoverDescription(total_genus={self._total_genus}, quotient_genus={self._quotient_genus}, "
            f"branch_points={self.branch_points}, classes=[{classes}])"
        )


def induced_quotient_monodromy(sys: SphericalSystem, H: Subgroup) -> CoverDescription:
    """
    Branch data of C -> C/H from the cycles of each g_i on the cosets H\\G.

    A cycle of length l through the coset H*r with l < ord(g_i) is a branch point whose local
    monodromy is the H-class of r * g_i**l * r**-1. With N = [G:H],
    2 g(C/H) - 2 = -2N + sum_i (N - #cycles of g_i).
    """
    G = sys.group
    if H.parent is not G:
        raise ValidationError("Subgroup and system live in different groups")
    space = G.coset_action(H)
    H_group = H.as_group()
    N = space.index
    euler = -2 * N
    sequence: list[Permutation] = []
    for g in sys:
        cycles = space.cycles(g)
        euler += N - len(cycles)
        m = g.order
        for cycle in cycles:
            length = len(cycle)
            if length == m:
                continue
            r = space.representatives[cycle[0]]
            local = r * g**length * ~r
            if local not in H:
                raise InconsistencyError("local monodromy escaped the subgroup")
            sequence.append(local)
    quotient_genus = _genus_from_euler(Fraction(euler), f"quotient by {H.label}")

    grouped: dict[int, list] = {}
    for local in sequence:
        k = H_group.class_index(local)
        if k not in grouped:
            grouped[k] = [H_group.classes[k].representative, 0]
        grouped[k][1] += 1
    data = [BranchDatum(rep, rep.order, count, k) for k, (rep, count) in grouped.items()]

    total_genus = genus_of_cover(sys)
    # Riemann-Hurwitz for C -> C/H
    lhs = Fraction(2 * total_genus - 2)
    rhs = H.order * (2 * quotient_genus - 2) + sum(b.count * H.order * (1 - Fraction(1, b.order)) for b in data)
    if lhs != rhs:
        raise InconsistencyError(f"Riemann-Hurwitz fails for C -> C/{H.label}: {lhs} != {rhs}")
    logger.debug(f"C/{H.label}: genus {quotient_genus}, {len(sequence)} branch points")
    return CoverDescription(total_genus, quotient_genus, data, sequence, H)


def quotient_genus_table(sys: SphericalSystem, subgroups: Iterable[Subgroup]) -> list[tuple[str, int]]:
    """
    Genus of C/H for each subgroup, as `(label, genus)` pairs in input order.
    """
    return [(H.label, induced_quotient_monodromy(sys, H).quotient_genus) for H in subgroups]


def hurwitz_move(sys: SphericalSystem, i: int, inverse: bool = False) -> SphericalSystem:
    """
    Braid move at positions i, i + 1 (1-based, 1 <= i < r).

    ### Args:
        inverse : `bool, optional`
            `False`: (g_i, g_i+1) -> (g_i g_i+1 g_i^-1, g_i).\n
            `True`: (g_i, g_i+1) -> (g_i+1, g_i+1^-1 g_i g_i+1), which undoes the forward move.
    """
    if not 1 <= i < len(sys):
        raise ValidationError(f"Hurwitz move index {i} out of range 1..{len(sys) - 1}")
    elements = list(sys.elements)
    a, b = elements[i - 1], elements[i]
    if inverse:
        elements[i - 1], elements[i] = b, ~b * a * b
    else:
        elements[i - 1], elements[i] = a * b * ~a, a
    return SphericalSystem(sys.group, elements)


def canonical_form(elements: Sequence[Permutation], conjugators: Iterable[Permutation]) -> tuple:
    """
    Lexicographically least image tuple of `elements` over simultaneous conjugation by `conjugators`.
    """
    return min(tuple(g.conjugate(x).images for g in elements) for x in conjugators)


class _Search:
    """
    Backtracking over class members with g_1 fixed and the last element forced by the product.

    A prefix is dropped as soon as the inverse of its product is not a product of members of the
    remaining classes. The subgroup generated by the prefix is carried along and only regrown when
    a new element falls outside it; the forced last element always lies inside, so a leaf is a
    system exactly when that subgroup is the whole group.
    """

    def __init__(self, group: FiniteGroup, class_reps: Sequence[Permutation], node_cap: int) -> None:
        self.group = group
        self.members = [group.class_of(c).elements for c in class_reps]
        self.first = group.class_of(class_reps[0]).representative
        self.node_cap = node_cap
        self.reachable = self._suffix_products()
        self._grown: dict[tuple[frozenset, Permutation], frozenset] = {}
        self._generators: dict[frozenset, tuple[Permutation, ...]] = {}

    def _suffix_products(self) -> list[frozenset]:
        # reachable[p]: every product g_p * ... * g_r with g_i in the i-th class
        r = len(self.members)
        reachable = [frozenset()] * r
        current = frozenset(self.members[-1])
        reachable[r - 1] = current
        for position in range(r - 2, 0, -1):
            current = frozenset(g * s for g in self.members[position] for s in current)
            reachable[position] = current
        return reachable

    def _grow(self, generated: frozenset, g: Permutation) -> frozenset:
        if g in generated:
            return generated
        key = (generated, g)
        grown = self._grown.get(key)
        if grown is None:
            gens = (*self._generators.get(generated, ()), g)
            grown = self.group.subgroup_generated(gens).members
            self._grown[key] = grown
            self._generators.setdefault(grown, gens)
        return grown

    def branch(self, second: Permutation | None, first_only: bool = False) -> tuple[list[tuple], int]:
        solutions: list[tuple] = []
        nodes = 0
        r = len(self.members)
        whole = self.group.order
        prefix = [self.first] if second is None else [self.first, second]
        start = self.first if second is None else self.first * second
        if ~start not in self.reachable[len(prefix)]:
            return solutions, 1

        def descend(position: int, partial: Permutation, generated: frozenset) -> bool:
            nonlocal nodes
            nodes += 1
            if nodes > self.node_cap:
                raise ResourceCapError(f"Spherical-system search exceeded {self.node_cap} nodes")
            if position == r - 1:
                if len(generated) != whole:
                    return False
                solutions.append((*prefix, ~partial))
                return first_only
            reachable = self.reachable[position + 1]
            for g in self.members[position]:
                extended = partial * g
                if ~extended not in reachable:
                    continue
                prefix.append(g)
                done = descend(position + 1, extended, self._grow(generated, g))
                prefix.pop()
                if done:
                    return True
            return False

        generated = self._grow(frozenset(), self.first)
        if second is not None:
            generated = self._grow(generated, second)
        descend(len(prefix), start, generated)
        return solutions, nodes


def enumerate_systems(
    group: FiniteGroup,
    class_reps: Sequence[Permutation],
    node_cap: int = Limits.SEARCH_NODE_CAP,
    threads: int = 1,
) -> list[SphericalSystem]:
    """
    All spherical systems whose i-th element lies in the class of `class_reps[i]`, one per
    simultaneous-conjugation orbit, in search order.

    ### Args:
        class_reps : `list[Permutation]`
            Any member of each prescribed class, in system order.

        node_cap : `int, optional`
            Backtracking nodes allowed before `ResourceCapError`.

        threads : `int, optional`
            Workers for the second-position split. Output does not depend on it.
    """
    if not class_reps:
        raise ValidationError("At least one conjugacy class is required")
    for c in class_reps:
        group.check_element(c)
    if len(class_reps) == 1:
        # the only product-one 1-tuple is the identity, which is never a branch element
        return []
    search = _Search(group, class_reps, node_cap)
    if len(class_reps) == 2:
        branches = [search.branch(None)]
    else:
        seconds = search.members[1]
        if threads > 1:
            with ThreadPoolExecutor(max_workers=threads) as pool:
                branches = list(pool.map(search.branch, seconds))
        else:
            branches = [search.branch(s) for s in seconds]
    total_nodes = sum(nodes for _, nodes in branches)
    if total_nodes > node_cap:
        raise ResourceCapError(f"Spherical-system search exceeded {node_cap} nodes")

    # g_1 is fixed, so two hits are conjugate exactly when a centralizer element of g_1 relates them
    centralizer = group.centralizer(search.first).elements
    seen = set()
    systems = []
    for solutions, _ in branches:
        for candidate in solutions:
            key = canonical_form(candidate, centralizer)
            if key in seen:
                continue
            seen.add(key)
            systems.append(SphericalSystem(group, candidate))
    logger.info(f"{group.name}: {len(systems)} systems up to conjugation ({total_nodes} search nodes)")
    return systems


def class_choices(group: FiniteGroup, orders: Sequence[int]) -> list[tuple[Permutation, ...]]:
    """
    Every tuple of class representatives whose i-th class has element order `orders[i]`, in
    lexicographic order of class indices.
    """
    if not orders or not all(isinstance(m, int) and not isinstance(m, bool) and m >= 2 for m in orders):
        raise ValidationError(f"A signature is a nonempty list of integers >= 2, got {list(orders)!r}")
    by_order = {m: [c.representative for c in group.classes if c.element_order == m] for m in set(orders)}
    return list(product(*(by_order[m] for m in orders)))


def enumerate_signature(
    group: FiniteGroup,
    orders: Sequence[int],
    node_cap: int = Limits.SEARCH_NODE_CAP,
    threads: int = 1,
) -> list[SphericalSystem]:
    """
    All spherical systems with signature `orders` up to simultaneous conjugation: `enumerate_systems`
    over each choice of classes from `class_choices`, concatenated in that order.

    The class tuple is a conjugation invariant, so no system appears under two choices.
    """
    systems = []
    for reps in class_choices(group, orders):
        systems.extend(enumerate_systems(group, reps, node_cap, threads))
    logger.info(f"{group.name}: {len(systems)} systems of signature {tuple(orders)}")
    return systems


def realize_classes(
    group: FiniteGroup,
    class_reps: Sequence[Permutation],
    node_cap: int = Limits.SEARCH_NODE_CAP,
    max_orders: int = Limits.CLASS_ORDER_TRIES,
) -> SphericalSystem:
    """
    One spherical system with the given class multiset, trying the given order first and then
    the other distinct orderings in lexicographic order of positions.

    ### Raises:
        `ValidationError` : No ordering among the first `max_orders` is realizable.
    """
    if len(class_reps) < 2:
        raise ValidationError("A realizable class multiset needs at least two entries")
    tried = set()
    for ordering in permutations(range(len(class_reps))):
        reps = [class_reps[k] for k in ordering]
        key = tuple(group.class_index(c) for c in reps)
        if key in tried:
            continue
        tried.add(key)
        if len(tried) > max_orders:
            break
        search = _Search(group, reps, node_cap)
        solutions, _ = search.branch(None, first_only=True)
        if solutions:
            return SphericalSystem(group, solutions[0])
    raise ValidationError(f"No spherical system of {group.name} realizes the prescribed classes")


def outer_orbits(
    systems: Sequence[SphericalSystem],
    automorphism: Callable[[Permutation], Permutation],
) -> list[list[int]]:
    """
    Merge systems (indices into `systems`) that an automorphism maps onto each other up to conjugation.
    """
    if not systems:
        return []
    group = systems[0].group
    keys = {canonical_form(s.elements, group.elements): k for k, s in enumerate(systems)}
    parent = list(range(len(systems)))

    def find(k: int) -> int:
        while parent[k] != k:
            parent[k] = parent[parent[k]]
            k = parent[k]
        return k

    for k, s in enumerate(systems):
        image = [automorphism(g) for g in s.elements]
        j = keys.get(canonical_form(image, group.elements))
        if j is None:
            continue
        a, b = find(k), find(j)
        if a != b:
            parent[max(a, b)] = min(a, b)
    orbits: dict[int, list[int]] = {}
    for k in range(len(systems)):
        orbits.setdefault(find(k), []).append(k)
    return sorted(orbits.values())


def push_to_subgroup(
    sys: SphericalSystem,
    H: Subgroup,
    node_cap: int = Limits.SEARCH_NODE_CAP,
    class_order: Sequence[Permutation] | None = None,
) -> SphericalSystem:
    """
    An H-system for the cover C -> C/H induced by `sys`, which must have C/H of genus 0.

    The classes come from `induced_quotient_monodromy`; `class_order`, when given, must list
    members of the same H-classes and fixes the order used for realization.
    """
    cover = induced_quotient_monodromy(sys, H)
    if cover.quotient_genus != 0:
        raise ValidationError(f"C/{H.label} has genus {cover.quotient_genus}; only covers of the line are supported")
    H_group = H.as_group()
    reps = cover.class_sequence()
    if class_order is not None:
        wanted = sorted(H_group.class_index(c) for c in class_order)
        if wanted != sorted(H_group.class_index(c) for c in reps):
            raise ValidationError(f"class_order does not match the branch classes of C -> C/{H.label}")
        reps = list(class_order)
    return realize_classes(H_group, reps, node_cap)
