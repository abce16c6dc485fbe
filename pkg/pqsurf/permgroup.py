# Exact permutation group arithmetic with fully materialized element lists

# Author  : pqsurf contributors
# Date    : 2024-09-02
# License : BSD-3-Clause

"""
### permgroup.py
Permutations, finite permutation groups, subgroups, coset spaces and double cosets.\n

Points are `0..degree-1`. A product `g * h` means "apply g, then h", so groups act on
the right: `point -> h[g[point]]`. Every ordering (elements, classes, cosets) is deterministic.
"""

# fmt: off
import hashlib
import logging
from collections import deque
from functools import cached_property
from math import lcm
from typing import Iterable, NamedTuple, Sequence

from sympy import isprime
from sympy.ntheory import is_quad_residue

from pqsurf.errors import ResourceCapError, ValidationError
from pqsurf.params import Limits
# fmt: on

logger = logging.getLogger("pqsurf")


class Permutation:
    """
    A bijection of `{0, ..., degree - 1}` stored as its image tuple.

    ### Properties:
        `images: tuple[int, ...]` - images[i] is the image of point i\n
        `degree: int` - Number of points moved or fixed\n
        `order: int` - Least k >= 1 with self**k the identity\n
    """

    __slots__ = ("_images", "_hash", "_order")

    def __init__(self, images: Iterable[int], *, check: bool = True) -> None:
        images = tuple(images)
        if check:
            if sorted(images) != list(range(len(images))):
                raise ValidationError(f"Not a bijection on {len(images)} points: {list(images)}")
        self._images = images
        self._hash = hash(images)
        self._order = None

    @classmethod
    def identity(cls, degree: int) -> "Permutation":
        return cls(range(degree), check=False)

    @classmethod
    def from_cycles(cls, degree: int, *cycles: Sequence[int]) -> "Permutation":
        """
        Build a permutation from disjoint cycles, e.g. `from_cycles(3, (0, 1, 2))`.
        """
        images = list(range(degree))
        seen = set()
        for cycle in cycles:
            for k, point in enumerate(cycle):
                if point in seen or not 0 <= point < degree:
                    raise ValidationError(f"Bad cycle {tuple(cycle)} on {degree} points")
                seen.add(point)
                images[point] = cycle[(k + 1) % len(cycle)]
        return cls(images, check=False)

    @property
    def images(self) -> tuple[int, ...]:
        """
        A `tuple[int, ...]` with the image of each point.
        """
        return self._images

    @property
    def degree(self) -> int:
        """
        A `int` representing the number of points.
        """
        return len(self._images)

    @property
    def order(self) -> int:
        """
        A `int` representing the element order (lcm of the cycle lengths).
        """
        if self._order is None:
            self._order = lcm(1, *(len(c) for c in self.cycles()))
        return self._order

    def is_identity(self) -> bool:
        return all(i == p for i, p in enumerate(self._images))

    def cycles(self) -> list[tuple[int, ...]]:
        """
        Nontrivial cycles, each starting at its smallest point, sorted by that point.
        """
        seen = [False] * len(self._images)
        result = []
        for start in range(len(self._images)):
            if seen[start]:
                continue
            cycle = [start]
            seen[start] = True
            point = self._images[start]
            while point != start:
                cycle.append(point)
                seen[point] = True
                point = self._images[point]
            if len(cycle) > 1:
                result.append(tuple(cycle))
        return result

    def powers(self) -> list["Permutation"]:
        """
        `[self**0, self**1, ..., self**(order - 1)]`.
        """
        result = [Permutation.identity(self.degree)]
        current = self
        while not current.is_identity():
            result.append(current)
            current = current * self
        return result

    def conjugate(self, x: "Permutation") -> "Permutation":
        """
        Return `x * self * x**-1`.
        """
        return x * self * ~x

    def __call__(self, point: int) -> int:
        return self._images[point]

    def __mul__(self, other: "Permutation") -> "Permutation":
        if not isinstance(other, Permutation):
            return NotImplemented
        if len(other._images) != len(self._images):
            raise ValidationError(f"Degree mismatch: {self.degree} vs {other.degree}")
        o = other._images
        return Permutation([o[i] for i in self._images], check=False)

    def __invert__(self) -> "Permutation":
        inverse = [0] * len(self._images)
        for i, p in enumerate(self._images):
            inverse[p] = i
        return Permutation(inverse, check=False)

    def __pow__(self, exponent: int) -> "Permutation":
        base = self if exponent >= 0 else ~self
        exponent = abs(exponent) % self.order
        result = Permutation.identity(self.degree)
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Permutation) and self._images == other._images

    def __lt__(self, other: "Permutation") -> bool:
        return self._images < other._images

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"Permutation({list(self._images)})"

    def __str__(self) -> str:
        cycles = self.cycles()
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cycles) if cycles else "()"


def element_order(g: Permutation) -> int:
    """
    Least k >= 1 with g^k = identity.
    """
    return g.order


def _closure(
    generators: Sequence[Permutation],
    degree: int,
    cap: int | None = None,
    stop_above: int | None = None,
) -> list[Permutation] | None:
    """
    Breadth-first closure of `generators` starting from the identity.

    ### Args:
        cap : `int, optional`
            Raise `ResourceCapError` once more elements than this are produced.

        stop_above : `int, optional`
            Return `None` as soon as the closure grows past this size.

    ### Returns:
        `list[Permutation] | None` : Elements in insertion order.
    """
    identity = Permutation.identity(degree)
    elements = [identity]
    seen = {identity}
    queue = deque([identity])
    while queue:
        current = queue.popleft()
        for gen in generators:
            product = current * gen
            if product in seen:
                continue
            seen.add(product)
            elements.append(product)
            queue.append(product)
            if cap is not None and len(elements) > cap:
                raise ResourceCapError(f"Group order exceeds the configured cap of {cap}")
            if stop_above is not None and len(elements) > stop_above:
                return None
    return elements


class ConjugacyClass(NamedTuple):
    """A conjugacy class with representative, element order and a conjugator for every member."""

    representative: Permutation
    elements: tuple[Permutation, ...]
    element_order: int
    conjugators: dict

    @property
    def size(self) -> int:
        return len(self.elements)


class DoubleCosetOrbit(NamedTuple):
    """One orbit of G on (A\\G) x (B\\G), normalized to the pair (A*1, B*representative)."""

    representative: Permutation
    size: int


class FiniteGroup:
    """
    A finite permutation group with its complete element list.

    ### Properties:
        `degree: int` - Number of points\n
        `generators: tuple[Permutation, ...]` - Generators as given\n
        `elements: tuple[Permutation, ...]` - All elements, breadth-first closure order\n
        `order: int` - Number of elements\n
        `identity: Permutation` - Identity element\n
        `classes: list[ConjugacyClass]` - Sorted by (element order, size, minimal element)\n
        `name: str` - Display name\n
    """

    def __init__(
        self,
        degree: int,
        generators: Sequence[Permutation],
        elements: Sequence[Permutation],
        name: str | None = None,
    ) -> None:
        self._degree = degree
        self._generators = tuple(generators)
        self._elements = tuple(elements)
        self._index = {g: i for i, g in enumerate(self._elements)}
        self._name = name or f"G{len(self._elements)}"

    @property
    def degree(self) -> int:
        """
        A `int` representing the number of points acted on.
        """
        return self._degree

    @property
    def generators(self) -> tuple[Permutation, ...]:
        """
        A `tuple` of the generating permutations.
        """
        return self._generators

    @property
    def elements(self) -> tuple[Permutation, ...]:
        """
        A `tuple` of all elements in closure order.
        """
        return self._elements

    @property
    def order(self) -> int:
        return len(self._elements)

    @property
    def identity(self) -> Permutation:
        return self._elements[0]

    @property
    def name(self) -> str:
        return self._name

    @cached_property
    def fingerprint(self) -> str:
        """
        A `str` hash of the sorted element list, stable across runs.
        """
        digest = hashlib.sha256()
        for g in sorted(self._elements):
            digest.update(bytes(g.images) if self._degree < 256 else repr(g.images).encode())
        return digest.hexdigest()[:32]

    def __contains__(self, g: Permutation) -> bool:
        return g in self._index

    def __len__(self) -> int:
        return len(self._elements)

    def __iter__(self):
        return iter(self._elements)

    def index_of(self, g: Permutation) -> int:
        try:
            return self._index[g]
        except KeyError:
            raise ValidationError(f"{g!r} is not an element of {self.name}") from None

    def check_element(self, g: Permutation) -> Permutation:
        if g.degree != self._degree:
            raise ValidationError(f"Degree mismatch: element has {g.degree} points, group has {self._degree}")
        self.index_of(g)
        return g

    @cached_property
    def classes(self) -> list[ConjugacyClass]:
        remaining = set(self._elements)
        classes = []
        for start in self._elements:
            if start not in remaining:
                continue
            # orbit of conjugation with a conjugator x (x start x^-1 = member) per member
            witness = {start: self.identity}
            queue = deque([start])
            while queue:
                current = queue.popleft()
                for t in self._generators:
                    image = t * current * ~t
                    if image not in witness:
                        witness[image] = t * witness[current]
                        queue.append(image)
            representative = min(witness)
            back = ~witness[representative]
            conjugators = {member: x * back for member, x in witness.items()}
            remaining.difference_update(witness)
            classes.append(
                ConjugacyClass(
                    representative=representative,
                    elements=tuple(sorted(witness)),
                    element_order=representative.order,
                    conjugators=conjugators,
                )
            )
        classes.sort(key=lambda c: (c.element_order, c.size, c.representative))
        logger.debug(f"{self.name}: {len(classes)} conjugacy classes")
        return classes

    @cached_property
    def _class_index(self) -> dict[Permutation, int]:
        return {g: k for k, cls in enumerate(self.classes) for g in cls.elements}

    def class_index(self, g: Permutation) -> int:
        """
        Position of the conjugacy class of `g` in `classes`.
        """
        self.check_element(g)
        return self._class_index[g]

    def class_of(self, g: Permutation) -> ConjugacyClass:
        return self.classes[self.class_index(g)]

    def are_conjugate(self, g: Permutation, h: Permutation) -> tuple[bool, Permutation | None]:
        """
        Decide conjugacy of `g` and `h`.

        ### Returns:
            `tuple[bool, Permutation | None]` : `(True, x)` with `x * g * x**-1 == h`, or `(False, None)`.
        """
        cls_g, cls_h = self.class_index(g), self.class_index(h)
        if cls_g != cls_h:
            return False, None
        conjugators = self.classes[cls_g].conjugators
        # x_h r x_h^-1 = h and x_g r x_g^-1 = g, so (x_h x_g^-1) g (x_h x_g^-1)^-1 = h
        x = conjugators[h] * ~conjugators[g]
        if x * g * ~x != h:
            raise AssertionError("conjugator bookkeeping broke")
        return True, x

    def generates(self, elements: Sequence[Permutation]) -> bool:
        """
        `True` when `elements` generate the whole group.
        """
        if self.order == 1:
            return True
        closure = _closure(list(elements), self._degree, stop_above=self.order // 2)
        return closure is None or len(closure) == self.order

    def subgroup_generated(self, gens: Sequence[Permutation], label: str | None = None) -> "Subgroup":
        gens = [self.check_element(g) for g in gens]
        return Subgroup(self, _closure(gens, self._degree), gens, label)

    @cached_property
    def trivial_subgroup(self) -> "Subgroup":
        return Subgroup(self, [self.identity], [], "C1")

    @cached_property
    def whole(self) -> "Subgroup":
        return Subgroup(self, self._elements, self._generators, self.name)

    def centralizer(self, g: Permutation) -> "Subgroup":
        members = [x for x in self._elements if x * g == g * x]
        return Subgroup(self, members, members)

    def normalizer(self, H: "Subgroup") -> "Subgroup":
        """
        N_G(H) as a subgroup, elements kept in the group's element order.
        """
        gens = H.generators or H.elements
        members = [x for x in self._elements if all((~x * h * x) in H for h in gens)]
        return Subgroup(self, members, members)

    def coset_action(self, H: "Subgroup") -> "CosetSpace":
        return CosetSpace(self, H)

    def double_coset_orbits(self, A: "Subgroup", B: "Subgroup") -> list[DoubleCosetOrbit]:
        """
        Orbits of the diagonal action on (A\\G) x (B\\G).

        Each orbit contains a pair (A*1, B*r); `r` is the representative of the smallest coset
        index in the A-orbit on B\\G. The stabilizer of that pair is `A ∩ r^-1 B r`.
        """
        space = CosetSpace(self, B)
        index_a = self.order // A.order
        actions = [space.action(a) for a in (A.generators or A.elements)]
        seen = [False] * space.index
        orbits = []
        for start in range(space.index):
            if seen[start]:
                continue
            seen[start] = True
            queue = deque([start])
            size = 1
            while queue:
                c = queue.popleft()
                for act in actions:
                    d = act[c]
                    if not seen[d]:
                        seen[d] = True
                        size += 1
                        queue.append(d)
            orbits.append(DoubleCosetOrbit(space.representatives[start], index_a * size))
        return orbits

    def __repr__(self) -> str:
        return f"FiniteGroup(name={self.name}, order={self.order}, degree={self.degree})"


def group_from_generators(
    degree: int,
    gens: Sequence[Permutation | Sequence[int]],
    order_cap: int = Limits.ORDER_CAP,
    name: str | None = None,
) -> FiniteGroup:
    """
    Materialize the group generated by `gens` on `degree` points.

    ### Args:
        degree : `int`
            Number of points.

        gens : `list[Permutation | list[int]]`
            Generators, as permutations or 0-based image arrays.

        order_cap : `int, optional`
            Largest order that will be materialized. Default 10**6.

    ### Returns:
        `FiniteGroup` : Elements in breadth-first insertion order.
    """
    if degree < 1:
        raise ValidationError(f"Degree must be positive, got {degree}")
    perms = []
    for g in gens:
        perm = g if isinstance(g, Permutation) else Permutation(g)
        if perm.degree != degree:
            raise ValidationError(f"Generator {perm!r} has degree {perm.degree}, expected {degree}")
        perms.append(perm)
    elements = _closure(perms, degree, cap=order_cap)
    group = FiniteGroup(degree, perms, elements, name)
    logger.info(f"Built {group.name}: order {group.order} on {degree} points")
    return group


class Subgroup:
    """
    A subgroup of a materialized `FiniteGroup`.

    ### Properties:
        `parent: FiniteGroup` - Ambient group\n
        `elements: tuple[Permutation, ...]` - Members, closure order\n
        `generators: tuple[Permutation, ...]` - Generators as given\n
        `order: int` - Number of members\n
        `index: int` - [parent : self]\n
        `label: str | None` - Structure label when known\n
    """

    def __init__(
        self,
        parent: FiniteGroup,
        elements: Sequence[Permutation],
        generators: Sequence[Permutation] = (),
        label: str | None = None,
    ) -> None:
        self._parent = parent
        self._elements = tuple(elements)
        self._members = frozenset(self._elements)
        self._generators = tuple(generators)
        self._label = label
        self._as_group = None
        if parent.order % len(self._elements):
            raise ValidationError(f"Subgroup order {len(self._elements)} does not divide {parent.order}")

    @property
    def parent(self) -> FiniteGroup:
        return self._parent

    @property
    def elements(self) -> tuple[Permutation, ...]:
        return self._elements

    @property
    def members(self) -> frozenset:
        """
        A `frozenset` of the elements, for membership tests and comparisons.
        """
        return self._members

    @property
    def generators(self) -> tuple[Permutation, ...]:
        return self._generators

    @property
    def order(self) -> int:
        return len(self._elements)

    @property
    def index(self) -> int:
        return self._parent.order // len(self._elements)

    @property
    def label(self) -> str:
        if self._label is None:
            self._label = structure_label(self)
        return self._label

    def __contains__(self, g: Permutation) -> bool:
        return g in self._members

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Subgroup) and self._members == other._members

    def __hash__(self) -> int:
        return hash(self._members)

    def conjugate(self, x: Permutation) -> "Subgroup":
        return Subgroup(
            self._parent,
            [h.conjugate(x) for h in self._elements],
            [h.conjugate(x) for h in self._generators],
            self._label,
        )

    def as_group(self) -> FiniteGroup:
        """
        The subgroup as a `FiniteGroup` in its own right, same points, same element order.
        Built once and reused, so classes of H are computed a single time.
        """
        if self._as_group is None:
            gens = self._generators or self._elements[1:]
            self._as_group = FiniteGroup(self._parent.degree, gens, self._elements, self.label)
        return self._as_group

    def __repr__(self) -> str:
        return f"Subgroup(label={self.label}, order={self.order}, index={self.index})"


class CosetSpace:
    """
    Right cosets H*r of a subgroup, with the action (H*r)*g = H*(r*g).

    ### Properties:
        `parent: FiniteGroup` - Ambient group\n
        `subgroup: Subgroup` - The subgroup H\n
        `representatives: list[Permutation]` - First element (closure order) of each coset\n
        `index: int` - Number of cosets\n
    """

    def __init__(self, parent: FiniteGroup, subgroup: Subgroup) -> None:
        self._parent = parent
        self._subgroup = subgroup
        self._coset_of: dict[Permutation, int] = {}
        self._representatives: list[Permutation] = []
        self._actions: dict[Permutation, tuple[int, ...]] = {}
        for g in parent.elements:
            if g in self._coset_of:
                continue
            k = len(self._representatives)
            self._representatives.append(g)
            for h in subgroup.elements:
                self._coset_of[h * g] = k
        if len(self._representatives) * subgroup.order != parent.order:
            raise AssertionError("coset count does not match the index")

    @property
    def parent(self) -> FiniteGroup:
        return self._parent

    @property
    def subgroup(self) -> Subgroup:
        return self._subgroup

    @property
    def representatives(self) -> list[Permutation]:
        return self._representatives

    @property
    def index(self) -> int:
        return len(self._representatives)

    def coset_of(self, g: Permutation) -> int:
        return self._coset_of[g]

    def action(self, g: Permutation) -> tuple[int, ...]:
        """
        Column of the action table for `g`: coset c goes to `action(g)[c]`.
        """
        column = self._actions.get(g)
        if column is None:
            column = tuple(self._coset_of[r * g] for r in self._representatives)
            self._actions[g] = column
        return column

    def act(self, g: Permutation, coset: int) -> int:
        return self.action(g)[coset]

    def table(self) -> dict[Permutation, tuple[int, ...]]:
        """
        The full action table, one column per group element.
        """
        return {g: self.action(g) for g in self._parent.elements}

    def cycles(self, g: Permutation) -> list[tuple[int, ...]]:
        """
        All cycles of `g` on the cosets, fixed cosets included, each starting at its smallest coset.
        """
        column = self.action(g)
        seen = [False] * len(column)
        result = []
        for start in range(len(column)):
            if seen[start]:
                continue
            cycle = [start]
            seen[start] = True
            c = column[start]
            while c != start:
                cycle.append(c)
                seen[c] = True
                c = column[c]
            result.append(tuple(cycle))
        return result


class SubgroupClass(NamedTuple):
    """A conjugacy class of subgroups: representative, number of conjugates and structure label."""

    representative: Subgroup
    conjugates: int
    label: str

    @property
    def order(self) -> int:
        return self.representative.order


def structure_label(H: Subgroup) -> str:
    """
    Best-effort isomorphism-type label: `C{n}`, `C2^k`, `S3`, `D{m}`, `A4`, `C{m}:C{k}`, the parent
    name for the whole group, or `order {n}` when nothing else applies.
    """
    n = H.order
    elements = H.elements
    if n == H.parent.order:
        return H.parent.name
    orders = [g.order for g in elements]
    if n in orders:
        return f"C{n}"
    abelian = all(a * b == b * a for a in elements for b in elements)
    if abelian and set(orders) <= {1, 2}:
        return f"C2^{n.bit_length() - 1}"
    if n % 2 == 0:
        m = n // 2
        for r in elements:
            if r.order != m:
                continue
            rotations = set(r.powers())
            inverse = ~r
            if all(g.order == 2 and ~g * r * g == inverse for g in elements if g not in rotations):
                return "S3" if m == 3 else f"D{m}"
    if n == 12 and sorted(set(orders)) == [1, 2, 3] and orders.count(2) == 3:
        return "A4"
    for x in sorted(elements, key=lambda g: -g.order):
        m = x.order
        if m < 2:
            break
        cyclic = set(x.powers())
        if not all(~g * x * g in cyclic for g in elements):
            continue
        k = n // m
        for y in elements:
            power = y
            step = 1
            while power not in cyclic:
                power = power * y
                step += 1
            if step == k:
                return f"C{m}:C{k}"
    return f"order {n}"


def subgroup_classes(group: FiniteGroup, max_generators: int = 2) -> list[SubgroupClass]:
    """
    Conjugacy classes of subgroups generated by at most `max_generators` (1 or 2) elements.

    The first generator runs over class representatives and the second over orbit representatives
    of the first's centralizer, which covers every 2-generated subgroup up to conjugacy.
    """
    if max_generators not in (1, 2):
        raise ValidationError("max_generators must be 1 or 2")
    known: dict[frozenset, int] = {}
    found: list[SubgroupClass] = []

    def register(gens: list[Permutation]) -> None:
        closure = _closure(gens, group.degree, stop_above=group.order // 2)
        members = frozenset(closure) if closure is not None else frozenset(group.elements)
        if members in known:
            return
        if closure is None:
            known[members] = len(found)
            found.append(SubgroupClass(group.whole, 1, group.whole.label))
            return
        H = Subgroup(group, closure, gens)
        conjugates = set()
        for x in group.elements:
            conj = frozenset(h.conjugate(x) for h in H.elements)
            if conj not in conjugates:
                conjugates.add(conj)
                known[conj] = len(found)
        found.append(SubgroupClass(H, len(conjugates), H.label))
        logger.debug(f"Subgroup class {H.label}: order {H.order}, {len(conjugates)} conjugates")

    register([])
    for cls in group.classes:
        x = cls.representative
        register([x])
        if max_generators == 1:
            continue
        centralizer = [c for c in group.elements if c * x == x * c]
        seen = set()
        for y in group.elements:
            if y in seen:
                continue
            seen.update(y.conjugate(c) for c in centralizer)
            register([x, y])
    found.sort(key=lambda s: (s.order, s.label))
    logger.info(f"{group.name}: {len(found)} conjugacy classes of subgroups with <= {max_generators} generators")
    return found


class PSL2:
    """
    PSL(2, q) for an odd prime q, acting on the projective line P^1(F_q).

    Points `0..q-1` are the field elements and point `q` is infinity. A matrix [[a, b], [c, d]]
    acts on row vectors (x : 1), i.e. x -> (a*x + c) / (b*x + d), so matrix products map to
    permutation products in the same order.

    ### Properties:
        `q: int` - Field size\n
        `group: FiniteGroup` - The group on q + 1 points\n
        `standard_generators: tuple` - [[1, 1], [0, 1]] and [[0, 1], [-1, 0]]\n
    """

    def __init__(self, q: int, order_cap: int = Limits.ORDER_CAP) -> None:
        if not isinstance(q, int) or q < 3 or not isprime(q):
            raise ValidationError(f"q must be an odd prime, got {q!r}")
        self._q = q
        gens = [self.element([[1, 1], [0, 1]], check_group=False), self.element([[0, 1], [-1, 0]], check_group=False)]
        self._group = group_from_generators(q + 1, gens, order_cap=order_cap, name=f"PSL(2,{q})")
        expected = q * (q - 1) * (q + 1) // 2
        if self._group.order != expected:
            raise AssertionError(f"PSL(2,{q}) closure has order {self._group.order}, expected {expected}")

    @property
    def q(self) -> int:
        return self._q

    @property
    def group(self) -> FiniteGroup:
        return self._group

    @property
    def infinity(self) -> int:
        return self._q

    def _moebius(self, a: int, b: int, c: int, d: int) -> Permutation:
        q = self._q
        images = []
        for x in range(q):
            numerator = (a * x + c) % q
            denominator = (b * x + d) % q
            images.append(q if denominator == 0 else numerator * pow(denominator, -1, q) % q)
        images.append(q if b % q == 0 else a * pow(b, -1, q) % q)
        return Permutation(images, check=False)

    def element(self, matrix: Sequence[Sequence[int]], check_group: bool = True) -> Permutation:
        """
        The permutation of a 2x2 matrix with entries mod q.

        ### Raises:
            `ValidationError` : Malformed, non-invertible, or determinant not a square mod q.
        """
        try:
            (a, b), (c, d) = matrix
            a, b, c, d = (int(v) % self._q for v in (a, b, c, d))
        except (TypeError, ValueError):
            raise ValidationError(f"Expected a 2x2 integer matrix, got {matrix!r}") from None
        det = (a * d - b * c) % self._q
        if det == 0:
            raise ValidationError(f"Matrix {matrix!r} is not invertible mod {self._q}")
        if not is_quad_residue(det, self._q):
            raise ValidationError(
                f"Matrix {matrix!r} has non-square determinant {det} mod {self._q}: not in PSL(2,{self._q})"
            )
        perm = self._moebius(a, b, c, d)
        if check_group:
            self._group.check_element(perm)
        return perm

    @cached_property
    def outer_twist(self) -> Permutation:
        """
        The point permutation x -> u*x of the PGL element diag(u, 1), u the least non-square mod q.
        """
        u = next(v for v in range(2, self._q) if not is_quad_residue(v, self._q))
        return self._moebius(u, 0, 0, 1)

    def outer_automorphism(self, g: Permutation) -> Permutation:
        """
        Image of `g` under conjugation by `outer_twist`, an automorphism that is not inner.
        """
        twist = self.outer_twist
        return ~twist * g * twist

    def __repr__(self) -> str:
        return f"PSL2(q={self._q}, order={self._group.order})"


def psl2_group(q: int, order_cap: int = Limits.ORDER_CAP) -> PSL2:
    """
    PSL(2, q) on the projective line; `.group` is the `FiniteGroup`, `.element(matrix)` the matrix map.
    """
    return PSL2(q, order_cap)
