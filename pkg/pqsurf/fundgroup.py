# Finitely presented groups, coset enumeration and good-presentation certificates

# Author  : pqsurf contributors
# Date    : 2024-09-07
# License : BSD-3-Clause

"""
### fundgroup.py
Words over generators a_1..a_s are tuples of nonzero ints: `k + 1` is a_k and `-(k + 1)` its inverse.\n

`todd_coxeter` is a Hasselgrove-Leech-Trotter enumeration with coincidence processing.
`pi1_trivial_certificate` searches for a presentation of G interleaved with a spherical system
(a "good presentation"); a returned witness re-verifies every equality it records and implies
that the fundamental group of the resolved surface is trivial. The search never claims the
opposite.
"""

# fmt: off
import logging
from concurrent.futures import ThreadPoolExecutor
from itertools import combinations, product
from typing import Callable, Iterable, Iterator, NamedTuple, Sequence

from pqsurf.covers import SphericalSystem, hurwitz_move
from pqsurf.errors import DecompositionError, InconsistencyError, ResourceCapError, ValidationError
from pqsurf.params import Limits, Pi1Status, Shape
from pqsurf.permgroup import FiniteGroup, Permutation
# fmt: on

logger = logging.getLogger("pqsurf")

Word = tuple[int, ...]


def free_reduce(word: Iterable[int]) -> Word:
    stack: list[int] = []
    for letter in word:
        if stack and stack[-1] == -letter:
            stack.pop()
        else:
            stack.append(letter)
    return tuple(stack)


def inverse_word(word: Sequence[int]) -> Word:
    return tuple(-letter for letter in reversed(word))


def cyclic_reduce(word: Iterable[int]) -> Word:
    w = free_reduce(word)
    start, end = 0, len(w)
    while end - start > 1 and w[start] == -w[end - 1]:
        start += 1
        end -= 1
    return w[start:end]


def cyclic_equal(first: Sequence[int], second: Sequence[int]) -> bool:
    """
    `True` when the two words are conjugate in the free group (cyclic rotations of each other once reduced).
    """
    a, b = cyclic_reduce(first), cyclic_reduce(second)
    if len(a) != len(b):
        return False
    if not a:
        return True
    doubled = a + a
    return any(doubled[k : k + len(b)] == b for k in range(len(a)))


def power_word(generator: int, exponent: int) -> Word:
    letter = generator + 1 if exponent > 0 else -(generator + 1)
    return (letter,) * abs(exponent)


def _as_power(word: Sequence[int]) -> tuple[int, int] | None:
    # (generator, exponent) when word is a nonempty power of one generator
    if not word or any(letter != word[0] for letter in word):
        return None
    return abs(word[0]) - 1, len(word) if word[0] > 0 else -len(word)


def evaluate(word: Sequence[int], images: Sequence[Permutation]) -> Permutation:
    """
    Value of `word` with a_k -> images[k]; the empty word evaluates to the identity.
    """
    result = Permutation.identity(images[0].degree)
    inverses: dict[int, Permutation] = {}
    for letter in word:
        k = abs(letter) - 1
        if letter > 0:
            result = result * images[k]
        else:
            if k not in inverses:
                inverses[k] = ~images[k]
            result = result * inverses[k]
    return result


def format_word(word: Sequence[int], names: Sequence[str] | None = None) -> str:
    """
    Human-readable word with runs collapsed, e.g. `r^7` or `r s r s^-1`; `1` for the empty word.
    """
    if not word:
        return "1"
    parts = []
    k = 0
    while k < len(word):
        run = 1
        while k + run < len(word) and word[k + run] == word[k]:
            run += 1
        letter = word[k]
        name = names[abs(letter) - 1] if names else f"a{abs(letter)}"
        exponent = run if letter > 0 else -run
        parts.append(name if exponent == 1 else f"{name}^{exponent}")
        k += run
    return " ".join(parts)


class Presentation:
    """
    A finite presentation <a_1, ..., a_s | R>.

    ### Properties:
        `generators: int` - Number of generators s\n
        `relators: tuple[Word, ...]` - Freely reduced, nonempty, duplicates dropped\n
        `names: tuple[str, ...]` - Display names\n
    """

    def __init__(self, generators: int, relators: Iterable[Sequence[int]], names: Sequence[str] | None = None) -> None:
        if generators < 1:
            raise ValidationError("A presentation needs at least one generator")
        reduced = []
        for relator in relators:
            if any(letter == 0 or abs(letter) > generators for letter in relator):
                raise ValidationError(f"Relator {tuple(relator)} uses letters outside 1..{generators}")
            w = free_reduce(relator)
            if w and w not in reduced:
                reduced.append(w)
        self._generators = generators
        self._relators = tuple(reduced)
        self._names = tuple(names) if names else tuple(f"a{k + 1}" for k in range(generators))

    @property
    def generators(self) -> int:
        return self._generators

    @property
    def relators(self) -> tuple[Word, ...]:
        return self._relators

    @property
    def names(self) -> tuple[str, ...]:
        return self._names

    def with_relator(self, relator: Sequence[int]) -> "Presentation":
        return Presentation(self._generators, (*self._relators, tuple(relator)), self._names)

    def __repr__(self) -> str:
        relators = ", ".join(format_word(r, self._names) for r in self._relators)
        return f"<{', '.join(self._names)} | {relators}>"


class CosetTable(NamedTuple):
    """
    Complete coset table: `rows[c][2k]` is c * a_k and `rows[c][2k + 1]` is c * a_k^-1; row 0 is the subgroup.
    """

    rows: tuple[tuple[int, ...], ...]
    generators: int

    @property
    def index(self) -> int:
        return len(self.rows)

    def act(self, coset: int, word: Sequence[int]) -> int:
        for letter in word:
            coset = self.rows[coset][_column(letter)]
        return coset


def _column(letter: int) -> int:
    return 2 * (abs(letter) - 1) + (0 if letter > 0 else 1)


class _Enumerator:
    """
    HLT coset enumeration. Columns come in pairs (a_k, a_k^-1); `col ^ 1` is the inverse column.
    """

    def __init__(self, generators: int, cap: int) -> None:
        self.columns = 2 * generators
        self.cap = cap
        self.table: list[list[int | None]] = [[None] * self.columns]
        self.parent = [0]

    def define(self, coset: int, col: int) -> None:
        if len(self.table) >= self.cap:
            raise ResourceCapError(f"Coset enumeration exceeded {self.cap} cosets")
        new = len(self.table)
        self.table.append([None] * self.columns)
        self.parent.append(new)
        self.table[coset][col] = new
        self.table[new][col ^ 1] = coset

    def find(self, coset: int) -> int:
        root = coset
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[coset] != root:
            self.parent[coset], coset = root, self.parent[coset]
        return root

    def merge(self, k: int, l: int, queue: list[int]) -> None:
        k, l = self.find(k), self.find(l)
        if k == l:
            return
        if l < k:
            k, l = l, k
        self.parent[l] = k
        queue.append(l)

    def coincidence(self, a: int, b: int) -> None:
        queue: list[int] = []
        self.merge(a, b, queue)
        position = 0
        while position < len(queue):
            gamma = queue[position]
            position += 1
            for col in range(self.columns):
                delta = self.table[gamma][col]
                if delta is None:
                    continue
                self.table[delta][col ^ 1] = None
                mu, nu = self.find(gamma), self.find(delta)
                if self.table[mu][col] is not None:
                    self.merge(nu, self.table[mu][col], queue)
                elif self.table[nu][col ^ 1] is not None:
                    self.merge(mu, self.table[nu][col ^ 1], queue)
                else:
                    self.table[mu][col] = nu
                    self.table[nu][col ^ 1] = mu

    def scan_and_fill(self, alpha: int, cols: Sequence[int]) -> None:
        table = self.table
        f, i = alpha, 0
        b, j = alpha, len(cols) - 1
        while True:
            while i <= j and table[f][cols[i]] is not None:
                f = table[f][cols[i]]
                i += 1
            if i > j:
                if f != alpha:
                    self.coincidence(f, alpha)
                return
            while j >= i and table[b][cols[j] ^ 1] is not None:
                b = table[b][cols[j] ^ 1]
                j -= 1
            if j < i:
                self.coincidence(f, b)
                return
            if i == j:
                table[f][cols[i]] = b
                table[b][cols[i] ^ 1] = f
                return
            self.define(f, cols[i])

    def run(self, relators: Sequence[Sequence[int]], subgroup_words: Sequence[Sequence[int]]) -> CosetTable:
        relator_cols = [[_column(x) for x in r] for r in relators]
        for w in subgroup_words:
            self.scan_and_fill(0, [_column(x) for x in w])
        alpha = 0
        while alpha < len(self.table):
            for cols in relator_cols:
                if self.parent[alpha] != alpha:
                    break
                self.scan_and_fill(alpha, cols)
            if self.parent[alpha] == alpha:
                for col in range(self.columns):
                    if self.table[alpha][col] is None:
                        self.define(alpha, col)
            alpha += 1
        live = [c for c in range(len(self.table)) if self.parent[c] == c]
        renumber = {c: k for k, c in enumerate(live)}
        rows = []
        for c in live:
            row = self.table[c]
            if any(entry is None or entry not in renumber for entry in row):
                raise InconsistencyError("Coset enumeration finished with an incomplete table")
            rows.append(tuple(renumber[entry] for entry in row))
        return CosetTable(tuple(rows), self.columns // 2)


def todd_coxeter(
    pres: Presentation,
    subgroup_words: Sequence[Sequence[int]] = (),
    coset_cap: int = Limits.COSET_CAP,
) -> CosetTable:
    """
    Enumerate the cosets of the subgroup generated by `subgroup_words`.

    ### Raises:
        `ResourceCapError` : More than `coset_cap` cosets were defined.
    """
    if coset_cap < 1:
        raise ValidationError("coset_cap must be at least 1")
    for w in subgroup_words:
        if any(letter == 0 or abs(letter) > pres.generators for letter in w):
            raise ValidationError(f"Subgroup word {tuple(w)} uses letters outside 1..{pres.generators}")
    table = _Enumerator(pres.generators, coset_cap).run(pres.relators, [free_reduce(w) for w in subgroup_words])
    logger.debug(f"Coset enumeration of {pres!r}: index {table.index}")
    return table


def verify_presentation(
    pres: Presentation,
    group: FiniteGroup,
    images: Sequence[Permutation],
    coset_cap: int = Limits.COSET_CAP,
) -> bool | None:
    """
    Decide whether a_k -> images[k] is an isomorphism <a | R> -> G.

    ### Returns:
        `bool | None` : `True` when every relator dies, the images generate and the presentation has
        exactly |G| elements; `False` when one of those fails; `None` when enumeration hit the cap.
    """
    if len(images) != pres.generators:
        raise ValidationError(f"{len(images)} images for {pres.generators} generators")
    for g in images:
        group.check_element(g)
    if any(not evaluate(r, images).is_identity() for r in pres.relators):
        return False
    if not group.generates(images):
        return False
    try:
        table = todd_coxeter(pres, (), coset_cap)
    except ResourceCapError:
        logger.warning(f"Presentation {pres!r} is inconclusive: coset cap {coset_cap} reached")
        return None
    return table.index == group.order


class Condition2Datum(NamedTuple):
    """g_i = conjugator * a_j**exponent * conjugator**-1, with an optional word for the conjugator."""

    j: int
    exponent: int
    conjugator: Permutation
    word: Word | None = None


def find_condition2_data(sys: SphericalSystem, assignment: Sequence[int]) -> list[Condition2Datum]:
    """
    For each system element, the first (j, l, h) in (assignment position, exponent, element order)
    with g_i = h a_j^l h^-1, where a_j = sys[assignment[j]].

    ### Raises:
        `DecompositionError` : Some g_i is conjugate to no power of an assigned generator.
    """
    group = sys.group
    images = [sys[k] for k in assignment]
    data = []
    for i, g in enumerate(sys):
        target_class = group.class_index(g)
        hit = None
        for j, a in enumerate(images):
            for exponent, power in enumerate(a.powers()):
                if exponent == 0 or group.class_index(power) != target_class:
                    continue
                h = next(x for x in group.elements if x * power * ~x == g)
                hit = Condition2Datum(j, exponent, h)
                break
            if hit:
                break
        if hit is None:
            raise DecompositionError(i, f"System element {i + 1} is not conjugate to a power of an assigned generator")
        data.append(hit)
    return data


class ShapeCertificate(NamedTuple):
    """
    Why a relator has an allowed shape.

    `power`: relator ~ a_i^e1. `conjugate_pair`: relator ~ a_i^e1 h a_j^e2 h^-1 with h = `conjugator`.
    `product`: relator ~ prod_p w_p a_{j(p)}^{l_p} w_p^-1 with w_p = `product_words[p]` and (j, l) from condition 2.
    """

    relator: Word
    shape: str
    first: tuple[int, int] | None = None
    conjugator: Word = ()
    second: tuple[int, int] | None = None
    product_words: tuple[Word, ...] | None = None

    def shape_word(self, condition2: Sequence[Condition2Datum]) -> Word:
        if self.shape == Shape.POWER:
            return power_word(*self.first)
        if self.shape == Shape.CONJUGATE_PAIR:
            return power_word(*self.first) + self.conjugator + power_word(*self.second) + inverse_word(self.conjugator)
        word: list[int] = []
        for w, datum in zip(self.product_words, condition2):
            word.extend(w + power_word(datum.j, datum.exponent) + inverse_word(w))
        return tuple(word)

    def verify(self, condition2: Sequence[Condition2Datum], images: Sequence[Permutation]) -> bool:
        if not cyclic_equal(self.shape_word(condition2), self.relator):
            return False
        if self.shape == Shape.PRODUCT:
            if len(self.product_words) != len(condition2):
                return False
            return all(evaluate(w, images) == d.conjugator for w, d in zip(self.product_words, condition2))
        return True


def _match_pair_shape(relator: Word, conjugator_bound: int) -> ShapeCertificate | None:
    w = cyclic_reduce(relator)
    if not w:
        return None
    power = _as_power(w)
    if power is not None:
        return ShapeCertificate(relator, Shape.POWER, first=power)
    for rotation in range(len(w)):
        rotated = w[rotation:] + w[:rotation]
        for split in range(1, len(rotated)):
            first = _as_power(rotated[:split])
            if first is None:
                break
            rest = rotated[split:]
            k = 0
            while 2 * (k + 1) < len(rest) and rest[k] == -rest[len(rest) - 1 - k]:
                k += 1
            if k > conjugator_bound:
                continue
            second = _as_power(rest[k : len(rest) - k])
            if second is None:
                continue
            return ShapeCertificate(relator, Shape.CONJUGATE_PAIR, first=first, conjugator=rest[:k], second=second)
    return None


def shortest_words(images: Sequence[Permutation], bound: int) -> dict[Permutation, Word]:
    """
    Shortlex-least word of length <= bound for every element reachable within the bound,
    letters ordered a_1, a_1^-1, a_2, ... Insertion order is shortlex order.
    """
    letters = [sign * (k + 1) for k in range(len(images)) for sign in (1, -1)]
    values = {letter: images[abs(letter) - 1] if letter > 0 else ~images[abs(letter) - 1] for letter in letters}
    identity = Permutation.identity(images[0].degree)
    table: dict[Permutation, Word] = {identity: ()}
    frontier = [((), identity)]
    for _ in range(bound):
        grown = []
        for word, value in frontier:
            for letter in letters:
                if word and word[-1] == -letter:
                    continue
                element = value * values[letter]
                if element in table:
                    continue
                table[element] = word + (letter,)
                grown.append((table[element], element))
        frontier = grown
    return table


def _product_candidates(
    sys: SphericalSystem,
    images: Sequence[Permutation],
    condition2: Sequence[Condition2Datum],
    words: dict[Permutation, Word],
    per_position: int,
    tries: int,
) -> Iterator[tuple[Word, tuple[Word, ...]]]:
    """
    Product-shaped relators prod_p w_p a_{j(p)}^{l_p} w_p^-1 with each w_p evaluating to a valid
    conjugator for position p; word choices are tried in order of increasing index sum.
    """
    options = []
    for g, datum in zip(sys, condition2):
        core = images[datum.j] ** datum.exponent
        valid = [w for element, w in words.items() if element * core * ~element == g]
        if not valid:
            return
        options.append(valid[:per_position])
    combos = sorted(product(*(range(len(o)) for o in options)), key=lambda c: (sum(c), c))
    emitted = 0
    for combo in combos:
        chosen = tuple(options[p][k] for p, k in enumerate(combo))
        word: list[int] = []
        for w, datum in zip(chosen, condition2):
            word.extend(w + power_word(datum.j, datum.exponent) + inverse_word(w))
        relator = free_reduce(word)
        if not relator:
            continue
        yield relator, chosen
        emitted += 1
        if emitted >= tries:
            return


def _with_words(condition2: Sequence[Condition2Datum], chosen: Sequence[Word], images) -> list[Condition2Datum]:
    return [d._replace(conjugator=evaluate(w, images), word=w) for d, w in zip(condition2, chosen)]


def check_relator_shapes(
    pres: Presentation,
    condition2: Sequence[Condition2Datum],
    sys: SphericalSystem,
    assignment: Sequence[int],
    word_bound: int = Limits.WORD_BOUND,
    conjugator_bound: int = Limits.CONJUGATOR_BOUND,
    hints: dict[Word, ShapeCertificate] | None = None,
) -> list[ShapeCertificate] | None:
    """
    A verified shape certificate for every relator, or `None` when some relator has none within
    the bounds (inconclusive, not a refutation).
    """
    images = [sys[k] for k in assignment]
    words = None
    certificates = []
    for relator in pres.relators:
        certificate = (hints or {}).get(relator)
        if certificate is None or not certificate.verify(condition2, images):
            certificate = _match_pair_shape(relator, conjugator_bound)
        if certificate is None:
            if words is None:
                words = shortest_words(images, word_bound)
            for candidate, chosen in _product_candidates(
                sys, images, condition2, words, Limits.WORDS_PER_POSITION, Limits.PRODUCT_WORD_TRIES
            ):
                if cyclic_equal(candidate, relator) and all(
                    evaluate(w, images) == d.conjugator for w, d in zip(chosen, condition2)
                ):
                    certificate = ShapeCertificate(relator, Shape.PRODUCT, product_words=chosen)
                    break
        if certificate is None or not certificate.verify(condition2, images):
            logger.debug(f"No shape certificate for relator {format_word(relator, pres.names)}")
            return None
        certificates.append(certificate)
    return certificates


class GoodPresentationWitness:
    """
    A good presentation for a spherical system, with everything needed to re-check it.

    ### Properties:
        `original: SphericalSystem` - System the search started from\n
        `moves: tuple[tuple[int, bool], ...]` - Hurwitz moves (1-based index, inverse flag) applied in order\n
        `system: SphericalSystem` - System after the moves\n
        `assignment: tuple[int, ...]` - System positions used as presentation generators\n
        `presentation: Presentation` - The presentation of G\n
        `condition2: list[Condition2Datum]` - g_i = h_i a_{j(i)}^{l_i} h_i^-1 for every position\n
        `certificates: list[ShapeCertificate]` - One per relator\n
    """

    def __init__(
        self,
        original: SphericalSystem,
        moves: Sequence[tuple[int, bool]],
        system: SphericalSystem,
        assignment: Sequence[int],
        presentation: Presentation,
        condition2: Sequence[Condition2Datum],
        certificates: Sequence[ShapeCertificate],
    ) -> None:
        self._original = original
        self._moves = tuple(moves)
        self._system = system
        self._assignment = tuple(assignment)
        self._presentation = presentation
        self._condition2 = list(condition2)
        self._certificates = list(certificates)

    @property
    def original(self) -> SphericalSystem:
        return self._original

    @property
    def moves(self) -> tuple[tuple[int, bool], ...]:
        return self._moves

    @property
    def system(self) -> SphericalSystem:
        return self._system

    @property
    def assignment(self) -> tuple[int, ...]:
        return self._assignment

    @property
    def images(self) -> list[Permutation]:
        return [self._system[k] for k in self._assignment]

    @property
    def presentation(self) -> Presentation:
        return self._presentation

    @property
    def condition2(self) -> list[Condition2Datum]:
        return self._condition2

    @property
    def certificates(self) -> list[ShapeCertificate]:
        return self._certificates

    def verify(self, coset_cap: int = Limits.COSET_CAP) -> bool:
        """
        Re-check moves, condition 1, the presentation, every condition-2 equality and every shape certificate.
        """
        replay = self._original
        for index, inverse in self._moves:
            replay = hurwitz_move(replay, index, inverse)
        if replay.elements != self._system.elements:
            return False
        if len(set(self._assignment)) != len(self._assignment):
            return False
        images = self.images
        if verify_presentation(self._presentation, self._system.group, images, coset_cap) is not True:
            return False
        if len(self._condition2) != len(self._system):
            return False
        for g, d in zip(self._system, self._condition2):
            if d.conjugator * images[d.j] ** d.exponent * ~d.conjugator != g:
                return False
            if d.word is not None and evaluate(d.word, images) != d.conjugator:
                return False
        if [c.relator for c in self._certificates] != list(self._presentation.relators):
            return False
        return all(c.verify(self._condition2, images) for c in self._certificates)

    def conjugate(self, x: Permutation) -> "GoodPresentationWitness":
        """
        Transport along simultaneous conjugation by x: elements and conjugators move, words stay.
        """
        return GoodPresentationWitness(
            self._original.conjugate(x),
            self._moves,
            self._system.conjugate(x),
            self._assignment,
            self._presentation,
            [d._replace(conjugator=d.conjugator.conjugate(x)) for d in self._condition2],
            self._certificates,
        )

    def __repr__(self) -> str:
        return (
            f"GoodPresentationWitness(assignment={self._assignment}, moves={len(self._moves)}, "
            f"presentation={self._presentation!r})"
        )


class CertificateBounds(NamedTuple):
    """Search bounds for `pi1_trivial_certificate`."""

    word_bound: int = Limits.WORD_BOUND
    conjugator_bound: int = Limits.CONJUGATOR_BOUND
    max_generators: int = Limits.MAX_PRESENTATION_GENERATORS
    coset_cap: int = Limits.COSET_CAP
    words_per_position: int = Limits.WORDS_PER_POSITION
    product_tries: int = Limits.PRODUCT_WORD_TRIES


class Pi1Result(NamedTuple):
    """Outcome of a certificate search: status, the witness when verified, and search counters."""

    status: str
    witness: GoodPresentationWitness | None
    assignments_tried: int
    presentations_tried: int


def _normalizations(sys: SphericalSystem) -> Iterator[tuple[list[tuple[int, bool]], SphericalSystem]]:
    # identity first, then each later element brought to the front by inverse moves
    yield [], sys
    for position in range(2, len(sys) + 1):
        moves = [(k, True) for k in range(position - 1, 0, -1)]
        moved = sys
        for index, inverse in moves:
            moved = hurwitz_move(moved, index, inverse)
        yield moves, moved


def _assignments(sys: SphericalSystem, max_generators: int) -> list[tuple[int, ...]]:
    result = []
    seen = set()
    for size in range(1, min(max_generators, len(sys)) + 1):
        for positions in combinations(range(len(sys)), size):
            images = tuple(sys[k] for k in positions)
            if len(set(images)) != size or images in seen:
                continue
            seen.add(images)
            if sys.group.generates(images):
                result.append(positions)
    return result


def _seeded_presentations(images: Sequence[Permutation]) -> list[tuple[Presentation, dict[Word, ShapeCertificate]]]:
    """
    Cyclic <a | a^n>, dihedral <r, s | r^n, s^2, r s r s^-1> and Coxeter <f1, f2 | f1^2, f2^2, (f1 f2)^n>.
    """
    seeded = []
    if len(images) == 1:
        n = images[0].order
        seeded.append((Presentation(1, [power_word(0, n)], ["a"]), {}))
    elif len(images) == 2:
        for r, s in ((0, 1), (1, 0)):
            rot, ref = images[r], images[s]
            if ref.order == 2 and ref * rot * ~ref == ~rot:
                names = ["r", "s"] if r == 0 else ["s", "r"]
                relators = [power_word(r, rot.order), power_word(s, 2), (r + 1, s + 1, r + 1, -(s + 1))]
                seeded.append((Presentation(2, relators, names), {}))
        if images[0].order == 2 and images[1].order == 2:
            n = (images[0] * images[1]).order
            relators = [power_word(0, 2), power_word(1, 2), (1, 2) * n]
            seeded.append((Presentation(2, relators, ["f1", "f2"]), {}))
    return seeded


def _generic_base(
    images: Sequence[Permutation],
    words: dict[Permutation, Word],
    conjugator_bound: int,
) -> tuple[Presentation, dict[Word, ShapeCertificate]]:
    """
    Power relators a_k^{ord a_k} plus every nontrivial a_i^e1 h a_j^e2 h^-1 = 1 with h a shortest word
    of length <= conjugator_bound.
    """
    s = len(images)
    hints: dict[Word, ShapeCertificate] = {}
    relators: list[Word] = []
    seen_cyclic: set[Word] = set()

    def keep(relator: Word, certificate: ShapeCertificate) -> None:
        reduced = cyclic_reduce(relator)
        if not reduced:
            return
        key = min(min(reduced[k:] + reduced[:k] for k in range(len(reduced))), min(
            inverse_word(reduced)[k:] + inverse_word(reduced)[:k] for k in range(len(reduced))
        ))
        if key in seen_cyclic:
            return
        seen_cyclic.add(key)
        relators.append(relator)
        hints[relator] = certificate._replace(relator=relator)

    for k, a in enumerate(images):
        relator = power_word(k, a.order)
        keep(relator, ShapeCertificate(relator, Shape.POWER, first=(k, a.order)))
    exponent_of = [{p: e for e, p in enumerate(a.powers())} for a in images]
    for i in range(s):
        a_i = images[i]
        for e1 in range(1, a_i.order):
            target = a_i ** (-e1)
            for h, h_word in words.items():
                if len(h_word) > conjugator_bound:
                    break
                conjugated = ~h * target * h
                for j in range(s):
                    e2 = exponent_of[j].get(conjugated)
                    if not e2:
                        continue
                    relator = free_reduce(power_word(i, e1) + h_word + power_word(j, e2) + inverse_word(h_word))
                    keep(
                        relator,
                        ShapeCertificate(
                            relator, Shape.CONJUGATE_PAIR, first=(i, e1), conjugator=h_word, second=(j, e2)
                        ),
                    )
    return Presentation(s, relators), hints


def _index_within(pres: Presentation, cap: int) -> int | None:
    try:
        return todd_coxeter(pres, (), cap).index
    except ResourceCapError:
        return None


def _try_assignment(
    sys: SphericalSystem,
    assignment: tuple[int, ...],
    bounds: CertificateBounds,
) -> tuple[tuple[Presentation, list[Condition2Datum], list[ShapeCertificate]] | None, bool, int]:
    """
    Returns (found, condition-2 decomposition exists, presentations tried).
    """
    group = sys.group
    images = [sys[k] for k in assignment]
    try:
        condition2 = find_condition2_data(sys, assignment)
    except DecompositionError as err:
        logger.debug(f"Assignment {assignment}: {err}")
        return None, False, 0
    words = shortest_words(images, max(bounds.word_bound, bounds.conjugator_bound))
    condition2 = [d._replace(word=words.get(d.conjugator)) for d in condition2]
    search_cap = min(bounds.coset_cap, Limits.SEARCH_COSET_FACTOR * group.order)
    tried = 0

    def attempt(pres, hints, data):
        nonlocal tried
        tried += 1
        if _index_within(pres, search_cap) != group.order:
            return None
        if verify_presentation(pres, group, images, bounds.coset_cap) is not True:
            return None
        certificates = check_relator_shapes(
            pres, data, sys, assignment, bounds.word_bound, bounds.conjugator_bound, hints
        )
        if certificates is None:
            return None
        return pres, data, certificates

    for pres, hints in _seeded_presentations(images):
        found = attempt(pres, hints, condition2)
        if found:
            return found, True, tried
    base, hints = _generic_base(images, words, bounds.conjugator_bound)
    found = attempt(base, hints, condition2)
    if found:
        return found, True, tried
    for relator, chosen in _product_candidates(
        sys, images, condition2, words, bounds.words_per_position, bounds.product_tries
    ):
        data = _with_words(condition2, chosen, images)
        certificate = ShapeCertificate(relator, Shape.PRODUCT, product_words=chosen)
        found = attempt(base.with_relator(relator), {**hints, relator: certificate}, data)
        if found:
            return found, True, tried
    return None, True, tried


def _first_success(items: Sequence, fn: Callable, threads: int) -> list:
    """
    Results of `fn` over `items` up to and including the first hit; the hit with the lowest index wins.
    """
    results = []
    step = max(1, threads)
    for start in range(0, len(items), step):
        chunk = items[start : start + step]
        if threads > 1:
            with ThreadPoolExecutor(max_workers=threads) as pool:
                chunk_results = list(pool.map(fn, chunk))
        else:
            chunk_results = [fn(item) for item in chunk]
        for result in chunk_results:
            results.append(result)
            if result[0] is not None:
                return results
    return results


def pi1_trivial_certificate(
    sys: SphericalSystem,
    bounds: CertificateBounds = CertificateBounds(),
    threads: int = 1,
) -> Pi1Result:
    """
    Search for a good presentation extending `sys`.

    Normalizations (no moves, then each element brought to the front by Hurwitz moves) are tried in
    order; within one, generator subsets of size 1..max_generators that generate G, then for each
    subset the seeded families, the generic power/conjugate-pair presentation, and that presentation
    plus one product-shaped relator.

    ### Returns:
        `Pi1Result` : `verified` with a re-verified witness, `refuted_at_bound` when no subset even
        satisfies condition 2, otherwise `inconclusive`.
    """
    assignments_tried = 0
    presentations_tried = 0
    decomposable = False
    for moves, normalized in _normalizations(sys):
        candidates = _assignments(normalized, bounds.max_generators)
        results = _first_success(candidates, lambda a: _try_assignment(normalized, a, bounds), threads)
        assignments_tried += len(results)
        for (found, ok, tried), assignment in zip(results, candidates):
            presentations_tried += tried
            decomposable = decomposable or ok
            if found is None:
                continue
            pres, condition2, certificates = found
            witness = GoodPresentationWitness(sys, moves, normalized, assignment, pres, condition2, certificates)
            if not witness.verify(bounds.coset_cap):
                raise InconsistencyError("A certificate found by the search failed re-verification")
            logger.info(
                f"pi1 certificate: assignment {assignment}, {len(moves)} moves, "
                f"{len(pres.relators)} relators, presentation #{presentations_tried}"
            )
            return Pi1Result(Pi1Status.VERIFIED, witness, assignments_tried, presentations_tried)
    status = Pi1Status.INCONCLUSIVE if decomposable else Pi1Status.REFUTED_AT_BOUND
    logger.warning(f"pi1 certificate search ended {status} after {assignments_tried} assignments")
    return Pi1Result(status, None, assignments_tried, presentations_tried)
