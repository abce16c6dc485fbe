# Job-file parsing, element descriptors and exact-number rendering

# Author  : pqsurf contributors
# Date    : 2024-09-09
# License : BSD-3-Clause

# fmt: off
import json
import logging
from fractions import Fraction
from pathlib import Path
from typing import Any, NamedTuple

from pqsurf.covers import SphericalSystem, class_choices, validate_system
from pqsurf.errors import ValidationError
from pqsurf.params import SCHEMA_VERSION, GroupKind, Limits
from pqsurf.permgroup import PSL2, FiniteGroup, Permutation, Subgroup, group_from_generators, psl2_group
# fmt: on

logger = logging.getLogger("pqsurf")

JOB_KEYS = {
    "schema", "name", "group", "subgroup", "systems", "second_systems", "enumerate", "class_order", "pi1", "options"
}
OPTION_KEYS = {"order_cap", "search_node_cap", "coset_cap", "word_bound", "threads", "out"}


class Job:
    """
    A parsed job file.

    ### Properties:
        `name: str` - Job name, echoed in reports\n
        `raw: dict` - The job document as read\n
        `group: FiniteGroup` - The ambient group G\n
        `psl2: PSL2 | None` - Matrix model when the group is PSL(2, q)\n
        `subgroup: Subgroup | None` - Optional H\n
        `systems: list[SphericalSystem]` - G-systems given explicitly\n
        `second_systems: list[SphericalSystem]` - Second factor systems; defaults to `systems`\n
        `enumerate_classes: list[Permutation] | None` - Class representatives to enumerate systems from\n
        `enumerate_signature: tuple[int, ...] | None` - Element orders to enumerate over all class choices\n
        `class_order: list[Permutation] | None` - Order of H-classes used when pushing systems to H\n
        `pi1_local_systems: bool` - Certify every H-system with the class data of the pushed systems\n
        `options: dict` - Caps, bounds and output path\n
    """

    def __init__(
        self,
        name: str,
        raw: dict,
        group: FiniteGroup,
        psl2: PSL2 | None,
        subgroup: Subgroup | None,
        systems: list[SphericalSystem],
        second_systems: list[SphericalSystem],
        enumerate_classes: list[Permutation] | None,
        class_order: list[Permutation] | None,
        options: dict,
        enumerate_signature: tuple[int, ...] | None = None,
        pi1_local_systems: bool = False,
    ) -> None:
        self.name = name
        self.raw = raw
        self.group = group
        self.psl2 = psl2
        self.subgroup = subgroup
        self.systems = systems
        self.second_systems = second_systems
        self.enumerate_classes = enumerate_classes
        self.class_order = class_order
        self.options = options
        self.enumerate_signature = enumerate_signature
        self.pi1_local_systems = pi1_local_systems

    @property
    def enumerates(self) -> bool:
        return self.enumerate_classes is not None or self.enumerate_signature is not None

    def __repr__(self) -> str:
        return (
            f"Job(name={self.name!r}, group={self.group.name}, subgroup="
            f"{self.subgroup.label if self.subgroup else None}, systems={len(self.systems)})"
        )


class GroupModel(NamedTuple):
    """Group built from a descriptor, with the matrix model when there is one."""

    group: FiniteGroup
    psl2: PSL2 | None


def load_document(source: str | Path | dict) -> dict:
    """
    Read a job document from a path, a JSON string, or an already-parsed dict.
    """
    if isinstance(source, dict):
        return source
    text = str(source)
    if text.lstrip().startswith("{"):
        return _parse_json(text, "<string>")
    path = Path(source)
    if not path.exists():
        raise ValidationError(f"Job file {path} does not exist")
    return _parse_json(path.read_text(encoding="utf-8"), str(path))


def _parse_json(text: str, where: str) -> dict:
    try:
        document = json.loads(text)
    except json.JSONDecodeError as err:
        raise ValidationError(f"{where}: invalid JSON ({err.msg} at line {err.lineno})") from None
    if not isinstance(document, dict):
        raise ValidationError(f"{where}: a job must be a JSON object")
    return document


def build_group(descriptor: Any, order_cap: int = Limits.ORDER_CAP) -> GroupModel:
    """
    `{"kind": "psl2", "q": 13}` or `{"kind": "perms", "degree": n, "generators": [[...], ...]}`.
    """
    if not isinstance(descriptor, dict) or "kind" not in descriptor:
        raise ValidationError("Group descriptor must be an object with a 'kind'")
    kind = descriptor["kind"]
    if kind == GroupKind.PSL2:
        q = descriptor.get("q")
        if not isinstance(q, int):
            raise ValidationError("psl2 group descriptor needs an integer 'q'")
        model = psl2_group(q, order_cap)
        return GroupModel(model.group, model)
    if kind == GroupKind.PERMS:
        degree = descriptor.get("degree")
        generators = descriptor.get("generators")
        if not isinstance(degree, int) or degree < 1:
            raise ValidationError("perms group descriptor needs a positive integer 'degree'")
        if not isinstance(generators, list) or not generators:
            raise ValidationError("perms group descriptor needs a nonempty 'generators' list")
        gens = [_permutation(images, degree) for images in generators]
        name = descriptor.get("name") or f"G(deg {degree})"
        return GroupModel(group_from_generators(degree, gens, order_cap=order_cap, name=name), None)
    raise ValidationError(f"Unknown group kind {kind!r}; expected '{GroupKind.PSL2}' or '{GroupKind.PERMS}'")


def _permutation(images: Any, degree: int) -> Permutation:
    if not isinstance(images, list) or not all(isinstance(v, int) for v in images):
        raise ValidationError(f"Permutation must be a list of integers, got {images!r}")
    if len(images) != degree:
        raise ValidationError(f"Permutation {images} has length {len(images)}, expected degree {degree}")
    try:
        return Permutation(images)
    except ValueError as err:
        raise ValidationError(str(err)) from None


def parse_element(descriptor: Any, built: GroupModel) -> Permutation:
    """
    An element from a 2x2 matrix (psl2 groups), a 0-based image array, or `{"word": [...]}`
    with signed 1-based letters over the group's generators.
    """
    group = built.group
    if isinstance(descriptor, dict):
        word = descriptor.get("word")
        if not isinstance(word, list) or not all(isinstance(v, int) and v for v in word):
            raise ValidationError(f"Word descriptor needs a list of nonzero integers, got {descriptor!r}")
        result = group.identity
        for letter in word:
            k = abs(letter) - 1
            if k >= len(group.generators):
                raise ValidationError(f"Letter {letter} exceeds the {len(group.generators)} group generators")
            g = group.generators[k]
            result = result * (g if letter > 0 else ~g)
        return result
    if isinstance(descriptor, list) and descriptor and isinstance(descriptor[0], list):
        if built.psl2 is None:
            raise ValidationError("Matrix descriptors are only valid for psl2 groups")
        return built.psl2.element(descriptor)
    return group.check_element(_permutation(descriptor, group.degree))


def parse_elements(descriptors: Any, built: GroupModel, what: str) -> list[Permutation]:
    if not isinstance(descriptors, list):
        raise ValidationError(f"'{what}' must be a list of element descriptors")
    return [parse_element(d, built) for d in descriptors]


def build_subgroup(descriptor: Any, built: GroupModel) -> Subgroup:
    """
    `{"generators": [...]}` for the subgroup they generate, or `{"normalizer_of": [...]}` for the
    normalizer of that subgroup; an optional `"label"` overrides the structure label.
    """
    if not isinstance(descriptor, dict):
        raise ValidationError("Subgroup descriptor must be an object")
    group = built.group
    label = descriptor.get("label")
    if "generators" in descriptor:
        gens = parse_elements(descriptor["generators"], built, "subgroup.generators")
        return group.subgroup_generated(gens, label)
    if "normalizer_of" in descriptor:
        gens = parse_elements(descriptor["normalizer_of"], built, "subgroup.normalizer_of")
        N = group.normalizer(group.subgroup_generated(gens))
        return N if label is None else Subgroup(group, N.elements, N.generators, label)
    raise ValidationError("Subgroup descriptor needs 'generators' or 'normalizer_of'")


def parse_job(source: str | Path | dict, order_cap: int | None = None) -> Job:
    """
    Parse and validate a job document; every system is checked with `validate_system`.

    ### Raises:
        `ValidationError` : Wrong schema, unknown keys, inconsistent descriptors or invalid systems.
    """
    raw = load_document(source)
    if raw.get("schema") != SCHEMA_VERSION:
        raise ValidationError(f"Unsupported job schema {raw.get('schema')!r}; expected {SCHEMA_VERSION}")
    unknown = set(raw) - JOB_KEYS
    if unknown:
        raise ValidationError(f"Unknown job keys: {sorted(unknown)}")
    options = raw.get("options") or {}
    if not isinstance(options, dict) or set(options) - OPTION_KEYS:
        raise ValidationError(f"Unknown or malformed options: {sorted(set(options) - OPTION_KEYS)}")
    if "group" not in raw:
        raise ValidationError("A job needs exactly one 'group' descriptor")
    job_cap = options.get("order_cap")
    if job_cap is not None and (not isinstance(job_cap, int) or isinstance(job_cap, bool) or job_cap < 1):
        raise ValidationError(f"options.order_cap must be a positive integer, got {job_cap!r}")
    # an explicit order_cap is the already-resolved effective cap and wins over the job's own
    cap = order_cap or job_cap or Limits.ORDER_CAP
    built = build_group(raw["group"], cap)
    subgroup = build_subgroup(raw["subgroup"], built) if raw.get("subgroup") else None

    def systems_of(key: str) -> list[SphericalSystem]:
        value = raw.get(key) or []
        if not isinstance(value, list):
            raise ValidationError(f"'{key}' must be a list of systems")
        return [validate_system(built.group, parse_elements(s, built, key)) for s in value]

    systems = systems_of("systems")
    second = systems_of("second_systems") or list(systems)
    enumerate_classes = enumerate_signature = None
    if raw.get("enumerate"):
        block = raw["enumerate"]
        if not isinstance(block, dict) or len(block) != 1 or not set(block) <= {"classes", "signature"}:
            raise ValidationError("'enumerate' must be an object with exactly one of 'classes' or 'signature'")
        if "classes" in block:
            enumerate_classes = parse_elements(block["classes"], built, "enumerate.classes")
        else:
            signature = block["signature"]
            if not isinstance(signature, list) or not signature:
                raise ValidationError("'enumerate.signature' must be a nonempty list of element orders")
            enumerate_signature = tuple(signature)
            class_choices(built.group, enumerate_signature)
    pi1 = raw.get("pi1") or {}
    local_systems = pi1.get("local_systems", False) if isinstance(pi1, dict) else None
    if not isinstance(local_systems, bool) or set(pi1) - {"local_systems"}:
        raise ValidationError("'pi1' must be an object with an optional boolean 'local_systems'")
    if local_systems and subgroup is None:
        raise ValidationError("'pi1.local_systems' requires a 'subgroup'")
    class_order = None
    if raw.get("class_order"):
        if subgroup is None:
            raise ValidationError("'class_order' requires a 'subgroup'")
        class_order = parse_elements(raw["class_order"], built, "class_order")
        if any(c not in subgroup for c in class_order):
            raise ValidationError("'class_order' entries must lie in the subgroup")
    job = Job(
        raw.get("name") or "job",
        raw,
        built.group,
        built.psl2,
        subgroup,
        systems,
        second,
        enumerate_classes,
        class_order,
        options,
        enumerate_signature,
        local_systems,
    )
    logger.info(f"Parsed {job!r}")
    return job


def render_exact(value: Any) -> Any:
    """
    JSON-ready copy of `value`: integral fractions become ints, others "p/q" strings; containers recurse.
    """
    if isinstance(value, bool) or value is None or isinstance(value, str):
        return value
    if isinstance(value, int):
        return value
    if isinstance(value, Fraction):
        return value.numerator if value.denominator == 1 else f"{value.numerator}/{value.denominator}"
    if isinstance(value, float):
        raise ValidationError(f"Float {value!r} cannot appear in an exact report")
    if isinstance(value, dict):
        return {str(k): render_exact(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [render_exact(v) for v in value]
    return str(value)


def parse_exact(text: Any) -> Fraction:
    """
    Inverse of `render_exact` for a single number: int or "p/q".
    """
    if isinstance(text, bool):
        raise ValidationError(f"Not a number: {text!r}")
    if isinstance(text, int):
        return Fraction(text)
    if isinstance(text, str) and text.count("/") == 1:
        numerator, denominator = text.split("/")
        try:
            return Fraction(int(numerator), int(denominator))
        except (ValueError, ZeroDivisionError):
            pass
    raise ValidationError(f"Not an exact number: {text!r}")
