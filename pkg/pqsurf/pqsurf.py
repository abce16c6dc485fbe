# Product-quotient surface invariants: configuration, logging and report assembly

# Author  : pqsurf contributors
# Date    : 2024-09-10
# License : BSD-3-Clause

# fmt: off
import os
import sys
import json
import logging
from collections import Counter
from datetime import datetime
from pathlib import Path
from typing import Any, NamedTuple

from dotenv import load_dotenv

from pqsurf.cacher import Cacher
from pqsurf.covers import (SphericalSystem, class_choices, enumerate_systems, genus_of_cover,
                           induced_quotient_monodromy, outer_orbits, push_to_subgroup)
from pqsurf.errors import ValidationError
from pqsurf.fundgroup import CertificateBounds, GoodPresentationWitness, format_word, pi1_trivial_certificate
from pqsurf.invariants import SurfaceInvariants, surface_invariants, twist_report
from pqsurf.params import SCHEMA_VERSION, TOOL_VERSION, Limits
from pqsurf.permgroup import FiniteGroup, Permutation, subgroup_classes
from pqsurf.singularities import Basket, basket_invariants, compute_basket
from pqsurf.utils import Job, load_document, parse_job, render_exact
# fmt: on

LOG_FORMAT = "[%(asctime)s][%(name)s->%(module)s:%(lineno)-10d][%(levelname)-7s] : %(message)s"
LOG_DATEFMT = "%d-%b-%y %H:%M:%S"

STAGES = ("group", "subgroups", "covers", "enumeration", "quotient", "basket", "surface", "pi1", "twists")


class Config(NamedTuple):
    """
    Effective caps, bounds and paths. Precedence: defaults < environment (.env) < job options < CLI flags.
    """

    order_cap: int = Limits.ORDER_CAP
    search_node_cap: int = Limits.SEARCH_NODE_CAP
    coset_cap: int = Limits.COSET_CAP
    word_bound: int = Limits.WORD_BOUND
    threads: int = Limits.THREADS
    log_dir: str | None = None
    cache: str | None = None

    @classmethod
    def from_env(cls, dotenv_path: str | None = None) -> "Config":
        """
        Load `.env` (never overriding variables already set) and read the `PQSURF_*` overrides.
        """
        load_dotenv(dotenv_path)
        values: dict[str, Any] = {}
        for field in ("order_cap", "search_node_cap", "coset_cap", "word_bound", "threads"):
            raw = os.getenv(f"PQSURF_{field.upper()}")
            if raw:
                try:
                    values[field] = int(raw)
                except ValueError:
                    raise ValidationError(f"PQSURF_{field.upper()}={raw!r} is not an integer") from None
        for field in ("log_dir", "cache"):
            raw = os.getenv(f"PQSURF_{field.upper()}")
            if raw:
                values[field] = raw
        return cls().updated(values)

    def updated(self, overrides: dict | None) -> "Config":
        """
        Copy with every non-`None` known key of `overrides` applied; caps must be positive.
        """
        changes = {k: v for k, v in (overrides or {}).items() if k in self._fields and v is not None}
        for key in ("order_cap", "search_node_cap", "coset_cap", "word_bound", "threads"):
            if key in changes and (not isinstance(changes[key], int) or changes[key] < 1):
                raise ValidationError(f"{key} must be a positive integer, got {changes[key]!r}")
        return self._replace(**changes)

    @property
    def bounds(self) -> CertificateBounds:
        return CertificateBounds(word_bound=self.word_bound, coset_cap=self.coset_cap)


class Report:
    """
    A versioned, exactly-rendered result document.

    ### Properties:
        `name: str` - Job name\n
        `inputs: dict` - Echo of the job document\n
        `sections: dict` - Stage name -> rendered stage result\n
    """

    def __init__(
        self,
        name: str,
        inputs: dict | None = None,
        sections: dict | None = None,
        schema: int = SCHEMA_VERSION,
        version: str = TOOL_VERSION,
    ) -> None:
        self.name = name
        self.inputs = inputs or {}
        self.sections = dict(sections or {})
        self.schema = schema
        self.version = version

    def add(self, stage: str, data: Any) -> None:
        self.sections[stage] = render_exact(data)

    def __getitem__(self, stage: str) -> Any:
        return self.sections[stage]

    def __contains__(self, stage: str) -> bool:
        return stage in self.sections

    def to_dict(self) -> dict:
        return {
            "schema": self.schema,
            "tool_version": self.version,
            "name": self.name,
            "inputs": self.inputs,
            "results": self.sections,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2, ensure_ascii=False) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "Report":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as err:
            raise ValidationError(f"Report is not valid JSON: {err.msg}") from None
        if data.get("schema") != SCHEMA_VERSION:
            raise ValidationError(f"Unsupported report schema {data.get('schema')!r}")
        return cls(data["name"], data.get("inputs"), data.get("results"), data["schema"], data["tool_version"])

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Report) and self.to_dict() == other.to_dict()

    def __repr__(self) -> str:
        return f"Report(name={self.name!r}, stages={sorted(self.sections)})"


def basket_summary(basket: Basket) -> dict:
    inv = basket_invariants(basket)
    return {
        "basket": repr(basket),
        "types": [{"n": t.n, "a": t.a, "label": t.label, "multiplicity": m} for t, m in basket],
        "k": inv.k,
        "e": inv.e,
        "B": inv.B,
        "D": inv.D,
    }


def surface_summary(inv: SurfaceInvariants) -> dict:
    return {
        **basket_summary(inv.basket),
        "g1": inv.g1,
        "g2": inv.g2,
        "group_order": inv.group_order,
        "singular_points": inv.singular_points,
        "KX2": inv.KX2,
        "c2": inv.c2,
        "chi": inv.chi,
        "q": inv.q,
        "pg": inv.pg,
        "h11": inv.h11,
        "KminusE2": inv.KminusE2,
        "criterion_satisfied": inv.criterion_satisfied,
        "general_type_assumed": inv.general_type_assumed,
        "K2_over_chi": inv.K2_over_chi,
    }


def witness_summary(witness: GoodPresentationWitness) -> dict:
    pres = witness.presentation
    return {
        "moves": [[index, inverse] for index, inverse in witness.moves],
        "assignment": list(witness.assignment),
        "generators": list(pres.names),
        "relators": [format_word(r, pres.names) for r in pres.relators],
        "condition2": [
            {
                "j": d.j,
                "exponent": d.exponent,
                "conjugator": list(d.conjugator.images),
                "word": None if d.word is None else format_word(d.word, pres.names),
            }
            for d in witness.condition2
        ],
        "shapes": [c.shape for c in witness.certificates],
    }


class PQSurf:
    """
    ### pqsurf
    Invariants of product-quotient surfaces (C1 x C2)/G from spherical generator systems.

    Copyright (c) 2024, pqsurf contributors
    License: BSD-3-Clause, See LICENSE for more details.
    """

    __license__ = "BSD-3-Clause"

    def __init__(self, config: Config | None = None, overrides: dict | None = None, log_level=logging.INFO) -> None:
        self._config = config or Config.from_env()
        self._overrides = dict(overrides or {})
        self._setup_logging(log_level)
        self._logger = logging.getLogger("pqsurf")

        self._cacher = None
        if self.config.cache:
            self._cacher = Cacher(self.config.cache)
            self._cacher.setup()

        self.logger.info(f"PQSurf.__init__(config={self.config}, overrides={self._overrides})")

    def _setup_logging(self, level) -> None:
        logger = logging.getLogger("pqsurf")
        logger.setLevel(level)
        if getattr(logger, "_pqsurf_configured", False):
            return
        formatter = logging.Formatter(LOG_FORMAT, datefmt=LOG_DATEFMT)
        stream = logging.StreamHandler(sys.stderr)
        stream.setFormatter(formatter)
        logger.addHandler(stream)

        log_dir = self.config.log_dir
        if log_dir:
            today = f'pqsurf_{datetime.now().strftime("%Y-%m-%d")}.log'
            if not os.path.exists(log_dir):
                os.makedirs(log_dir)
            else:
                # remove empty log files
                for file in os.listdir(log_dir):
                    path = os.path.join(log_dir, file)
                    if file.endswith(".log") and file != today and os.stat(path).st_size == 0:
                        logger.info(f"Removing empty log file: {file}")
                        os.remove(path)
            handler = logging.FileHandler(os.path.join(log_dir, today), mode="a+", encoding="utf-8")
            handler.setFormatter(formatter)
            logger.addHandler(handler)
        logger.propagate = False
        logger._pqsurf_configured = True

    @property
    def logger(self) -> logging.Logger:
        """
        A `Logger` object representing the logger instance.

        The logging level is set to `INFO` by default.
        """
        return self._logger

    @property
    def config(self) -> Config:
        """
        A `Config` object with the environment and CLI overrides applied (job options come per job).
        """
        return self._config.updated(self._overrides)

    def effective_config(self, job: Job) -> Config:
        return self._config.updated(job.options).updated(self._overrides)

    def load_job(self, source: str | Path | dict) -> Job:
        """
        Parse a job with the order cap resolved as defaults < environment < job options < CLI.
        """
        raw = load_document(source)
        options = raw.get("options")
        job_cap = options.get("order_cap") if isinstance(options, dict) else None
        return parse_job(raw, self._config.updated({"order_cap": job_cap}).updated(self._overrides).order_cap)

    # ===== stages =====

    def group_report(self, job: Job) -> dict:
        G = job.group
        histogram = Counter(g.order for g in G.elements)
        return {
            "name": G.name,
            "order": G.order,
            "degree": G.degree,
            "fingerprint": G.fingerprint,
            "classes": [
                {"index": k, "order": c.element_order, "size": c.size, "representative": list(c.representative.images)}
                for k, c in enumerate(G.classes)
            ],
            "order_histogram": {str(order): histogram[order] for order in sorted(histogram)},
        }

    def subgroups_report(self, job: Job) -> list[dict]:
        rows = []
        for cls in subgroup_classes(job.group, 2):
            row = {"label": cls.label, "order": cls.order, "conjugates": cls.conjugates}
            if job.systems:
                row["quotient_genus"] = induced_quotient_monodromy(job.systems[0], cls.representative).quotient_genus
            rows.append(row)
        return rows

    def covers_report(self, job: Job) -> list[dict]:
        return [
            {"signature": list(s.signature), "genus": genus_of_cover(s), "classes": list(s.class_indices())}
            for s in job.systems
        ]

    def _systems_for(self, group: FiniteGroup, class_reps: list[Permutation], config: Config) -> list[SphericalSystem]:
        # one class tuple, from the cache when one is configured
        if self._cacher is not None:
            cached = self._cacher.get_systems(group, class_reps)
            if cached is not None:
                return cached
        systems = enumerate_systems(group, class_reps, config.search_node_cap, config.threads)
        if self._cacher is not None:
            self._cacher.insert_systems(group, class_reps, systems)
        return systems

    def enumerate(self, job: Job) -> list[SphericalSystem]:
        """
        Systems with the job's `enumerate.classes`, or with its `enumerate.signature` over every
        choice of classes, in `class_choices` order.
        """
        if not job.enumerates:
            raise ValidationError("This stage needs an 'enumerate' block in the job")
        config = self.effective_config(job)
        if job.enumerate_classes is not None:
            return self._systems_for(job.group, job.enumerate_classes, config)
        systems = []
        for reps in class_choices(job.group, job.enumerate_signature):
            systems.extend(self._systems_for(job.group, list(reps), config))
        return systems

    def enumeration_report(self, job: Job) -> dict:
        systems = self.enumerate(job)
        result = {"count": len(systems), "systems": [[list(g.images) for g in s] for s in systems]}
        if job.psl2 is not None:
            orbits = outer_orbits(systems, job.psl2.outer_automorphism)
            result["outer_orbits"] = orbits
            result["orbit_count"] = len(orbits)
        return result

    def quotient_report(self, job: Job) -> list[dict]:
        H = self._require_subgroup(job)
        rows = []
        for s in job.systems:
            cover = induced_quotient_monodromy(s, H)
            rows.append(
                {
                    "subgroup": H.label,
                    "index": H.index,
                    "quotient_genus": cover.quotient_genus,
                    "branch_points": cover.branch_points,
                    "branch_classes": [
                        {"order": b.order, "count": b.count, "class_index": b.class_index} for b in cover.branch_data
                    ],
                }
            )
        return rows

    def _require_subgroup(self, job: Job):
        if job.subgroup is None:
            raise ValidationError("This stage needs a 'subgroup' in the job")
        return job.subgroup

    def _local(self, job: Job, sys: SphericalSystem) -> SphericalSystem:
        # the system the surface is built from: sys itself, or its push to H
        if job.subgroup is None:
            return sys
        return push_to_subgroup(sys, job.subgroup, self.effective_config(job).search_node_cap, job.class_order)

    def _pair(self, job: Job) -> tuple[SphericalSystem, SphericalSystem]:
        if not job.systems:
            raise ValidationError("This stage needs at least one entry in 'systems'")
        first = self._local(job, job.systems[0])
        if job.second_systems[0] is job.systems[0]:
            return first, first
        return first, self._local(job, job.second_systems[0])

    def basket_report(self, job: Job) -> dict:
        sys1, sys2 = self._pair(job)
        result = compute_basket(sys1, sys2, self.effective_config(job).threads)
        return {
            **basket_summary(result.basket),
            "singular_points": result.singular_points,
            "smooth_orbits": result.smooth_orbits,
        }

    def surface(self, job: Job) -> SurfaceInvariants:
        sys1, sys2 = self._pair(job)
        return surface_invariants(sys1, sys2, threads=self.effective_config(job).threads)

    def surface_report(self, job: Job) -> dict:
        return surface_summary(self.surface(job))

    def _pi1_targets(self, job: Job) -> list[SphericalSystem]:
        """
        Distinct local systems: the explicit ones, then the enumerated ones, each pushed to H when
        there is one. With `pi1.local_systems`, every H-system with the class data of those pushes.
        """
        config = self.effective_config(job)
        sources = list(job.systems) + (self.enumerate(job) if job.enumerates else [])
        seen = set()
        pushed = []
        for s in sources:
            local = self._local(job, s)
            if local.elements not in seen:
                seen.add(local.elements)
                pushed.append(local)
        if not job.pi1_local_systems:
            return pushed
        H = job.subgroup.as_group()
        class_keys = set()
        targets = []
        for local in pushed:
            key = local.class_indices()
            if key in class_keys:
                continue
            class_keys.add(key)
            targets.extend(self._systems_for(H, list(local.elements), config))
        return targets

    def pi1_report(self, job: Job) -> list[dict]:
        """
        Certificate search for each target system from `_pi1_targets`.
        """
        config = self.effective_config(job)
        rows = []
        for local in self._pi1_targets(job):
            result = pi1_trivial_certificate(local, config.bounds, config.threads)
            rows.append(
                {
                    "status": result.status,
                    "signature": list(local.signature),
                    "assignments_tried": result.assignments_tried,
                    "presentations_tried": result.presentations_tried,
                    "witness": witness_summary(result.witness) if result.witness else None,
                }
            )
        return rows

    def twists_report(self, job: Job) -> dict:
        config = self.effective_config(job)
        if job.enumerates:
            first = second = self.enumerate(job)
        else:
            first, second = job.systems, job.second_systems
        report = twist_report(first, second, job.subgroup, config.threads, config.search_node_cap)
        return {
            "pairs": sum(len(row) for row in report.entries),
            "min_KminusE2": report.min_KminusE2,
            "all_positive": report.all_positive,
            "numerically_constant": report.numerically_constant,
            "distinct_numerics": [list(n) for n in report.distinct_numerics()],
            "baskets": sorted({repr(e.basket) for row in report.entries for e in row}),
            "KminusE2_matrix": [[e.KminusE2 for e in row] for row in report.entries],
        }

    def run(self, job: Job, stages: tuple[str, ...] = ("surface",)) -> Report:
        """
        Run the named stages in the canonical stage order and collect them into a `Report`.
        """
        unknown = set(stages) - set(STAGES)
        if unknown:
            raise ValidationError(f"Unknown stages: {sorted(unknown)}")
        report = Report(job.name, job.raw)
        for stage in STAGES:
            if stage in stages:
                self.logger.info(f"[{job.name}] stage {stage}")
                report.add(stage, getattr(self, f"{stage}_report")(job))
        return report
