from fractions import Fraction

import pytest

from pqsurf.cacher import Cacher
from pqsurf.covers import enumerate_systems
from pqsurf.errors import ValidationError
from pqsurf.utils import build_group, parse_element, parse_exact, parse_job, render_exact

from conftest import TRIPLE


def psl13_job(**extra):
    return {"schema": 1, "name": "t", "group": {"kind": "psl2", "q": 13}, "systems": [list(TRIPLE)], **extra}


def test_parse_job_with_matrices():
    job = parse_job(psl13_job())
    assert job.group.order == 1092
    assert job.psl2 is not None
    assert job.systems[0].signature == (2, 3, 7)
    assert job.second_systems[0] is job.systems[0]


def test_parse_job_subgroup_label():
    job = parse_job(psl13_job(subgroup={"normalizer_of": [TRIPLE[2]], "label": "D7"}))
    assert (job.subgroup.order, job.subgroup.label) == (14, "D7")


def test_parse_job_rejections():
    with pytest.raises(ValidationError):
        parse_job({**psl13_job(), "schema": 2})
    with pytest.raises(ValidationError):
        parse_job(psl13_job(colour="blue"))
    with pytest.raises(ValidationError):
        parse_job(psl13_job(options={"verbosity": 3}))
    with pytest.raises(ValidationError):
        parse_job(psl13_job(class_order=[TRIPLE[0]]))
    with pytest.raises(ValidationError):
        parse_job(psl13_job(subgroup={"normalizer_of": [TRIPLE[2]]}, class_order=[TRIPLE[1]]))
    with pytest.raises(ValidationError):
        parse_job('{"schema": 1, "group": {"kind": "klein"}}')
    with pytest.raises(ValidationError):
        parse_job("/nonexistent/job.json")


def test_parse_job_enumerate_and_pi1_blocks():
    job = parse_job(psl13_job(enumerate={"signature": [2, 3, 7]}))
    assert job.enumerate_signature == (2, 3, 7)
    assert job.enumerate_classes is None and job.enumerates
    assert not job.pi1_local_systems
    job = parse_job(psl13_job(subgroup={"normalizer_of": [TRIPLE[2]]}, pi1={"local_systems": True}))
    assert job.pi1_local_systems and not job.enumerates
    for extra in (
        {"enumerate": {"signature": [2, 3, 7], "classes": list(TRIPLE)}},
        {"enumerate": {"signature": [1, 3]}},
        {"enumerate": {"orders": [2, 3, 7]}},
        {"pi1": {"local_systems": True}},
        {"pi1": {"local_systems": 1}},
        {"options": {"order_cap": "big"}},
    ):
        with pytest.raises(ValidationError):
            parse_job(psl13_job(**extra))


def test_element_descriptors():
    built = build_group({"kind": "perms", "degree": 4, "generators": [[1, 2, 3, 0], [0, 3, 2, 1]], "name": "D4"})
    r, s = built.group.generators
    assert parse_element([1, 2, 3, 0], built) == r
    assert parse_element({"word": [1, 2, -1]}, built) == r * s * ~r
    with pytest.raises(ValidationError):
        parse_element({"word": [3]}, built)
    with pytest.raises(ValidationError):
        parse_element([[1, 0], [0, 1]], built)
    with pytest.raises(ValidationError):
        parse_element([0, 0, 1, 2], built)


def test_render_exact():
    rendered = render_exact({"k": Fraction(11, 7), "n": Fraction(4, 2), "rows": (1, True, None), "name": "A1"})
    assert rendered == {"k": "11/7", "n": 2, "rows": [1, True, None], "name": "A1"}
    with pytest.raises(ValidationError):
        render_exact(0.5)


def test_parse_exact():
    assert parse_exact("11/7") == Fraction(11, 7)
    assert parse_exact(93) == 93
    for bad in ("1/0", "x", True, 1.5):
        with pytest.raises(ValidationError):
            parse_exact(bad)


def test_cacher_round_trip(tmp_path, s3):
    t, c = s3.classes[1].representative, s3.classes[2].representative
    systems = enumerate_systems(s3, [t, t, c])
    cacher = Cacher(str(tmp_path / "cache" / "systems.db"))
    cacher.setup()
    assert cacher.get_systems(s3, [t, t, c]) is None
    cacher.insert_systems(s3, [t, t, c], systems)
    assert cacher.get_systems(s3, [t, t, c]) == systems
    cacher.drop_tables()
    cacher.setup()
    assert cacher.get_systems(s3, [t, t, c]) is None
