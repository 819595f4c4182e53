from decimal import Decimal

import pytest
from hypothesis import given, strategies as st

from optjudge.manifest import Direction
from optjudge.scoring import (
    FAILED_INSTANCE_PENALTY,
    InstanceResult,
    aggregate_score,
    build_report,
    render_report_lines,
    report_from_jsonable,
    report_to_jsonable,
)
from optjudge.verdicts import accepted, format_error, time_limit_exceeded


def test_maximize_sums_accepted():
    entries = {"i1": accepted(5), "i2": accepted(7)}
    assert aggregate_score(entries, Direction.MAXIMIZE) == Decimal(12)


def test_maximize_failed_contributes_zero():
    entries = {"i1": accepted(5), "i2": format_error("junk")}
    assert aggregate_score(entries, Direction.MAXIMIZE) == Decimal(5)


def test_minimize_failed_contributes_penalty():
    entries = {"i1": accepted(Decimal("3.5")), "i2": format_error("junk")}
    expected = Decimal("3.5") + FAILED_INSTANCE_PENALTY
    assert aggregate_score(entries, Direction.MINIMIZE) == expected


def test_penalty_constant_is_ten_to_the_ninth():
    assert FAILED_INSTANCE_PENALTY == Decimal(10) ** 9


def test_empty_entries_rejected():
    with pytest.raises(ValueError):
        aggregate_score({}, Direction.MAXIMIZE)


@given(
    scores=st.lists(st.integers(min_value=0, max_value=10**6), min_size=1, max_size=20),
    direction=st.sampled_from([Direction.MAXIMIZE, Direction.MINIMIZE]),
)
def test_permutation_invariance(scores, direction):
    entries = {f"i{k}": accepted(s) for k, s in enumerate(scores)}
    reordered = dict(reversed(list(entries.items())))
    assert aggregate_score(entries, direction) == aggregate_score(reordered, direction)


def test_report_lines_format():
    per_instance = {
        "i000.in": InstanceResult(accepted(42), 0.5),
        "i001.in": InstanceResult(time_limit_exceeded("no result within 5 s"), 5.1),
    }
    report = build_report("ruins", per_instance, Direction.MAXIMIZE)
    lines = render_report_lines(report)
    assert lines[0] == "i000.in\tAccepted\t42\t"
    assert lines[1] == "i001.in\tTimeLimitExceeded\t-\tno result within 5 s"
    assert lines[2] == "aggregate\t42"
    for line in lines[:-1]:
        assert len(line.split("\t")) == 4


def test_report_round_trip():
    per_instance = {
        "a.in": InstanceResult(accepted(Decimal("1.000000001")), 0.25),
        "b.in": InstanceResult(format_error("token 1: junk"), 0.1),
    }
    report = build_report("chains", per_instance, Direction.MINIMIZE)
    again = report_from_jsonable(report_to_jsonable(report))
    assert again == report
    assert again.aggregate == report.aggregate


def test_aggregate_field_matches_recomputation():
    per_instance = {"a.in": InstanceResult(accepted(3), 0.0)}
    report = build_report("ruins", per_instance, Direction.MAXIMIZE)
    verdicts = {name: r.verdict for name, r in report.per_instance.items()}
    assert report.aggregate == aggregate_score(verdicts, Direction.MAXIMIZE)
