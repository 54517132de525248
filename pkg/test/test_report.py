import json

import pytest

from chernwall.report import (
    REPORT_VERSION,
    Report,
    StageRecord,
    parse_structured,
    render,
    render_structured,
    render_text,
    report_from_certificates,
    to_struct,
)
from chernwall.vanish import Certificate
from chernwall.vanish.helpers import TermDiff


@pytest.fixture(scope="module")
def certificates():
    return [
        Certificate(
            stage="cF",
            claimed="1 - 6*xi",
            computed="1 - 6*u - 6*v",
            match=True,
            stats={"terms": 3},
            elapsed_ms=1.25,
        ),
        Certificate(
            stage="c8",
            claimed="x",
            computed="y",
            match=False,
            sign=1,
            notes=("c = -3: FAILED",),
            diff=(TermDiff(part="q", monomial="eta", claimed="1", computed="2"),),
            values={"c": "-2", "c8": "unverified"},
        ),
    ]


@pytest.fixture(scope="module")
def report(certificates) -> Report:
    return report_from_certificates("chernwall verify all", certificates)


def test_summary(report) -> None:
    assert report.version == REPORT_VERSION
    assert not report.ok
    assert report.summary["stages"] == "2"
    assert report.summary["failed"] == "c8"
    assert report.summary["status"] == "failed"
    assert report.summary["c8.c"] == "-2"


def test_structured_round_trip(report) -> None:
    text = render_structured(report)

    assert parse_structured(text) == report
    assert json.loads(text)["stages"][1]["diff"] == ["q: eta: claimed 1, computed 2"]


def test_structured_output_is_stable(report) -> None:
    assert render(report, "structured") == render_structured(report)
    once = render_structured(report)
    assert render_structured(parse_structured(once)) == once


def test_text_output(report) -> None:
    lines = render_text(report).splitlines()

    assert lines[0] == "chernwall report v1: chernwall verify all"
    assert lines[1:5] == [
        "  cF  match  1.25 ms",
        "      claimed: 1 - 6*xi",
        "      computed: 1 - 6*u - 6*v",
        "      stats: terms=3",
    ]
    assert lines[5:8] == ["  c8  MISMATCH", "      claimed: x", "      computed: y"]
    assert "      c = -2" in lines
    assert "      note: c = -3: FAILED" in lines
    assert "      diff: q: eta: claimed 1, computed 2" in lines
    assert "status  failed" in lines


def test_text_carries_every_structured_field(report) -> None:
    parsed = parse_structured(render_structured(report))
    text = render_text(report)

    for stage in parsed.stages:
        assert f"      claimed: {stage.claimed}\n" in text
        assert f"      computed: {stage.computed}\n" in text
        for key, count in stage.stats.items():
            assert f"{key}={count}" in text
        for key, value in stage.values.items():
            assert f"      {key} = {value}\n" in text
        for line in (*stage.notes, *stage.diff):
            assert line in text
        if stage.ms is not None:
            assert f"{stage.ms!r} ms" in text
    for key, value in parsed.summary.items():
        assert key in text and value in text


def test_multiline_claimed_text() -> None:
    record = StageRecord(name="c7_display", claimed="a\n- b", computed="", match=False, sign=-1)
    report = Report(version=REPORT_VERSION, command="x", stages=(record,))

    lines = render_text(report).splitlines()

    assert lines[1:6] == [
        "  c7_display  MISMATCH  sign -1",
        "      claimed:",
        "        a",
        "        - b",
        "      computed: ",
    ]


def test_rows_with_figures() -> None:
    report = Report(
        version=REPORT_VERSION,
        command="chernwall patterns --n 2 --marked 1",
        rows=({"pattern": "P", "figure": "*--*\n^"},),
        summary={"count": "1"},
    )

    lines = render_text(report).splitlines()

    assert lines[1] == "  pattern=P"
    assert lines[2:5] == ["      figure:", "        *--*", "        ^"]
    assert lines[5] == "count  1"
    assert report.ok


def test_unserializable_values() -> None:
    bad = Report(
        version=REPORT_VERSION,
        command="x",
        stages=(
            StageRecord(name="s", claimed="", computed="", match=True, values={"v": object()}),
        ),
    )

    with pytest.raises(TypeError):
        to_struct(bad)
