"""Harness behavior: corpus determinism, suite bookkeeping, report emission.

Numerical quality of individual checks is covered by the acceptance tests
against the default configuration.  Here we run a deliberately coarse
configuration so the suite finishes in seconds, and only assert on control
flow and serialization.
"""

import json

import numpy as np
import pytest

from smoothness_lab import InvalidArgumentError, ReportIOError, SpaceParams, weighted_norm
from smoothness_lab.harness import (
    Config,
    VerificationReport,
    corpus,
    emit_report,
    run_lemma_suite,
    run_theorem_sweep,
)

# Coarse settings: quad_n=8 is too few nodes for the degree-24 integrands the
# doubling check feeds it, so that check must come back as a failure.
SMALL = Config(
    quad_n=8,
    norm_nodes=64,
    t_points=4,
    kdeg=16,
    pair_nodes=64,
    pair_quad=64,
    coeff_nodes=128,
    coeff_quad=128,
    approx_grid=64,
    jackson_quad=256,
    jackson_t_nodes=32,
)


@pytest.fixture(scope="module")
def small_reports():
    return run_lemma_suite(SMALL)


def by_id(reports):
    out = {r.check_id: r for r in reports}
    assert len(out) == len(reports), "duplicate check ids"
    return out


def test_corpus_labels_and_tags():
    entries = corpus()
    labels = [e.label for e in entries]
    assert labels == ["1", "x", "x^2", "P_5", "|x|", "(1-x)^0.75", "sin(3x)", "random-series"]
    tags = {e.label: e.tag for e in entries}
    assert tags["|x|"] == "kink"
    assert tags["(1-x)^0.75"] == "endpoint-singular"
    assert tags["P_5"] == "polynomial"
    # only the random entry records its seed
    assert [e.seed for e in entries] == [None] * 7 + [7]


def test_corpus_is_deterministic():
    grid = np.linspace(-0.99, 0.99, 51)
    a = corpus(seed=7)
    b = corpus(seed=7)
    for ea, eb in zip(a, b):
        assert ea.label == eb.label
        np.testing.assert_array_equal(ea.handle(grid), eb.handle(grid))
    # a different seed changes only the random entry
    c = corpus(seed=8)
    np.testing.assert_array_equal(a[0].handle(grid), c[0].handle(grid))
    assert not np.array_equal(a[-1].handle(grid), c[-1].handle(grid))


def test_corpus_random_entry_is_tame():
    entry = corpus(seed=7)[-1]
    value = weighted_norm(entry.handle, SpaceParams(2.0, 1.0))
    assert 0.0 < value < 10.0


def test_reduced_suite_shape(small_reports):
    assert len(small_reports) == 28
    reports = by_id(small_reports)
    for r in reports.values():
        assert r.status in ("pass", "fail", "skipped")
        # exact-identity checks carry tolerance 0.0
        assert r.tolerance >= 0.0
        assert r.seconds >= 0.0


def test_reduced_suite_flags_coarse_quadrature(small_reports):
    r = by_id(small_reports)["quadrature-doubling"]
    assert r.status == "fail"
    assert r.observed > r.tolerance


def test_reduced_sweep_runs():
    reports = run_theorem_sweep(SMALL)
    assert sorted(r.check_id for r in reports) == [
        "kink-error-decay",
        "modulus-direct-constant",
        "modulus-inverse-constant",
        "modulus-k-damped-window",
        "modulus-k-equivalence",
        "modulus-k-stability",
    ]


@pytest.mark.parametrize("runner", [run_lemma_suite, run_theorem_sweep])
def test_inadmissible_space_is_rejected(runner):
    with pytest.raises(InvalidArgumentError):
        runner(Config(p=2.0, alpha=0.7))


def test_empty_json_report():
    text = emit_report([], format="json")
    payload = json.loads(text)
    assert payload == {"checks": [], "config": {}, "schema_version": 1}
    assert text.endswith("\n")


def test_json_report_roundtrip(small_reports):
    text = emit_report(small_reports, format="json", config=SMALL)
    payload = json.loads(text)
    assert payload["schema_version"] == 1
    assert payload["config"]["quad_n"] == 8
    assert len(payload["checks"]) == 28
    for check in payload["checks"]:
        assert set(check) == {"check_id", "status", "observed", "tolerance", "details", "note"}
    # wall-clock timing must never leak into the emitted report
    assert "seconds" not in text


def test_report_emission_is_byte_stable(small_reports):
    first = emit_report(small_reports, format="json", config=SMALL)
    second = emit_report(small_reports, format="json", config=SMALL)
    assert first == second


def test_csv_report_layout():
    plain = VerificationReport("demo", "pass", 1.0, 2.0)
    text = emit_report([plain], format="csv")
    lines = text.strip().split("\n")
    assert lines[0] == "check_id,status,observed,tolerance,case,value,note"
    # a report without detail rows still occupies exactly one line
    assert len(lines) == 2
    assert lines[1].startswith("demo,pass,1.0,2.0")


def test_csv_report_expands_details(small_reports):
    text = emit_report(small_reports, format="csv")
    lines = text.strip().split("\n")
    ids = {line.split(",")[0] for line in lines[1:]}
    assert ids == {r.check_id for r in small_reports}
    assert len(lines) - 1 >= len(small_reports)


def test_report_written_to_path(tmp_path, small_reports):
    target = tmp_path / "report.json"
    text = emit_report(small_reports, format="json", path=target, config=SMALL)
    assert target.read_text() == text


def test_report_write_failure_raised(tmp_path):
    target = tmp_path / "missing" / "report.json"
    with pytest.raises(ReportIOError):
        emit_report([], format="json", path=target)


def test_report_rejects_unknown_format():
    with pytest.raises(InvalidArgumentError):
        emit_report([], format="xml")


def test_as_dict_excludes_timing():
    r = VerificationReport("demo", "pass", 1.0, 2.0, seconds=3.5)
    assert "seconds" not in r.as_dict()
    assert r.as_dict()["check_id"] == "demo"
