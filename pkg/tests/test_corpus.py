"""End-to-end runs of the shipped plans."""

import json
import time

import pytest

from hopf_forge.plan import EXIT_OK, RunOptions, check_file
from hopf_forge.report import REPORT_SCHEMA, VERDICT_ALL_PASSED, VERDICT_ESTABLISHED, Status

pytestmark = pytest.mark.integration


def ids_of(report):
    return [e.id for e in report.entries]


@pytest.mark.slow
def test_prop4_1_default_bound(corpus):
    """The prop4_1 recipe establishes a non-Hopf witness with the default settings."""
    report, code, message = check_file(corpus / "prop4_1.plan")
    assert message == ""
    assert code == EXIT_OK, report.render_table()
    assert report.verdict == VERDICT_ESTABLISHED
    ids = ids_of(report)
    assert len([i for i in ids if i.startswith("G.psi.relator_")]) == 6
    assert report.entry("G.elementary").status is Status.PASS
    assert report.entry("G.hopfian").status is Status.ASSUMED
    assert report.entry("G.relatively_hyperbolic").status is Status.ASSUMED


def test_prop4_2_both_recipes(corpus):
    """Both the b and the b^2 variants of prop4_2 pass."""
    options = RunOptions(plan_name="prop4_2", bound=(2, 1), property_cases=20)
    report, code, _ = check_file(corpus / "prop4_2.plan", options)
    assert code == EXIT_OK, report.render_table()
    ids = ids_of(report)
    for name in ("G", "G_b2"):
        assert f"{name}.non_injective" in ids
        assert f"{name}.surjective.x" in ids
        assert f"{name}.surjective.t" in ids
    assert "omits" in report.entry("G.hopfian").evidence
    assert "omits" not in report.entry("G_b2.hopfian").evidence


def test_thm1_1_background(corpus):
    """The background tower passes every check without a recipe."""
    options = RunOptions(plan_name="thm1_1", property_cases=20)
    report, code, _ = check_file(corpus / "thm1_1.plan", options)
    assert code == EXIT_OK, report.render_table()
    assert report.verdict == VERDICT_ALL_PASSED
    assert len([i for i in ids_of(report) if i.startswith("check.")]) == 11


def test_report_document(corpus):
    """The JSON report carries every key the schema requires."""
    options = RunOptions(plan_name="thm1_1", property_cases=10)
    report, _, _ = check_file(corpus / "thm1_1.plan", options)
    data = json.loads(report.dumps())
    for key in REPORT_SCHEMA["required"]:
        assert key in data
    assert all(e["status"] in {s.value for s in Status} for e in data["entries"])


@pytest.mark.slow
@pytest.mark.parametrize("name", ["prop4_1", "prop4_2", "thm1_1"])
def test_default_check_finishes_in_ten_seconds(corpus, name):
    """A default check of each shipped plan passes in under ten seconds."""
    start = time.perf_counter()
    report, code, _ = check_file(corpus / f"{name}.plan")
    elapsed = time.perf_counter() - start
    assert code == EXIT_OK, report.render_table()
    assert elapsed < 10, f"{name} took {elapsed:.1f} s"
