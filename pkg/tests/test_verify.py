import csv
import io
import json

import pytest

from alphatriples.constructions import ConstructionRecipe, Kind, cycle_graph, factorless_regular, sharpness_bipartite
from alphatriples.corpus import CorpusSpec
from alphatriples.graph import write_graph6
from alphatriples.verify import (
    CHECK_NAMES,
    SCHEMA_VERSION,
    Status,
    bound_report,
    check_bounds_suite,
    classify_triple,
    confirm_witness,
    emit_report,
    search_counterexample,
    verdict_table,
    verify_triple_on_corpus,
)

CUBIC = CorpusSpec(3, 4, 10, True)


def test_classify_examples():
    v = classify_triple(0, 0, 5)
    assert v.status is Status.VALID and "alpha(G) <= mu(G)" in v.provenance
    assert classify_triple(16, 2, 17).status is Status.UNKNOWN
    v = classify_triple(2, 1, 3)
    assert v.status is Status.INVALID
    assert v.witness == ConstructionRecipe(Kind.SHARP_BIPARTITE, (3, 2, 1))
    v = classify_triple(3, 2, 3)
    assert v.status is Status.INVALID and v.witness.build() == factorless_regular(3)


def test_classify_rejects_bad_triples():
    with pytest.raises(ValueError):
        classify_triple(0, 0, 0)
    with pytest.raises(ValueError):
        classify_triple(-1, 0, 3)


def test_two_p_equals_r_is_unknown():
    # 2r - p = 3p whenever r = 2p, so the divisibility route never fires.
    for p in range(2, 9):
        assert classify_triple(p, 1, 2 * p).status is Status.UNKNOWN


def test_odd_r_q2_threshold():
    assert classify_triple(3, 2, 5).status is Status.VALID  # 80 >= 68
    assert classify_triple(15, 2, 17).status is Status.VALID  # 272 >= 272
    assert classify_triple(17, 2, 17).status is Status.INVALID
    assert "17(p+1)/16" in classify_triple(16, 2, 17).note


def test_verdict_table_invariants():
    table = verdict_table()
    assert len(table) == 200
    by_key = {(v.p, v.q, v.r): v for v in table}
    for v in table:
        assert v == classify_triple(v.p, v.q, v.r)
        if v.status is not Status.UNKNOWN:
            assert v.provenance
        if v.status is Status.INVALID:
            assert v.witness is not None and v.witness_graph6()
    # valid at (p, q) stays valid-or-unknown for smaller p and larger q
    for (p, q, r), v in by_key.items():
        if v.status is not Status.VALID:
            continue
        for p2 in range(p + 1):
            for q2 in range(q, 5):
                assert by_key[p2, q2, r].status is not Status.INVALID


def test_small_witnesses_are_confirmed():
    confirmed = 0
    for v in verdict_table(4, 4, 5):
        if v.status is Status.INVALID:
            check = confirm_witness(v)
            if check.checked:
                assert check.violated, v
                confirmed += 1
    assert confirmed >= 20
    assert confirm_witness(classify_triple(0, 0, 3)) is None


@pytest.mark.parametrize("p,q", [(0, 0), (2, 2)])
def test_verify_valid_triples(p, q):
    rep = verify_triple_on_corpus(p, q, 3, CUBIC)
    assert rep.graphs == 27 and rep.passed and rep.min_slack >= 0


def test_verify_reports_violation():
    witness = sharpness_bipartite(3, 2, 1)
    rep = verify_triple_on_corpus(2, 1, 3, [witness])
    assert not rep.passed
    assert rep.violations == [{"graph6": write_graph6(witness), "alpha_p": 6, "alpha_q_line": 5}]


def test_verify_rejects_mismatched_corpus():
    with pytest.raises(ValueError):
        verify_triple_on_corpus(0, 0, 4, CUBIC)
    with pytest.raises(ValueError):
        verify_triple_on_corpus(0, 0, 4, [cycle_graph(5)])


def test_verify_parallel_matches_serial():
    spec = CorpusSpec(3, 4, 8)
    a = verify_triple_on_corpus(2, 1, 3, spec, jobs=1)
    b = verify_triple_on_corpus(2, 1, 3, spec, jobs=2)
    assert a.as_row() == b.as_row()


def test_search_examples():
    res = search_counterexample(1, 0, 3)
    assert res.found and res.witness == write_graph6(sharpness_bipartite(3, 1, 1))
    assert (res.alpha_p, res.alpha_q_line) == (6, 5)
    res = search_counterexample(0, 1, 3)
    assert not res.found and res.log[-1].startswith("searched")


def test_search_five_regular_valid_triple():
    res = search_counterexample(3, 2, 5, corpus=CorpusSpec(5, 6, 8))
    assert not res.found
    assert any("skipped" in line for line in res.log)


def test_bounds_suite_cubic():
    reports = check_bounds_suite(CUBIC)
    assert len(reports) == 27 and all(rep.passed for rep in reports)
    assert [rep.graph6 for rep in reports] == sorted(rep.graph6 for rep in reports)


def test_bounds_suite_quartic():
    for rep in check_bounds_suite(CorpusSpec(4, 5, 9)):
        assert rep.passed and rep.alpha_line[2] == rep.n
        assert rep.checks["two_matching_even"] == "pass"


def test_bound_report_c5():
    rep = bound_report(cycle_graph(5))
    assert rep.alpha_line[1] == 3 and rep.checks["one_matching_cap"] == "pass"
    assert rep.passed


def test_bound_report_out_of_range_is_skipped():
    rep = bound_report(factorless_regular(5))
    assert set(rep.checks.values()) == {"skip"} and rep.passed


def test_emit_empty_csv():
    text = emit_report([], "csv")
    assert text.count("\n") == 1 and text.startswith("graph6,n,r,")


def test_emit_one_bound_row():
    rep = bound_report(cycle_graph(5))
    rows = list(csv.DictReader(io.StringIO(emit_report([rep], "csv"))))
    assert len(rows) == 1
    assert all(name in rows[0] for name in CHECK_NAMES)
    assert rows[0]["alpha_line_1"] == "3"


def test_emit_is_deterministic(tmp_path):
    reports = check_bounds_suite(CorpusSpec(3, 4, 8))
    forward = emit_report(reports, "json")
    assert forward == emit_report(reversed(reports), "json")
    payload = json.loads(forward)
    assert payload["schema"] == SCHEMA_VERSION and len(payload["rows"]) == len(reports)
    out = tmp_path / "r.csv"
    emit_report(reports, "csv", out)
    raw = out.read_bytes()
    assert b"\r" not in raw and raw.decode("utf-8") == emit_report(reports, "csv")


def test_emit_verdict_table():
    table = verdict_table()
    rows = list(csv.DictReader(io.StringIO(emit_report(table, "csv"))))
    assert len(rows) == 200
    for row in rows:
        v = classify_triple(int(row["p"]), int(row["q"]), int(row["r"]))
        assert row["status"] == v.status.value


def test_emit_rejects_unknown_format():
    with pytest.raises(ValueError):
        emit_report([], "xml")
