import json

from futamix.report import EQUAL, ERROR, UNEQUAL, EquivalenceReport, Verdict
from futamix.values import Seq


def test_overall_and_failures():
    rep = EquivalenceReport("functional", ((1,), (2,)),
                            (Verdict((1,), EQUAL), Verdict((2,), UNEQUAL, note="3 vs 4")))
    assert not rep.overall
    assert [v.point for v in rep.failures()] == [(2,)]
    assert "first failure" in rep.summary() and "3 vs 4" in rep.summary()


def test_empty_report_passes():
    assert EquivalenceReport("structural").overall


def test_json_is_serializable():
    rep = EquivalenceReport("functional", (), (Verdict((Seq.of(3, 2),), ERROR, note="x"),
                                               Verdict("case", EQUAL, "structural")))
    data = json.loads(json.dumps(rep.to_json()))
    assert data["overall"] == "fail" and data["points"] == 2
    assert data["verdicts"][0]["point"] == ["(3 2)"]
    assert data["verdicts"][1]["tier"] == "structural"
