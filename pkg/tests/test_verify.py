import csv
import io
import json

import pytest

from signless_ktrees import __version__
from signless_ktrees.errors import ParameterError
from signless_ktrees.graph import canonical_label
from signless_ktrees.ktree import make_k_star, make_named
from signless_ktrees.verify import (
    Verdict,
    overall,
    rank_ktrees,
    reports_to_csv,
    reports_to_json,
    run_grid,
    verify_l_characterizations,
    verify_family_orderings,
    verify_rewire_monotonicity,
    verify_top3,
)


def label(tag, n, k):
    return str(canonical_label(make_named(tag, n, k).graph))


def test_rank_single_class():
    for k in range(1, 5):
        r = rank_ktrees(k + 1, k)
        assert r.class_size == 1 and abs(r.ranking[0].q1 - 2 * k) < 1e-10


def test_rank_trees_on_six():
    r = rank_ktrees(6, 1)
    assert r.class_size == 6
    assert r.ranking[0].label == str(canonical_label(make_k_star(1, 5)))
    assert abs(r.ranking[0].q1 - 6) < 1e-10
    assert all(a.q1 >= b.q1 for a, b in zip(r.ranking, r.ranking[1:]))


def test_rank_count():
    assert rank_ktrees(8, 2).class_size == 39


@pytest.mark.parametrize("n,k", [(7, 2), (8, 1), (9, 3), (10, 2)])
def test_top3(n, k):
    r = verify_top3(rank_ktrees(n, k))
    assert [row.label for row in r.ranking[:3]] == [label("kstar", n, k), label("g1", n, k), label("g2", n, k)]
    assert all(v is Verdict.PASS for v in r.verdicts.values())
    assert r.min_gap > 1e-8


def test_top3_inapplicable_at_small_orders():
    r = verify_top3(rank_ktrees(4, 2))
    assert r.verdicts["top1_kstar"] is Verdict.PASS
    assert r.verdicts["top2_g1"] is Verdict.INAPPLICABLE
    assert r.verdicts["top3_g2"] is Verdict.INAPPLICABLE
    # G_2 coincides with G_1 at n = k+4
    r = verify_top3(rank_ktrees(6, 2))
    assert r.verdicts["top2_g1"] is Verdict.PASS
    assert r.verdicts["top3_g2"] is Verdict.INAPPLICABLE


def test_top3_inconclusive_with_huge_gap():
    r = verify_top3(rank_ktrees(7, 2), gap_tol=10.0)
    assert r.verdicts["top1_kstar"] is Verdict.INCONCLUSIVE


def test_l_characterizations():
    v = verify_l_characterizations(8, 2)
    assert all(x in (Verdict.PASS, Verdict.INAPPLICABLE) for x in v.values())
    assert v["l_third_iff_g2_to_g5"] is Verdict.PASS


def test_family_orderings():
    for n, k in [(8, 2), (9, 3)]:
        checks = verify_family_orderings(n, k)
        assert len(checks) == 3
        assert all(c.verdict is Verdict.PASS and c.gap > 1e-8 for c in checks)
    # at (k+3, k) some families coincide
    checks = verify_family_orderings(5, 2)
    assert any(c.same_class for c in checks)
    assert all(c.verdict is not Verdict.FAIL for c in checks)
    with pytest.raises(ParameterError):
        verify_family_orderings(4, 2)
    assert len(verify_family_orderings(6, 1)) == 1  # only the G_3/G_2 leg exists for k = 1


def test_monotonicity_exhaustive_and_random():
    r = verify_rewire_monotonicity(6, 2)
    assert r.verdict is Verdict.PASS and r.checked > 0 and r.excluded > 0
    r = verify_rewire_monotonicity(8, 2, trials=50, seed=1)
    assert r.checked == 50 and r.violations == 0 and r.min_gap > 1e-8
    again = verify_rewire_monotonicity(8, 2, trials=50, seed=1)
    assert again.min_gap == r.min_gap


def test_grid_serialization_deterministic():
    reports = run_grid(1, 2, 7)
    assert overall(reports) is Verdict.PASS
    cfg = {"k_min": 1, "k_max": 2, "n_max": 7, "gap_tol": 1e-8}
    text = reports_to_json(reports, cfg)
    assert text == reports_to_json(run_grid(1, 2, 7, jobs=2), cfg)
    data = json.loads(text)
    assert isinstance(data, list) and data[0]["tool_version"] == __version__
    assert data[0]["config"] == cfg
    rows = list(csv.DictReader(io.StringIO(reports_to_csv(reports, cfg))))
    assert len(rows) == sum(r.class_size for r in reports)


def test_grid_bad_parameters():
    with pytest.raises(ParameterError):
        run_grid(3, 2, 10)
