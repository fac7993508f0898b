import json

import pytest

from tomescu import claims

EXPECTED_FAILS = {"k4-lconn-l5", "k4-lconn-l6"}


def _no_floats(obj):
    if isinstance(obj, float):
        return False
    if isinstance(obj, dict):
        return all(_no_floats(v) for v in obj.values())
    if isinstance(obj, list):
        return all(_no_floats(v) for v in obj)
    return True


def test_registry_is_static_and_unique():
    ids = [c.claim_id for c in claims.CLAIMS]
    assert len(ids) == len(set(ids)) == len(claims.REGISTRY)


def test_coverage_points_at_registered_claims():
    for statement, ids in claims.COVERAGE.items():
        assert ids, statement
        assert all(i in claims.REGISTRY for i in ids), statement
    covered = {i for ids in claims.COVERAGE.values() for i in ids}
    assert covered == set(claims.REGISTRY)


@pytest.mark.parametrize("claim_id", [c.claim_id for c in claims.CLAIMS])
def test_claim_runs_at_defaults(claim_id):
    r = claims.run_claim(claim_id)
    want = "fails" if claim_id in EXPECTED_FAILS else "holds"
    assert r.verdict == want, r.note
    d = r.to_json()
    assert _no_floats(d)
    assert json.loads(json.dumps(d)) == d
    # reports are self-contained: rerunning the embedded params gives the same verdict
    params = {k: type(claims.REGISTRY[claim_id].defaults[k])(v) for k, v in d["params"].items()}
    assert claims.run_claim(claim_id, params).verdict == r.verdict


def test_unknown_family():
    with pytest.raises(KeyError):
        claims.build_family("petersen", {})
