import math

import pytest

import bouquet

CONST1 = {"prefix": [], "tail": {"kind": "const", "c": 1}}
FEXP10 = {"prefix": [], "tail": {"kind": "fexp", "c": 10}}


def bisect(f, lo, hi):
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if f(mid) < 0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def test_t_star_const1_is_ln2():
    iv = bouquet.t_star(CONST1)
    assert iv["lo"] <= math.log(2) <= iv["hi"]


def test_t_min_const1_matches_bisection():
    root = bisect(lambda t: math.exp(t) - t - 2, 0.0, 2.0)
    r = bouquet.t_min(CONST1)
    assert r["converged"]
    assert abs(0.5 * (r["enclosure"]["lo"] + r["enclosure"]["hi"]) - root) < 1e-6


def test_accepts_json_strings_and_normalizes():
    s = bouquet.normalize_seq('{"prefix":[0,5],"tail":{"kind":"const","c":0}}')
    assert s["prefix"] == [0, 5]
    assert bouquet.seq_at({"prefix": [0], "tail": {"kind": "fexp", "c": 3}}, 1) == "19"


def test_classify_examples():
    assert bouquet.classify(CONST1, math.log(2)) == {"kind": "NotInJ", "first_failing_step": 2}
    assert bouquet.classify({"tail": {"kind": "const", "c": 0}}, 0.0)["kind"] == "InJ_NonEscaping"


def test_strata_and_witnesses():
    assert bouquet.in_x(FEXP10, [0]) == "true"
    assert bouquet.find_extension(FEXP10, [0]) == 1
    reps = bouquet.witness(FEXP10, [0], 1, count=3)
    assert len(reps) == 3
    assert all(r["claim2_bound"]["hi"] <= 3 for r in reps)
    assert all(r["claim1_margin"]["lo"] > 2 for r in reps)
    dists = [r["distance"] for r in reps]
    assert dists == sorted(dists, reverse=True) and len(set(dists)) == 3


def test_plane_cycles():
    c = bouquet.find_cycle(-2, 1, -2)
    assert c["kind"] == "Attracting"
    assert abs(c["points"][0]["re"] + 1.841406) < 1e-5
    p = bouquet.find_cycle(-1, 1, 0.1)
    assert p["kind"] == "Parabolic"


def test_itinerary_and_render(tmp_path):
    assert bouquet.itinerary(-1, complex(0.5, 2 * math.pi), 1) == [1]
    vp = (-2.0, 4.0, -math.pi, math.pi)
    a = bouquet.render(-1, vp, path=str(tmp_path / "a.ppm"))
    b = bouquet.render(-1, vp)
    assert a == b
    assert a["escaped_pixels"] > 0 and a["retained_pixels"] > 0
    assert (tmp_path / "a.ppm").read_bytes().startswith(b"P6\n200 200\n255\n")


def test_errors_map_to_python_exceptions():
    with pytest.raises(ValueError):
        bouquet.t_star('{"prefix":')
    with pytest.raises(bouquet.NoConvergence):
        bouquet.find_cycle(1, 1, 0)
    with pytest.raises(bouquet.BouquetError):
        bouquet.find_extension({"tail": {"kind": "const", "c": 1}}, [])


def test_verify_passes():
    assert bouquet.verify()["passed"]
