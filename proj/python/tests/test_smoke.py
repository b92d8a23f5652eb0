import qchar


def test_jd_rank_one_matches_closed_form():
    closed = {
        "rank": 1,
        "terms": [{"coeff": "1*v^0/1*v^0", "z": [0], "num": [], "den": [[1, [0], 2], [1, [1], 2]]}],
    }
    assert qchar.termsum_equal(qchar.jd(1, [2]), closed)


def test_routes_agree():
    assert qchar.termsum_equal(qchar.jd(2, [2, 1], "gz"), qchar.jd(2, [2, 1], "explicit"))
    assert qchar.termsum_equal(qchar.jd(2, [2, 1], "solve"), qchar.jd(2, [2, 1]))


def test_characters_agree():
    a = qchar.character(2, 1, "fermionic", (3, -10, 30))
    b = qchar.character(2, 1, "bosonic", (3, -10, 30))
    assert a == b
    assert a["terms"][0] == {"z": [0, 0], "v_coeffs": {"0": "1"}}


def test_fermionic_series_and_eigen():
    s = qchar.fermionic_series(1, [1], 0, (2, 0, 10))
    assert s["rank"] == 1
    assert qchar.verify_eigen(1, 3)


def test_verify_report():
    rep = qchar.verify("theorem44", n=2, r=(-1, 0), d=(1, 1))
    assert rep["pass"] is True
    assert rep["witness"] is None
    assert set(rep) == {"identity", "params", "pass", "witness", "truncation_bounds"}


def test_errors_raise():
    try:
        qchar.jd(2, [1])
    except qchar.QcharError:
        pass
    else:
        raise AssertionError("expected QcharError")
