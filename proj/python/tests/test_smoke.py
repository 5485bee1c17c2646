import json
import os
import subprocess

import pytest

import ffpos


def test_field_arithmetic():
    f = ffpos.Field(7)
    assert f.q == 7
    assert f.generator == 3
    assert f.mul(3, 5) == 1
    assert f.pow(3, 6) == 1
    assert f.eta(2) == 1
    assert f.eta(3) == -1
    assert f.eta(0) == 0
    assert f.positives() == [1, 2, 4]
    assert f.sqrt_positive(2) == 4


def test_extension_field():
    f9 = ffpos.Field(3, 2)
    assert f9.q == 9
    assert f9.modulus == [1, 0, 1]
    assert f9.frobenius(1, f9.frobenius(1, 5)) == 5
    assert f9.subfield_elements(3) == [0, 1, 2]


def test_field_errors():
    with pytest.raises(ValueError, match="NotPrime"):
        ffpos.Field(4)
    f5 = ffpos.Field(5)
    with pytest.raises(ValueError, match="NotApplicable"):
        f5.sqrt_positive(4)


def test_matrix_predicates():
    f5 = ffpos.Field(5)
    m = ffpos.SymMatrix(f5, [[1, 1], [1, 0]])
    assert m.leading_minors() == [1, 4]
    assert m.is_positive_definite()
    assert m.cholesky() is None  # PD without a factorization

    f7 = ffpos.Field(7)
    a = ffpos.SymMatrix(f7, [[1, 1], [1, 2]])
    assert a.cholesky() == [[1, 0], [1, 1]]
    assert a.quad_form_range() == [0, 1, 2, 3, 4, 5, 6]

    with pytest.raises(ValueError, match="BadInput"):
        ffpos.SymMatrix(f7, [[1, 2], [3, 4]])


def test_pd_enumeration():
    f3 = ffpos.Field(3)
    mats = ffpos.enumerate_pd(f3, 2)
    assert [m.entries for m in mats] == [
        [1, 0, 0, 1],
        [1, 1, 1, 2],
        [1, 2, 2, 2],
    ]


def test_paley_graph():
    f13 = ffpos.Field(13)
    g = ffpos.paley_graph(f13)
    assert not g.directed
    assert ffpos.srg_params(g) == (13, 6, 2, 3)

    f7 = ffpos.Field(7)
    assert ffpos.paley_graph(f7).directed
    assert ffpos.translate_intersection(f7, 1) == 1

    f25 = ffpos.Field(5, 2)
    cliques = ffpos.max_cliques(ffpos.paley_graph(f25))
    assert all(len(c) == 5 for c in cliques)
    pairs = ffpos.same_subfield_neighborhood_pairs(f25)
    assert pairs and all(f25.frobenius(1, u) == v for u, v in pairs)


def test_classification():
    f7 = ffpos.Field(7)
    result = ffpos.classify(f7, n=2)
    assert result["count"] == 3
    assert result["exhaustive"]
    tables = [entry["table"] for entry in result["preservers"]]
    identity = list(range(7))
    assert identity in tables
    assert [f7.mul(2, x) for x in identity] in tables
    assert [f7.mul(4, x) for x in identity] in tables
    for entry in result["preservers"]:
        assert entry["form"]["kind"] == "automorphism_multiple"

    ok, witness = ffpos.is_preserver(f7, [f7.mul(3, x) for x in range(7)], 2)
    assert not ok and witness == [1, 0, 0, 1]


def test_numtheory():
    assert ffpos.lucas_binom(10, 3, 7) == 1
    assert ffpos.lucas_binom(10, 3, 7) == ffpos.binom_mod_direct(10, 3, 7)
    assert ffpos.construct_r(5, 7, 1) == 1
    f27 = ffpos.Field(3, 3)
    assert ffpos.key_lemma_test(f27, 3)
    assert not ffpos.key_lemma_test(f27, 5)
    assert ffpos.monomial_preserver_test(f27, 9)


def test_big_counts():
    assert ffpos.count_dim1_preservers(ffpos.Field(5)) == 500
    assert (
        ffpos.count_dim1_preservers(ffpos.Field(3, 3))
        == 33140287996423378305841540432607877
    )


def test_graph_structures():
    f9 = ffpos.Field(3, 2)
    r, reps, cosets = ffpos.square_cosets(f9)
    assert r == 3 and cosets == [[1, 2], [3, 6]]
    oval, kind = ffpos.oval_set(f9)
    assert kind == "clique" and oval == [0, 1, 2]

    gamma = ffpos.gamma_subgraph(ffpos.Field(13))
    assert gamma.n == 6 and all(gamma.degree(v) == 2 for v in range(6))
    auts = ffpos.graph_automorphisms(gamma)
    assert len(auts) == 12

    g = ffpos.paley_graph(ffpos.Field(5, 2))
    assert ffpos.neighborhood_count(g, 7, cosets_for_q25()[0]) in (1, 2)


def cosets_for_q25():
    _, _, cosets = ffpos.square_cosets(ffpos.Field(5, 2))
    return cosets


def test_tables_and_forms():
    f9 = ffpos.Field(3, 2)
    cube = [f9.frobenius(1, x) for x in range(9)]
    assert ffpos.interpolate(f9, cube) == [0, 0, 0, 1]
    assert ffpos.carlitz_predicate(f9, cube)
    assert ffpos.carlitz_normalized_solutions(f9) == [list(range(9)), cube]
    form = ffpos.recognize_form(f9, [f9.mul(2, v) for v in cube])
    assert form["kind"] == "automorphism_multiple"
    assert form["c"] == 2 and form["exponent"] == 1

    ok, _ = ffpos.is_sign_preserver(ffpos.Field(5), [0, 4, 3, 2, 1], 2)
    assert ok


def test_suites():
    ids = {d["id"] for d in ffpos.suite_registry()}
    assert {"thmA", "thmB", "thmC", "thmD", "srg", "ekr", "determinism"} <= ids
    report = ffpos.run_suite("hoffman")
    assert report["pass"]
    assert report["suite"] == "hoffman"
    assert report["params"]["fields"] == [9, 25]

    golden = os.environ.get("FFPOS_GOLDEN_DIR")
    if golden:
        assert ffpos.run_suite("openq5", golden_dir=golden)["pass"]


def test_cli_roundtrip():
    cli = os.environ.get("FFPOS_CLI")
    if not cli:
        pytest.skip("FFPOS_CLI not set")
    out = subprocess.run(
        [cli, "field", "info", "--p", "3", "--k", "2"],
        capture_output=True, text=True, check=True,
    )
    info = json.loads(out.stdout)
    assert info["q"] == 9 and info["modulus"] == [1, 0, 1]

    bad = subprocess.run([cli, "field", "info", "--p", "4", "--k", "1"],
                         capture_output=True, text=True)
    assert bad.returncode == 2

    first = subprocess.run([cli, "classify", "--p", "7", "--k", "1", "--n", "2"],
                           capture_output=True, text=True, check=True)
    second = subprocess.run([cli, "classify", "--p", "7", "--k", "1", "--n", "2"],
                            capture_output=True, text=True, check=True)
    assert first.stdout == second.stdout  # byte-identical canonical output
    assert json.loads(first.stdout)["count"] == 3


def test_cli_verify_and_reports():
    cli = os.environ.get("FFPOS_CLI")
    if not cli:
        pytest.skip("FFPOS_CLI not set")

    srg = subprocess.run([cli, "verify", "--suite", "srg", "--p", "13", "--k", "1"],
                         capture_output=True, text=True)
    assert srg.returncode == 0
    report = json.loads(srg.stdout)
    assert report["pass"]
    assert report["checks"][0]["observed"] == {"v": 13, "k": 6, "lambda": 2, "mu": 3}

    unknown = subprocess.run([cli, "verify", "--suite", "nonsense"],
                             capture_output=True, text=True)
    assert unknown.returncode == 2

    pd = subprocess.run(
        [cli, "matrix", "pd-check", "--p", "5", "--k", "1",
         "--matrix", '{"n":2,"entries":[1,1,1,0]}'],
        capture_output=True, text=True, check=True,
    )
    info = json.loads(pd.stdout)
    assert info["positive_definite"] is True
    assert info["minors"] == [1, 4]
    assert info["cholesky"] is None

    dot = subprocess.run([cli, "paley", "--q", "7", "--emit", "dot"],
                         capture_output=True, text=True, check=True)
    assert dot.stdout.startswith("digraph")
    assert "->" in dot.stdout


def test_matrix_survives_field_release():
    import gc
    mats = ffpos.enumerate_pd(ffpos.Field(3), 2)  # temporary Field
    gc.collect()
    assert [m.entries for m in mats] == [
        [1, 0, 0, 1], [1, 1, 1, 2], [1, 2, 2, 2],
    ]
    assert all(m.is_positive_definite() for m in mats)
