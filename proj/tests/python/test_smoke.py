import json

import pytest

import mfcy


def test_poly_normalization():
    assert mfcy.normalize_poly("z1 + z1", ["z1"]) == "2*z1"
    assert mfcy.normalize_poly("3/6", ["z1"]) == "1/2"
    with pytest.raises(mfcy.MfcyParseError):
        mfcy.normalize_poly("w", ["z1"])


def test_groebner_and_milnor():
    basis = mfcy.groebner(["3*z1^2", "3*z2^2"], ["z1", "z2"])
    assert basis == ["z1^2", "z2^2"]
    q = mfcy.quotient_basis(["3*z1^2", "3*z2^2"], ["z1", "z2"])
    assert q == ["1", "z2", "z1", "z1*z2"]  # ascending degrevlex
    assert mfcy.milnor_number("z1^3 + z2^3", ["z1", "z2"]) == 4


def test_residues():
    assert mfcy.residue("1", [("z1 + z2", 1), ("z1 - z2", 1)], ["z1", "z2"]) == "-1/2"
    assert mfcy.residue("z1", [("z1^2 - 1", 1)], ["z1"]) == "1"
    assert mfcy.residue("1", [("2*z1", 1)], ["z1"], point=["0"]) == "1/2"
    with pytest.raises(mfcy.MfcyValidationError):
        mfcy.residue("1", [("z1", 0)], ["z1"])


def test_problem_roundtrip():
    problem = {
        "vars": ["z1"],
        "superpotential": "z1^3",
        "objects": {"D": {"koszul": [["z1", "z1^2"]]}},
        "morphisms": {
            "phi": {
                "source": "D",
                "target": "D",
                "parity": "odd",
                "blocks": [[["-1"]], [["z1"]]],
            }
        },
        "chains": {"c": ["phi"]},
        "tasks": [
            {"command": "theta_kl", "morphism": "phi"},
            {"command": "theta", "chain": "c", "mode": "total"},
        ],
    }
    records = json.loads(mfcy.run_problem(json.dumps(problem)))
    assert [r["value"] for r in records] == ["1", "1"]


def test_verify_smoke_corpus():
    assert mfcy.verify(corpus="smoke", seed=7)
