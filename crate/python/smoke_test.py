"""Smoke test for the Python bindings: python3 python/smoke_test.py"""

import json

import hecke_forge_py as hf


def main():
    assert hf.canonical_expr("(2*x1 - c_nat) * d1") == "(2*x1 - c_nat)*d1"
    assert hf.normal_form("d1*d1") == "0"
    assert hf.apply("s1", "x1") == "-x1"
    assert hf.apply("d1", "x1^2", "A", 1) == "0"
    assert hf.circuits("A", 2) == ["c_nat"]
    assert "c_nat - 3*c_sharp" in hf.circuits("G", 2)

    clans = hf.clans(["1"], ["0"])
    assert len(clans) == 3
    assert sorted(g for _, g in clans) == [False, True, True]

    passed, report = hf.verify("galleries", "A", 1)
    assert passed and json.loads(report)["schema"] == "hecke-forge/1"

    code, out, _ = hf.run(["--json", "strata", "compare", "--c", "1", "--cprime", "-1"])
    assert code == 0 and json.loads(out)["relation"] == "antipodal"

    try:
        hf.normal_form("x1 +")
    except ValueError as e:
        assert "syntax error" in str(e)
    else:
        raise AssertionError("expected a syntax error")

    print("python smoke test: ok")


if __name__ == "__main__":
    main()
