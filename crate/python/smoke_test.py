import json

import ggwb


def test_expr():
    x = ggwb.Expr("x^2*exp(y)")
    assert str(x.diff("x")) == str(ggwb.Expr("2*x*exp(y)"))
    assert (x - x).is_zero()
    assert (x / x) == ggwb.Expr("1")
    assert ggwb.Expr("sin(x)^2 + cos(x)^2 - 1").verdict() in ("Proved", "NumericallySupported")


def test_builtins_and_labels():
    names = ggwb.builtins()
    assert "S1-flat-cosymplectic" in names
    assert any(label == "normaltotal" for label, _ in ggwb.labels())


def test_checks():
    s = ggwb.Scenario.builtin("S1")
    assert s.structures == [("S1", "Classical")]
    r = s.check(["normal", "CRFK"], seed=7)
    assert not r.failed and r.exit_code == 0
    assert r.status("normal", "S1") == "Proved"
    doc = json.loads(r.json())
    assert doc["schema"] == 1 and doc["policy"]["seed"] == 7

    bad = ggwb.Scenario.builtin("S3").check(["normal"])
    assert bad.failed and bad.exit_code == 1


def test_errors():
    for call in (lambda: ggwb.Scenario.from_json("{"), lambda: ggwb.Scenario.builtin("nope"),
                 lambda: ggwb.Scenario.builtin("S1").check(["nosuch"]), lambda: ggwb.Expr("1 +")):
        try:
            call()
        except ValueError:
            pass
        else:
            raise AssertionError("expected ValueError")


if __name__ == "__main__":
    for name, fn in list(globals().items()):
        if name.startswith("test_"):
            fn()
    print("ok")
