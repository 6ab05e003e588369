"""Smoke test for the pyexterior extension module.

Builds the cdylib with cargo, exposes it as ``pyexterior.so`` in a temporary
directory and exercises the main entry points.

    python3 python/smoke_test.py
"""

import json
import os
import shutil
import subprocess
import sys
import sysconfig
import tempfile

ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))


def load_module():
    subprocess.run(
        ["cargo", "build", "--release", "-p", "exterior-graph-py"],
        cwd=ROOT,
        check=True,
    )
    lib = "libpyexterior.dylib" if sys.platform == "darwin" else "libpyexterior.so"
    built = os.path.join(ROOT, "target", "release", lib)
    target = tempfile.mkdtemp(prefix="pyexterior-")
    suffix = sysconfig.get_config_var("EXT_SUFFIX") or ".so"
    shutil.copy(built, os.path.join(target, "pyexterior" + suffix))
    sys.path.insert(0, target)
    import pyexterior

    return pyexterior


def main():
    px = load_module()

    tri = px.Graph([("a", "b"), ("b", "c"), ("c", "a")])
    cx = px.Complex(tri)
    assert cx.level_sizes() == [3, 3, 1, 0], cx.level_sizes()

    alpha = cx.form(1, [(["c", "a"], 1)])
    assert alpha.value(["a", "c"]) == "-1"
    assert alpha.d().entries() == [(["a", "b", "c"], "1")]
    assert alpha.d().d().is_zero()

    half = cx.chi("a").d().wedge(cx.chi("b").d())
    assert half.value(["a", "b", "c"]) == "1/2", half.entries()

    f = cx.form(0, [(["a"], "3/2"), (["b"], 1)])
    lhs = f.wedge(alpha).d()
    rhs = f.d().wedge(alpha) + f.wedge(alpha.d())
    assert lhs == rhs

    assert alpha.expand() == alpha
    assert px.Graph.from_edge_list("a b\nb c\nc d\nd a\n").betti() == [1, 1]
    assert px.Graph.named("octahedron").betti() == [1, 0, 1]

    k4 = px.Complex(px.Graph.named("K4"))
    report = json.loads(k4.verify_operator(k4.derivative_table(), trials=3))
    assert report["passed"], report

    try:
        cx.form(1, [(["a", "z"], 1)])
    except ValueError as e:
        assert "unknown_label" in str(e), e
    else:
        raise AssertionError("unknown label accepted")

    st = json.loads(px.run_selftest(trials=2, seed=1))
    assert st["passed"]
    print("pyexterior smoke test passed")


if __name__ == "__main__":
    main()
