#!/usr/bin/env python3
"""Smoke test for the curvecount_py extension module.

Expects the bindings to have been built first:

    cargo build --release -p curvecount-py

Copies the produced shared library into a temporary directory under the
importable name and checks a handful of known values end to end.
"""

import pathlib
import shutil
import sys
import tempfile

ROOT = pathlib.Path(__file__).resolve().parents[1]


def locate_library() -> pathlib.Path:
    for profile in ("release", "debug"):
        so = ROOT / "target" / profile / "libcurvecount_py.so"
        if so.exists():
            return so
    sys.exit("build the bindings first: cargo build --release -p curvecount-py")


def main() -> None:
    so = locate_library()
    with tempfile.TemporaryDirectory() as tmp:
        shutil.copy2(so, pathlib.Path(tmp) / "curvecount_py.so")
        sys.path.insert(0, tmp)
        import curvecount_py as cc

        # Field arithmetic in F_9 through integer encodings.
        f9 = cc.Field(3, 2)
        assert f9.size() == 9 and f9.characteristic() == 3
        assert f9.extension_degree() == 2
        x = f9.generator()
        assert f9.pow(x, 8) == f9.element(1)
        assert f9.mul(x, f9.inv(x)) == f9.element(1)
        assert f9.dlog(x) == 1

        # Traces of Frobenius.
        assert cc.trace(19, 1, 0, 0, 2) == 7
        assert cc.trace(41, 1, 4, -1, 0) == -10

        # Closed-form counts, and the oracle agreeing with them.
        assert cc.count("y2-sextic-even", [2, 0, 0, 1], 29) == [(None, 31)]
        assert cc.count("y2-sextic-even", [2, 0, 0, 1], 29, n=2) == [(None, 957)]
        assert cc.oracle_count("y2-sextic-even", [2, 0, 0, 1], 29, n=2) == [(None, 957)]
        assert cc.count("y3-linear-quad", [3, -1, 2, 2], 37) == [("c1", 48), ("c2", 46)]
        assert cc.count("y3-sextic", [1, 1], 103) == [(None, 148)]
        assert cc.count("quartic-pair-c1", [1, 1, 1, 1, 0, 1], 13, char_order=3) == [
            (None, 11)
        ]

        # Maximal-curve classification, predicted and certified.
        assert cc.classify(3, 5, 1, 1, 1) == "Maximal"
        report = cc.certify(3, 5, 1, 1, 1)
        assert report["verdict"] == "Maximal"
        assert report["count"] == 36
        assert report["agrees"] is True
        assert report["over"] == (5, 2)

        # Hypothesis violations raise ValueError.
        for bad in (
            lambda: cc.trace(4, 1, 0, 0, 1),
            lambda: cc.count("y3-cubic", [1, 1], 5),
            lambda: cc.count("no-such-family", [1], 5),
            lambda: cc.Field(7).inv(0),
        ):
            try:
                bad()
            except ValueError:
                pass
            else:
                raise AssertionError("expected ValueError")

    print("smoke test passed")


if __name__ == "__main__":
    main()
