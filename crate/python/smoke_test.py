"""Build the extension module and exercise it from Python.

    python3 python/smoke_test.py
"""

import importlib
import pathlib
import shutil
import subprocess
import sys
import tempfile
from fractions import Fraction

ROOT = pathlib.Path(__file__).resolve().parent.parent


def build():
    subprocess.run(
        ["cargo", "build", "--release", "-p", "lg-periods-py", "--features", "extension-module"],
        cwd=ROOT,
        check=True,
    )
    built = ROOT / "target" / "release" / "liblgperiods.so"
    dest = pathlib.Path(tempfile.mkdtemp())
    shutil.copy(built, dest / "lgperiods.so")
    sys.path.insert(0, str(dest))
    return importlib.import_module("lgperiods")


def main():
    lg = build()

    p2 = lg.LaurentPolynomial("x + y + x^-1*y^-1")
    assert p2.rank == 2 and len(p2) == 3
    assert str(p2) == "x + y + x^-1*y^-1"
    assert p2.period(6) == [1, 0, 0, 6, 0, 0, 90]
    assert lg.classical_period("x + x^-1", 4) == [1, 0, 2, 0, 6]
    assert lg.classical_period("1/2*x + x^-1", 2)[2] == Fraction(1)

    square = lg.LaurentPolynomial("(1+x)^2")
    assert str(square) == "x^2 + 2*x + 1"
    assert square == lg.LaurentPolynomial("1 + x") ** 2
    assert (p2 - p2) == lg.LaurentPolynomial("0", 2)

    assert lg.verify("P2", 9) and lg.verify("P1xP1", 8)
    assert lg.multinomial(6, [2, 2, 2]) == 90
    assert lg.enumerate_s_partitions(2, 2) == [[0, 2], [1, 1], [2, 0]]

    f = lg.LaurentPolynomial("y + x*y + y^-1")
    g = lg.mutate(f, [0, -1], lg.LaurentPolynomial("1 + x"))
    assert str(g) == "y + x*y^-1 + y^-1"
    assert g.period(8) == f.period(8)
    assert lg.mutate(p2, [0, 1], lg.LaurentPolynomial("1 + x")) is None

    try:
        lg.LaurentPolynomial("x +")
    except ValueError as e:
        assert "byte 3" in str(e)
    else:
        raise AssertionError("parse error expected")

    print("python smoke test passed")


if __name__ == "__main__":
    main()
