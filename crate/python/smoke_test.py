#!/usr/bin/env python3
"""Smoke test for the sl2tilt_py extension module.

Build the module first with `cargo build -p sl2tilt-py` (or `--release`);
this script locates the cdylib in target/, exposes it under the importable
name sl2tilt_py, and exercises the main types and operations.
"""

import json
import shutil
import sys
import sysconfig
import tempfile
from pathlib import Path

REPO = Path(__file__).resolve().parent.parent


def import_module():
    try:
        import sl2tilt_py  # already installed

        return sl2tilt_py
    except ImportError:
        pass
    suffix = sysconfig.get_config_var("EXT_SUFFIX") or ".so"
    for profile in ("release", "debug"):
        built = REPO / "target" / profile / "libsl2tilt_py.so"
        if built.exists():
            stage = Path(tempfile.mkdtemp(prefix="sl2tilt_py_"))
            shutil.copy2(built, stage / f"sl2tilt_py{suffix}")
            sys.path.insert(0, str(stage))
            import sl2tilt_py

            return sl2tilt_py
    sys.exit("cdylib not found; run `cargo build -p sl2tilt-py` first")


def main():
    m = import_module()

    # Parameters and validation.
    params = m.Params(3, 2)
    assert (params.p, params.n, params.q, params.modulus) == (3, 2, 9, 8)
    try:
        m.Params(4, 2)
    except ValueError:
        pass
    else:
        raise AssertionError("p = 4 should be rejected")

    # Symbols: canonicalization identifies the rim rewrite of Omega M_7.
    om = m.Symbol(params, 7, u=3, omega=1)
    assert om == om.canonicalize()
    assert om.tensor_u(5).tensor_u(-5) == om
    assert "M_" in om.shorthand()

    # Tilt run: the final row of the even block is U_1 M_(a').
    text = m.tilt_text(params, "even")
    assert "_1 M_3" in text, text
    doc = json.loads(m.tilt_json(params, "even"))
    assert doc["p"] == 3 and doc["block"] == "even"
    assert m.verify(params, "even") and m.verify(params, "odd")

    # Hom/Ext counting formulas.
    assert m.stable_hom_dim(params, 0, 4, 3, 7) == 1
    assert m.ext1_dim(params, 0, 8, 0, 0) == 0  # Steinberg is projective

    # Frobenius perversity data for the worked example S_77 in SL2(3^6).
    big = m.Params(3, 6)
    row = m.frobenius_data(big, 77)
    assert row["z"] == [5, 5, 3, 4, 5, 4]
    assert row["lambda"] == [3, 2, 1, 0, 0, 0]
    assert row["phi"] == -18
    assert row["total_omega"] % (big.q - 1) == row["phi"] % (big.q - 1)

    # Golden fixtures replay cleanly through the bindings too.
    names = m.fixture_names()
    assert "table_1a" in names
    for name in names:
        m.check_fixture(name)

    print(f"smoke test passed ({len(names)} fixtures, params {params!r})")


if __name__ == "__main__":
    main()
