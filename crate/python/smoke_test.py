"""Smoke test for the `nearring` extension module.

Run after `cargo build -p nearring-python`:

    python3 python/smoke_test.py [path/to/libnearring.so]
"""

import importlib.util
import json
import shutil
import sys
import tempfile
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent


def load(library: Path):
    staging = Path(tempfile.mkdtemp())
    target = staging / "nearring.so"
    shutil.copy(library, target)
    spec = importlib.util.spec_from_file_location("nearring", target)
    module = importlib.util.module_from_spec(spec)
    spec.loader.exec_module(module)
    return module


def main() -> int:
    library = Path(sys.argv[1]) if len(sys.argv) > 1 else ROOT / "target" / "debug" / "libnearring.so"
    nr = load(library)

    z9 = nr.Nearring.ferrero("C9", ["neg"], [2, 3, 5, 8], [3])
    assert z9.order == 9 and len(z9) == 9
    assert z9.distributive_elements() == [0, 3, 6]
    assert z9.zero_multipliers() == [0, 3, 6]
    assert z9.generalized_centre() == ([0, 3, 6], 1)
    assert z9.ideal_status([0, 3, 6]) == "two-sided"
    assert z9.is_planar()
    assert all(status != "fail" for _, status, _ in z9.verify_lemmas())
    design = z9.block_design()
    assert design["v"] == 9 and not design["balanced"]

    again = nr.Nearring.from_document(z9.to_document())
    assert again.mul_table() == z9.mul_table()
    assert again.isomorphism(z9) is not None

    o15 = nr.Nearring.ferrero("C3xC5", ["neg"], [1, 2, 5, 6, 7, 8, 9], [1, 2])
    assert o15.generalized_centre() == ([0, 5, 10], 3)
    assert o15.right_identities() == [5, 6, 7, 8, 9]

    dickson = nr.Nearfield("dickson9")
    assert not dickson.is_field() and dickson.order == 9
    field_nr = nr.Nearring.from_nearfield(nr.Nearfield("7"))
    assert field_nr.distributive_elements() == list(range(7))
    assert nr.Nearring.zp2(5).distributive_elements() == [0, 5, 10, 15, 20]

    space = nr.NearvectorSpace("5", ["id", "map:0,1,3,2,4"])
    assert space.order == 25 and space.dimension == 2
    assert len(space.quasi_kernel()) == 9
    assert space.regular_decomposition() == [[0], [1]]
    assert space.coordinates(space.vector([2, 3])) == [2, 3]
    derived = space.derived_nearring(0)
    assert len(derived.distributive_elements()) == 5
    assert nr.NearvectorSpace(dickson, "id,id").order == 81

    classes = nr.enumerate(15, "nontrivial-distributive")
    assert len(classes) == 12
    assert [c.order for c in classes][:3] == [3, 4, 5]
    manifest = json.loads(nr.manifest_json(9))
    assert manifest["class_count"] == len(nr.enumerate(9))

    for bad in (
        lambda: nr.Nearring.ferrero("C9", ["neg"], [1, 2]),
        lambda: nr.Nearfield("6"),
        lambda: nr.NearvectorSpace("5", ["id", "map:0,2,1,3,4"]),
        lambda: nr.enumerate(5, "bogus"),
        lambda: z9.mul(0, 9),
    ):
        try:
            bad()
        except ValueError:
            pass
        else:
            raise AssertionError("expected ValueError")
    assert issubclass(nr.TheoremViolation, Exception)

    print("python smoke test: ok")
    return 0


if __name__ == "__main__":
    sys.exit(main())
