"""Smoke test for the `linkset` Python extension.

Build the extension and put it on the path, e.g.

    cargo build --release -p linkset-py --features extension-module
    cp target/release/liblinkset.so python/linkset.so
    python3 python/smoke_test.py
"""

import json
import sys

import linkset

TRIPLE = [
    ["x", "x^3*y", "y^3", "x^3", "x*y^3", "y"],
    ["x", "x^3*y", "y^3", "x*y^2", "x*y", "x^2*y"],
    ["x", "x^3*y", "y^3", "x^2*y^3", "x^3*y^3", "x^3*y^2"],
]


def main():
    g = linkset.Group.abelian([4, 4], ["x", "y"])
    assert g.order == 16 and g.is_abelian and g.exponent == 4
    assert g.difference_set_params(TRIPLE[0]) == (16, 6, 2, 4)

    sys3 = linkset.verify_reduced(g, TRIPLE)
    assert sys3 is not None and len(sys3) == 3
    assert (sys3.mu, sys3.nu) == (1, 3)
    assert sys3.reversibility_profile() == [True, False, False]
    assert sorted(sys3.witness(2, 1)) == sorted(["y^3", "x", "x^2*y^3", "x^3*y", "x^3*y^2", "x^3*y^3"])
    assert sys3.verify_full()

    broken = [TRIPLE[0], TRIPLE[1], TRIPLE[0][:5] + ["x^2"]]
    assert linkset.verify_reduced(g, broken) is None

    text = sys3.to_json()
    again = linkset.LinkingSystem.from_json(text)
    assert again.sets() == sys3.sets()
    doc = json.loads(text)
    doc["mu"] = 2
    try:
        linkset.LinkingSystem.from_json(json.dumps(doc))
    except linkset.VerificationError:
        pass
    else:
        raise AssertionError("tampered certificate accepted")

    improved = linkset.build_improved(linkset.Group('{"abelian":[4,4,4]}'))
    assert len(improved) == 7 and improved.params == (64, 28, 12, 16)
    general = linkset.build_general(linkset.Group.abelian([8, 2, 2, 2]))
    assert len(general) == 3
    d4 = linkset.build_tyken(2, linkset.Group.abelian([2, 2, 2]))
    assert len(d4) == 7 and not d4.group.is_abelian
    nonrev = linkset.build_nonreversible(1)
    assert not nonrev.reversibility_profile()[0]
    assert len(nonrev.complement()) == 3

    bent = linkset.kerdock_bent_set(1)
    assert len(bent) == 8 and linkset.is_bent_set(4, bent)
    assert all(linkset.is_bent(4, f) for f in bent if int(f, 16) != 0)
    assert len(linkset.bent_linking(4, bent)) == 7

    try:
        linkset.build_general(linkset.Group.abelian([8, 8]))
    except ValueError:
        pass
    else:
        raise AssertionError("impossible build succeeded")

    census = linkset.census_z42()
    assert census["difference_sets"] == 192
    assert census["system_count"] == 65536
    assert census["max_system_size"] == 3

    print(f"linkset {linkset.__version__}: python smoke test passed")
    return 0


if __name__ == "__main__":
    sys.exit(main())
