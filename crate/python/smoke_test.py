"""Smoke test for the msod extension module.

Build and install first:

    pip install --no-build-isolation ./crates/py
"""

import json

import msod


def main():
    p2 = msod.ActionSpec.preset("p2-example")
    assert p2.rank == 2 and p2.order == 4 and p2.num_coords == 3
    assert p2.is_effective

    # same spec from a document
    same = msod.ActionSpec.from_json(p2.to_json())
    assert msod.labels(same) == msod.labels(p2)

    comps = msod.components(p2)
    assert len(comps) == 7
    assert sum(c["rank"] for c in comps) == 12

    report = msod.sod(p2)
    assert report["total_rank"] == 12
    assert msod.labels(p2)[0] == "P^2{x,y,z}@(0,0)"

    plan, grouped = msod.plan(p2)
    assert [m["block"] for m in plan["moves"]] == [4, 3, 5]
    assert grouped[1:3] == ["P^1{y,z}@(1,0)", "pt{x}@(1,0)"]

    g = msod.gram(p2)
    assert len(g) == 12
    assert all(g[i][i] == 1 for i in range(12))
    assert all(g[i][j] == 0 for i in range(12) for j in range(i))

    seq = msod.ExceptionalSequence.from_spec(p2)
    for block in (4, 3, 5):
        seq, orthogonal = seq.move_block(block, "left")
        assert not orthogonal
    assert seq.is_semiorthogonal()
    assert abs(seq.determinant()) == 1
    assert seq.block_labels == grouped

    small = msod.ExceptionalSequence([[1, 2], [0, 1]])
    left = small.mutate_left(1)
    assert left.vectors == [[-2, 1], [1, 0]]
    assert left.mutate_right(0) == small
    assert msod.ExceptionalSequence.from_json(left.to_json()) == left

    quadric = msod.ActionSpec.preset("quadric", q_dim=2)
    total, order = msod.burnside(quadric)
    assert total // order == msod.total_rank(quadric) == 17

    passed, checks = msod.run_checks("etale")
    assert passed and len(checks) == 28

    try:
        msod.ActionSpec("affine", 3, [[1, 0, 0, 1]])
    except ValueError:
        pass
    else:
        raise AssertionError("malformed action accepted")

    print(json.dumps({"pieces": len(comps), "total_rank": report["total_rank"], "grouped": grouped}))
    print("smoke test passed")


if __name__ == "__main__":
    main()
