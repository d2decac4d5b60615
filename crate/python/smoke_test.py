"""Smoke test for the cascade_lab_py extension.

Build and install with `pip install ./crates/cascade-lab-py --no-build-isolation`
(needs maturin), then run `python python/smoke_test.py`.
"""

import json

import cascade_lab_py as cl


def main():
    d6 = cl.Flag("D6")
    assert d6.count_greedy() == 30
    assert d6.d_x() == [2, 2, 4, 4, 3, 3]

    p2 = cl.Flag("A2", [2])
    assert p2.label == "A2/P={2}" and p2.dim == 2
    assert p2.minimal_degrees() == [[0], [1]]
    assert p2.lifting([1]) == [1, 1]
    assert p2.z([1]) == "s2*s1"
    cert = json.loads(p2.certificate([1]))
    assert (cert["lhs"], cert["td_card"], cert["dim_moduli"]) == (1, 1, 5)

    d4 = cl.Flag("D4")
    assert sorted(d4.cascade(d4.d_x())) == [[0, 0, 0, 1], [0, 0, 1, 0], [1, 0, 0, 0], [1, 2, 1, 1]]
    sigma = json.loads(cl.Flag("D4", [2]).certificate([2, 2, 2]))["sigma"]
    assert sigma == -2

    assert cl.weyl_order("E8") == 696729600
    assert [r[2] for r in cl.golden_counts()] == ["1", "6", "3", "30", "15", "210"]

    report = json.loads(cl.verify("A2"))
    assert report["summary"]["ok"]

    for bad in (lambda: cl.Flag("Z9"), lambda: cl.Flag("A2", [3]), lambda: p2.z([1, 1]), lambda: p2.lifting([2])):
        try:
            bad()
        except ValueError:
            pass
        else:
            raise AssertionError("expected ValueError")

    print("python smoke test ok")


if __name__ == "__main__":
    main()
