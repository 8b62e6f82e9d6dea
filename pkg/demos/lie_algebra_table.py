"""Lie algebras of the groups as sums of grade subspaces.

Prints each subspace, its closed-form dimension next to a blade count, and
confirms closure under the commutator for n <= 8.

    python3 demos/lie_algebra_table.py
"""

from cliffgroups import Signature
from cliffgroups.lie import TABLE1_GROUPS, closure_check, lie_spec
from cliffgroups.verify import render_table1, table1_report


def main():
    print(render_table1(table1_report(8)))
    print()
    for n in range(1, 9):
        sig = Signature(n, 0)
        bad = [g.name for g in TABLE1_GROUPS if not closure_check(lie_spec(g, sig).spec, sig)]
        print(f"n = {n}: closed under [x, y]: {'all rows' if not bad else ', '.join(bad) + ' FAIL'}")


if __name__ == "__main__":
    main()
