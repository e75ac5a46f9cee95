#!/usr/bin/env python3
"""Scan the built-in systems for rigidity certificates.

For each system (and each available two-element action) this prints the
dimension of the equivariant degree-3 cohomology and whether the
sufficient rigidity criterion applies.  Systems whose degree-5 spaces
exceed the default caps are skipped with a note.
"""

import time

from ltsdeform.caps import CapExceeded
from ltsdeform.deformation import rigidity_certificate
from ltsdeform.groups import make_group_action, sign_action, trivial_action
from ltsdeform.linalg import Matrix
from ltsdeform.lts import (from_lie_algebra, function_lts, matrix_lts, meson,
                           rect_lts, skew_lts, sl2_brackets, sym_lts)


def swap_on_meson2():
    t2 = meson(2)
    return t2, make_group_action(t2, [("0", Matrix.identity(2)),
                                      ("1", Matrix([[0, 1], [1, 0]]))])


def cases():
    t2, swap = swap_on_meson2()
    yield "meson(2) / trivial", t2, trivial_action(t2)
    yield "meson(2) / swap", t2, swap
    yield "meson(1) / trivial", meson(1), None
    yield "meson(3) / sign", meson(3), "sign"
    sk3 = skew_lts(3)
    yield "skew(3) / trivial", sk3, None
    yield "skew(3) / sign", sk3, "sign"
    yield "sym(2) / sign", sym_lts(2), "sign"
    yield "sl2 / trivial", from_lie_algebra(sl2_brackets()), None
    yield "matrix(2) / trivial", matrix_lts(2), None
    yield "rect(2,2) / trivial", rect_lts(2, 2), None
    yield "meson(2)^3 / trivial", function_lts(meson(2), 3), None


def main():
    for label, system, action in cases():
        if action is None:
            action = trivial_action(system)
        elif action == "sign":
            action = sign_action(system)
        start = time.monotonic()
        try:
            rep = rigidity_certificate(system, action)
        except CapExceeded as exc:
            print("%-24s skipped (%s)" % (label, exc))
            continue
        verdict = "RIGID" if rep.rigid else "inconclusive"
        print("%-24s dim H^3_G = %-3d %-13s (%.2fs)"
              % (label, rep.dim_h3_equivariant, verdict, time.monotonic() - start))


if __name__ == "__main__":
    main()
