#!/usr/bin/env python3
"""Regenerate the bundled example documents under src/ltsdeform/data/.

Every builder example ships as a system document; the two-element actions
(swap on the meson plane, global sign on skew matrices, transposition on
square matrices) ship as action documents; the worked order-2 deformation
of the meson plane ships together with the trivial deformation for
comparison runs.
"""

from pathlib import Path

from ltsdeform.documents import (action_to_document, deformation_to_document,
                                 dump_document, system_to_document)
from ltsdeform.groups import make_group_action, sign_action, transpose_action_on_rect
from ltsdeform.linalg import Matrix
from ltsdeform.lts import (StructureTensor, from_lie_algebra, function_lts,
                           matrix_lts, meson, rect_lts, skew_lts, sl2_brackets,
                           sym_lts)

DATA = Path(__file__).resolve().parents[1] / "src" / "ltsdeform" / "data"


def write(name, doc):
    path = DATA / name
    path.write_text(dump_document(doc))
    print("wrote", path)


def main():
    DATA.mkdir(parents=True, exist_ok=True)

    systems = {
        "meson1.json": meson(1),
        "meson2.json": meson(2),
        "meson3.json": meson(3),
        "meson4.json": meson(4),
        "matrix2.json": matrix_lts(2),
        "skew3.json": skew_lts(3),
        "sym2.json": sym_lts(2),
        "rect22.json": rect_lts(2, 2),
        "sl2.json": from_lie_algebra(sl2_brackets(), names=["e", "f", "h"]),
        "meson2x3.json": function_lts(meson(2), 3),
    }
    for name, system in systems.items():
        write(name, system_to_document(system))

    t2 = systems["meson2.json"]
    swap = make_group_action(t2, [("0", Matrix.identity(2)),
                                  ("1", Matrix([[0, 1], [1, 0]]))])
    write("meson2_swap.json", action_to_document(swap))

    write("skew3_sign.json", action_to_document(sign_action(systems["skew3.json"])))

    _, transp = transpose_action_on_rect(2)
    write("rect22_transpose.json", action_to_document(transp))

    def mu2_coeffs(i, j, p):
        vec = [0, 0]
        if j == p:
            vec[j] += 1
        if i == p:
            vec[i] -= 1
        return vec

    mu2 = StructureTensor.from_map(mu2_coeffs, (2, 2, 2), 2)
    write("meson2_swap_t2.json",
          deformation_to_document("meson2.json", "meson2_swap.json",
                                  [(1, StructureTensor.zero((2, 2, 2), 2)), (2, mu2)],
                                  t2.field))
    write("meson2_swap_trivial.json",
          deformation_to_document("meson2.json", "meson2_swap.json", [], t2.field))


if __name__ == "__main__":
    main()
