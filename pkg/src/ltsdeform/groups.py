"""Finite group actions on a Lie triple system by bracket-preserving
linear automorphisms.

Groups are given by explicit element lists (label, matrix); closure,
identity, invertibility and equivariance of the bracket are all validated
by exhaustive exact comparison.  Invariant subspaces of cochain ambients
are computed as stacked nullspaces, which is valid in every characteristic;
the Reynolds averaging projector is provided as a cross-check when the
characteristic permits.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .caps import DEFAULT_CAPS
from .linalg import Matrix, rank, rref_rows, nullspace_from_rref
from .tensorops import transform_dense, transform_sparse


class GroupActionError(ValueError):
    """The element list fails the group axioms or equivariance."""


@dataclass(frozen=True)
class GroupAction:
    system: object
    labels: tuple
    matrices: tuple
    identity_index: int
    mult_table: tuple
    inverses: tuple

    @property
    def size(self):
        return len(self.matrices)

    def inverse_matrix(self, g):
        return self.matrices[self.inverses[g]]


@dataclass(frozen=True)
class ModuleAction:
    """Action on a coefficient module, aligned with the group element list."""

    module: object
    matrices: tuple
    verified: tuple  # which of the three module actions were checked equivariant


def make_group_action(system, elements, caps=DEFAULT_CAPS):
    """Validate (label, matrix) pairs as a group acting on the system.

    Checks, in order: shapes, duplicate elements, invertibility, closure
    (building the multiplication table), presence of the identity, and
    equivariance of the bracket under every element.
    """
    labels = tuple(lab for lab, _ in elements)
    mats = tuple(m for _, m in elements)
    n = len(mats)
    if n == 0:
        raise GroupActionError("empty element list")
    caps.check_group(n)
    d = system.dim
    for lab, m in zip(labels, mats):
        if m.nrows != d or m.ncols != d:
            raise GroupActionError("element %r is %dx%d, expected %dx%d"
                                   % (lab, m.nrows, m.ncols, d, d))
    if len(set(labels)) != n:
        raise GroupActionError("duplicate labels in element list")
    for i in range(n):
        for j in range(i + 1, n):
            if mats[i] == mats[j]:
                raise GroupActionError("duplicate element matrices %r and %r"
                                       % (labels[i], labels[j]))
    for lab, m in zip(labels, mats):
        if rank(m) != d:
            raise GroupActionError("element %r is not invertible" % (lab,))

    table = []
    for i in range(n):
        row = []
        for j in range(n):
            prod_m = mats[i] * mats[j]
            for k in range(n):
                if prod_m == mats[k]:
                    row.append(k)
                    break
            else:
                raise GroupActionError("not closed under product: %r * %r is not "
                                       "an element" % (labels[i], labels[j]))
        table.append(tuple(row))

    ident = Matrix.identity(d, system.field)
    identity_index = None
    for k in range(n):
        if mats[k] == ident:
            identity_index = k
            break
    if identity_index is None:
        raise GroupActionError("identity matrix missing from element list")

    inverses = []
    for i in range(n):
        for j in range(n):
            if table[i][j] == identity_index:
                inverses.append(j)
                break
        else:
            raise GroupActionError("element %r has no inverse in the list" % (labels[i],))

    mu = system.mu
    for g, (lab, m) in enumerate(zip(labels, mats)):
        gcols = [m.column(j) for j in range(d)]
        for a, b, c in product(range(d), repeat=3):
            lhs = mu.evaluate(gcols[a], gcols[b], gcols[c])
            rhs = m.apply(list(mu.basis_value(a, b, c)))
            if lhs != rhs:
                raise GroupActionError(
                    "bracket is not equivariant under element %r at basis triple "
                    "(%d, %d, %d)" % (lab, a, b, c))

    return GroupAction(system, labels, mats, identity_index,
                       tuple(table), tuple(inverses))


def trivial_action(system):
    return make_group_action(system, [("e", Matrix.identity(system.dim, system.field))])


def sign_action(system):
    """The two-element action {I, -I}; equivariant on any Lts by trilinearity."""
    d = system.dim
    one = Matrix.identity(d, system.field)
    return make_group_action(system, [("0", one), ("1", one.scale(-system.field.one))])


def transpose_action_on_rect(p, fld=None):
    """The two-element action on square-matrix rect_lts(p, p) by transposition."""
    from .lts import rect_lts
    from .linalg import QQ

    fld = QQ if fld is None else fld
    system = rect_lts(p, p, fld)
    d = p * p
    z, one = fld.zero, fld.one
    rows = [[z] * d for _ in range(d)]
    for i in range(p):
        for j in range(p):
            rows[j * p + i][i * p + j] = one
    swap = Matrix(rows, fld, copy=False)
    action = make_group_action(system, [("0", Matrix.identity(d, fld)), ("1", swap)])
    return system, action


def self_module_action(action, module):
    """The module action on the self-module, reusing the element matrices."""
    return make_module_action(action, module, list(action.matrices))


def make_module_action(action, module, matrices):
    """Validate that the three module actions are equivariant for the group."""
    m = module.dim
    mats = tuple(matrices)
    if len(mats) != action.size:
        raise GroupActionError("module matrices must align with the element list")
    for lab, vm in zip(action.labels, mats):
        if vm.nrows != m or vm.ncols != m:
            raise GroupActionError("module matrix for %r is %dx%d, expected %dx%d"
                                   % (lab, vm.nrows, vm.ncols, m, m))
        if rank(vm) != m:
            raise GroupActionError("module matrix for %r is not invertible" % (lab,))
    d = module.system.dim
    checked = []
    for name, tensor in (("left", module.left), ("right", module.right),
                         ("middle", module.middle)):
        for lab, gm, vm in zip(action.labels, action.matrices, mats):
            gcols = [gm.column(j) for j in range(d)]
            vcols = [vm.column(w) for w in range(m)]
            for a, b, w in product(range(d), range(d), range(m)):
                lhs = tensor.evaluate(gcols[a], gcols[b], vcols[w])
                rhs = vm.apply(list(tensor.basis_value(a, b, w)))
                if lhs != rhs:
                    raise GroupActionError(
                        "module action %s is not equivariant under %r at (%d, %d, %d)"
                        % (name, lab, a, b, w))
        checked.append(name)
    return ModuleAction(module, mats, tuple(checked))


# ---------------------------------------------------------------------------
# induced action on cochain ambients


def apply_group_dense(action, module_action, g, degree, data):
    """Apply element g to a flat degree-cochain coefficient list."""
    d = action.system.dim
    m = module_action.module.dim
    ginv = action.inverse_matrix(g).rows
    gv = module_action.matrices[g].rows
    return transform_dense(data, degree, d, m, ginv, gv)


def apply_group_sparse(action, module_action, g, degree, entries):
    d = action.system.dim
    m = module_action.module.dim
    ginv = action.inverse_matrix(g).rows
    gv = module_action.matrices[g].rows
    return transform_sparse(entries, degree, d, m, ginv, gv)


def action_on_cochain_ambient(action, module_action, degree, caps=DEFAULT_CAPS):
    """Dense matrices of c -> g o c o (g^{-1})^(tensor degree) on the ambient
    space of degree-cochains, one per group element.

    A cochain is invariant exactly when it is fixed by every one of these.
    """
    if degree < 1 or degree % 2 == 0:
        raise GroupActionError("cochain degree must be odd and >= 1")
    caps.check_degree(degree)
    d = action.system.dim
    m = module_action.module.dim
    ambient = d ** degree * m
    caps.check_ambient(ambient * ambient, what="ambient action matrix")
    out = []
    fld = action.system.field
    z = fld.zero
    for g in range(action.size):
        cols = []
        for pos in range(ambient):
            res = apply_group_sparse(action, module_action, g, degree, {pos: fld.one})
            col = [z] * ambient
            for key, v in res.items():
                col[key] = v
            cols.append(col)
        out.append(Matrix.from_columns(cols, ambient, fld))
    return out


def invariant_subspace(ambient_actions, fld):
    """Basis of the simultaneous fixed space of the given ambient matrices,
    as the nullspace of the stacked (rho(g) - I) blocks."""
    if not ambient_actions:
        raise GroupActionError("need at least one ambient action matrix")
    n = ambient_actions[0].ncols
    rows = []
    for mat in ambient_actions:
        for i, row in enumerate(mat.rows):
            r = {j: v for j, v in enumerate(row) if v}
            cur = r.get(i, None)
            if cur is None:
                r[i] = -fld.one
            else:
                cur = cur - fld.one
                if cur:
                    r[i] = cur
                else:
                    del r[i]
            if r:
                rows.append(r)
    pivots = rref_rows(rows, fld)
    cols, _ = nullspace_from_rref(pivots, n, fld)
    z = fld.zero
    dense = []
    for col in cols:
        v = [z] * n
        for i, val in col.items():
            v[i] = val
        dense.append(v)
    return Matrix.from_columns(dense, n, fld)


def reynolds_project(action, module_action, degree, data):
    """Group-average a cochain: (1/|G|) sum_g rho(g) c.

    Accepts a flat coefficient list or a cochain object and returns the same
    kind.  Requires the field characteristic not to divide the group order.
    """
    fld = action.system.field
    n = action.size
    if fld.char and n % fld.char == 0:
        raise GroupActionError("characteristic %d divides the group order %d"
                               % (fld.char, n))
    wrap = None
    if hasattr(data, "data"):
        wrap, data = data, list(data.data)
    acc = [fld.zero] * len(data)
    for g in range(n):
        moved = apply_group_dense(action, module_action, g, degree, data)
        acc = [a + b for a, b in zip(acc, moved)]
    inv = fld.div(fld.one, fld(n))
    out = [inv * a for a in acc]
    if wrap is not None:
        return type(wrap).build(wrap.degree, wrap.dim, wrap.mdim, out)
    return out
