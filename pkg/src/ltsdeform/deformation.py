"""Truncated equivariant formal deformations of a Lie triple system.

A deformation of order n is a coefficient list mu_0, ..., mu_n of
equivariant trilinear maps (mu_0 the original bracket) read modulo
t^(n+1): each term must satisfy the degree-3 cochain conditions, and the
order-r compatibility equations

    sum_{i+j=r} mu_i(a, b, mu_j(c, d, e))
      = sum_{i+j=r} { mu_i(mu_j(a,b,c), d, e) + mu_i(c, mu_j(a,b,d), e)
                      + mu_i(c, d, mu_j(a,b,e)) }

must hold for 0 <= r <= n (r = 0 is the fundamental identity itself).
The module covers the whole deformation pipeline: validation,
infinitesimals, the degree-5 obstruction cochain, order-by-order
extension, gauge transformations by truncated formal isomorphisms,
equivalence testing, trivialization, and the rigidity certificate.

All linear solves for gauge terms and extensions are restricted to the
invariant subcomplex, with the canonical echelon solution (free variables
zero), so results are deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .caps import DEFAULT_CAPS, CapExceeded
from .cohomology import (Cochain, apply_coboundary, coboundary_matrix,
                         cochain_space_basis, cochain_to_tensor,
                         cochain_violations, cohomology, tensor_to_cochain)
from .groups import apply_group_dense, self_module_action
from .linalg import Matrix, solve
from .lts import StructureTensor, self_module


class DeformationError(ValueError):
    """Invalid deformation data (wrong leading term, bad cochain, not equivariant)."""


@dataclass(frozen=True)
class TruncatedDeformation:
    system: object
    action: object
    terms: tuple

    @property
    def order(self):
        return len(self.terms) - 1

    def term(self, i):
        """mu_i, with zero padding above the stated order."""
        if i <= self.order:
            return self.terms[i]
        d = self.system.dim
        return StructureTensor.zero((d, d, d), d, self.system.field)


@dataclass(frozen=True)
class FormalIsomorphism:
    """Truncated gauge transformation psi_0 = id, psi_1, ..., psi_N."""

    terms: tuple

    @property
    def order(self):
        return len(self.terms) - 1

    def term(self, i):
        if i <= self.order:
            return self.terms[i]
        n = self.terms[0].nrows
        return Matrix.zero(n, n, self.terms[0].field)

    def inverse_terms(self, through):
        """Coefficients of the inverse series: phi_0 = id,
        phi_k = -sum_{i=1..k} psi_i phi_{k-i}."""
        phis = [self.terms[0]]
        for k in range(1, through + 1):
            acc = Matrix.zero(self.terms[0].nrows, self.terms[0].nrows,
                              self.terms[0].field)
            for i in range(1, k + 1):
                psi = self.term(i)
                if not psi.is_zero():
                    acc = acc + psi * phis[k - i]
            phis.append(acc.scale(-self.terms[0].field.one))
        return phis


@dataclass(frozen=True)
class OrderCheck:
    order: int
    passed: bool
    witness: tuple = None
    residual: tuple = None


@dataclass(frozen=True)
class DeformationReport:
    passed: bool
    orders: tuple


@dataclass(frozen=True)
class ObstructionResult:
    cochain: Cochain
    is_cocycle: bool  # None when the degree-7 check exceeded the caps
    preimage: Cochain


@dataclass(frozen=True)
class EquivalenceResult:
    isomorphism: FormalIsomorphism
    obstructed_order: int = None
    witness: Cochain = None
    plain_solvable: bool = None  # diagnostic: would the step solve without equivariance?

    @property
    def equivalent(self):
        return self.isomorphism is not None


@dataclass(frozen=True)
class RigidityReport:
    dim_h3_equivariant: int
    rigid: bool

    @property
    def conclusion(self):
        if self.rigid:
            return "rigid (sufficient condition met: equivariant H^3 = 0)"
        return ("inconclusive: equivariant H^3 has dimension %d "
                "(criterion certifies rigidity only when it vanishes)"
                % self.dim_h3_equivariant)


# ---------------------------------------------------------------------------
# construction and validation


def _check_term_is_cochain(tensor, index):
    report = cochain_violations(tensor_to_cochain(tensor))
    if not report.passed:
        v = report.violations[0]
        raise DeformationError(
            "term %d violates the degree-3 cochain conditions: %s at %r"
            % (index, v.axiom, v.witness))


def _check_term_equivariant(system, action, tensor, index):
    d = system.dim
    for g, (lab, m) in enumerate(zip(action.labels, action.matrices)):
        gcols = [m.column(j) for j in range(d)]
        for a, b, c in product(range(d), repeat=3):
            lhs = tensor.evaluate(gcols[a], gcols[b], gcols[c])
            rhs = m.apply(list(tensor.basis_value(a, b, c)))
            if lhs != rhs:
                raise DeformationError(
                    "term %d is not equivariant under element %r at basis "
                    "triple (%d, %d, %d)" % (index, lab, a, b, c))


def make_deformation(system, action, terms):
    """Validate the term list as an order-(len-1) deformation candidate.

    Checks the leading term, the degree-3 cochain conditions and
    equivariance of every term.  The order-r compatibility equations are
    checked separately (check_deformation_equations) so that invalid
    candidates can still be constructed and inspected.
    """
    terms = tuple(terms)
    if not terms:
        raise DeformationError("a deformation needs at least the order-0 term")
    if terms[0] != system.mu:
        raise DeformationError("term 0 must be the system's own bracket")
    d = system.dim
    for i, t in enumerate(terms):
        if t.dims != (d, d, d) or t.dim_out != d:
            raise DeformationError("term %d has shape %r, expected the bracket shape"
                                   % (i, (t.dims, t.dim_out)))
        if i > 0:
            _check_term_is_cochain(t, i)
        _check_term_equivariant(system, action, t, i)
    return TruncatedDeformation(system, action, terms)


def pad_deformation(defo, order):
    """Zero-pad the term list up to the requested order."""
    if order < defo.order:
        raise DeformationError("cannot pad below the current order")
    terms = list(defo.terms) + [defo.term(i) for i in range(defo.order + 1, order + 1)]
    return TruncatedDeformation(defo.system, defo.action, tuple(terms))


def _convolution_residual(defo, r, lowest):
    """sum_{i+j=r, i,j>=lowest} of mu_i(a,b,mu_j(c,d,e)) minus the three
    right-hand terms, as a degree-5 cochain (terms above the stated order
    count as zero)."""
    d = defo.system.dim
    pairs = []
    for i in range(lowest, r - lowest + 1):
        mi, mj = defo.term(i), defo.term(r - i)
        if not (mi.is_zero() or mj.is_zero()):
            pairs.append((mi, mj))
    data = []
    for a, b, c, dd, e in product(range(d), repeat=5):
        acc = [0] * d
        for mi, mj in pairs:
            t1 = mi.evaluate(a, b, mj.basis_value(c, dd, e))
            t2 = mi.evaluate(mj.basis_value(a, b, c), dd, e)
            t3 = mi.evaluate(c, mj.basis_value(a, b, dd), e)
            t4 = mi.evaluate(c, dd, mj.basis_value(a, b, e))
            for l in range(d):
                acc[l] = acc[l] + t1[l] - t2[l] - t3[l] - t4[l]
        data.extend(acc)
    return Cochain.build(5, d, d, data)


def check_deformation_equations(defo):
    """Residuals of the order-r equations for every 0 <= r <= order."""
    d = defo.system.dim
    checks = []
    ok = True
    for r in range(defo.order + 1):
        res = _convolution_residual(defo, r, lowest=0)
        witness = None
        residual = None
        if not res.is_zero():
            for idx in product(range(d), repeat=5):
                w = res.value(idx)
                if any(w):
                    witness = idx
                    residual = tuple(w)
                    break
        passed = witness is None
        ok = ok and passed
        checks.append(OrderCheck(r, passed, witness, residual))
    return DeformationReport(ok, tuple(checks))


def infinitesimal(defo):
    """First index n >= 1 with mu_n nonzero, as (n, degree-3 cochain)."""
    for i in range(1, defo.order + 1):
        if not defo.terms[i].is_zero():
            return i, tensor_to_cochain(defo.terms[i])
    return None


# ---------------------------------------------------------------------------
# obstruction and extension


def obstruction(defo, caps=DEFAULT_CAPS):
    """The degree-5 obstruction cochain of an order-n deformation.

    F(a,b,c,d,e) = sum_{i+j=n+1; i,j>0} mu_i(a,b,mu_j(c,d,e))
                   - mu_i(mu_j(a,b,c),d,e) - mu_i(c,mu_j(a,b,d),e)
                   - mu_i(c,d,mu_j(a,b,e)).

    The result is checked invariant; its cocycle property is checked
    exactly when the degree-7 ambient fits the caps (is_cocycle is None
    otherwise).  The preimage is the canonical equivariant solution of
    coboundary(x) = F when one exists.
    """
    system = defo.system
    cochain = _convolution_residual(defo, defo.order + 1, lowest=1)

    report = cochain_violations(cochain)
    if not report.passed:
        raise RuntimeError("obstruction cochain violates the degree-5 constraints; "
                           "this must not happen")
    module = self_module(system)
    module_action = self_module_action(defo.action, module)
    for g in range(defo.action.size):
        moved = apply_group_dense(defo.action, module_action, g, 5, list(cochain.data))
        if tuple(moved) != cochain.data:
            raise RuntimeError("obstruction cochain is not invariant; "
                               "this must not happen for equivariant terms")

    cocycle_flag = None
    try:
        cocycle_flag = apply_coboundary(module, cochain, caps).is_zero()
    except CapExceeded:
        cocycle_flag = None

    preimage = _equivariant_coboundary_preimage(defo, cochain, caps)
    return ObstructionResult(cochain, cocycle_flag, preimage)


def _equivariant_coboundary_preimage(defo, cochain, caps):
    module = self_module(defo.system)
    module_action = self_module_action(defo.action, module)
    basis3 = cochain_space_basis(module, 3, defo.action, module_action, caps)
    basis5 = cochain_space_basis(module, 5, defo.action, module_action, caps)
    mat = coboundary_matrix(module, basis3, basis5, caps)
    coords = basis5.express(cochain)
    x = solve(mat, coords)
    if x is None:
        return None
    return basis3.combine(x)


def extend(defo, caps=DEFAULT_CAPS):
    """Order-(n+1) extension when the obstruction class vanishes, else None."""
    ob = obstruction(defo, caps)
    if ob.preimage is None:
        return None
    new_term = cochain_to_tensor(ob.preimage, defo.system.field)
    extended = make_deformation(defo.system, defo.action, defo.terms + (new_term,))
    report = check_deformation_equations(extended)
    if not report.passed:
        raise RuntimeError("extension by the obstruction preimage failed the "
                           "order equations; this must not happen")
    return extended


# ---------------------------------------------------------------------------
# gauge transformations


def make_formal_isomorphism(action, matrices):
    """Validate psi_0 = id and equivariance of every coefficient."""
    mats = tuple(matrices)
    if not mats:
        raise DeformationError("a formal isomorphism needs at least psi_0")
    d = action.system.dim
    ident = Matrix.identity(d, action.system.field)
    if mats[0] != ident:
        raise DeformationError("psi_0 must be the identity")
    for i, m in enumerate(mats):
        if m.nrows != d or m.ncols != d:
            raise DeformationError("psi_%d has shape %dx%d, expected %dx%d"
                                   % (i, m.nrows, m.ncols, d, d))
        for lab, g in zip(action.labels, action.matrices):
            if m * g != g * m:
                raise DeformationError("psi_%d does not commute with element %r"
                                       % (i, lab))
    return FormalIsomorphism(mats)


def _compose_tensor(tensor, out_mat, in1, in2, in3):
    """out_mat . tensor(in1 x, in2 y, in3 z) as a structure tensor."""
    d = tensor.dim_in
    c1 = [in1.column(j) for j in range(d)]
    c2 = [in2.column(j) for j in range(d)]
    c3 = [in3.column(j) for j in range(d)]
    entries = [[[out_mat.apply(tensor.evaluate(c1[i], c2[j], c3[k]))
                 for k in range(d)] for j in range(d)] for i in range(d)]
    return StructureTensor.build(entries, (d, d, d), d, out_mat.field)


def apply_isomorphism(defo, iso, cap_order):
    """Gauge transform: Psi o mu_t o (Psi^{-1})^(x3), truncated at cap_order.

    The input terms are zero-padded above the stated order, so the result
    always has order cap_order; equivariance of every new term is preserved
    and revalidated.
    """
    if cap_order < defo.order:
        raise DeformationError("cap %d is below the deformation order %d"
                               % (cap_order, defo.order))
    system = defo.system
    d = system.dim
    phis = iso.inverse_terms(cap_order)
    zero_t = StructureTensor.zero((d, d, d), d, system.field)
    new_terms = []
    for r in range(cap_order + 1):
        acc = zero_t
        for p in range(r + 1):
            psi = iso.term(p)
            if psi.is_zero():
                continue
            for i in range(r - p + 1):
                mu_i = defo.term(i)
                if mu_i.is_zero():
                    continue
                rem = r - p - i
                for a in range(rem + 1):
                    fa = phis[a]
                    if fa.is_zero():
                        continue
                    for b in range(rem - a + 1):
                        fb = phis[b]
                        if fb.is_zero():
                            continue
                        fc = phis[rem - a - b]
                        if fc.is_zero():
                            continue
                        acc = acc + _compose_tensor(mu_i, psi, fa, fb, fc)
        new_terms.append(acc)
    return make_deformation(system, defo.action, new_terms)


def check_equivalence(defo_a, defo_b, cap_order, caps=DEFAULT_CAPS):
    """Order-by-order search for an equivariant formal isomorphism from
    defo_a to defo_b through cap_order.

    At order k the unknown psi_k enters the coefficient equation linearly
    through its coboundary; each step is a canonical equivariant solve.
    Returns the isomorphism, or the first obstructed order with the
    offending equivariant 3-cocycle as witness (plus a diagnostic flag for
    whether the step would have been solvable without equivariance).
    """
    if defo_a.system is not defo_b.system and defo_a.system != defo_b.system:
        raise DeformationError("deformations live on different systems")
    if defo_a.action is not defo_b.action and defo_a.action != defo_b.action:
        raise DeformationError("deformations carry different actions")
    system = defo_a.system
    action = defo_a.action
    d = system.dim
    field = system.field
    module = self_module(system)
    module_action = self_module_action(action, module)
    basis1g = cochain_space_basis(module, 1, action, module_action, caps)
    basis3g = cochain_space_basis(module, 3, action, module_action, caps)
    mat = coboundary_matrix(module, basis1g, basis3g, caps)
    basis1p = cochain_space_basis(module, 1, caps=caps)
    basis3p = cochain_space_basis(module, 3, caps=caps)
    mat_plain = coboundary_matrix(module, basis1p, basis3p, caps)

    ident = Matrix.identity(d, field)
    psis = [ident]
    zero_t = StructureTensor.zero((d, d, d), d, field)
    for k in range(1, cap_order + 1):
        lhs = zero_t
        for i in range(k):  # psi_i with i < k
            psi = psis[i]
            if psi.is_zero():
                continue
            mu_j = defo_a.term(k - i)
            if mu_j.is_zero():
                continue
            lhs = lhs + _compose_tensor(mu_j, psi, ident, ident, ident)
        rhs = zero_t
        for j in range(k + 1):
            mu_j = defo_b.term(j)
            if mu_j.is_zero():
                continue
            rem = k - j
            for p in range(min(rem, k - 1) + 1):
                fp = psis[p] if p < len(psis) else None
                if fp is None or fp.is_zero():
                    continue
                for q in range(rem - p + 1):
                    s = rem - p - q
                    if q >= k or s >= k or q >= len(psis) or s >= len(psis):
                        continue
                    fq, fs = psis[q], psis[s]
                    if fq.is_zero() or fs.is_zero():
                        continue
                    rhs = rhs + _compose_tensor(mu_j, ident, fp, fq, fs)
        g_k = tensor_to_cochain(lhs - rhs)
        coords = basis3g.express(g_k)
        x = solve(mat, coords)
        if x is None:
            plain = solve(mat_plain, basis3p.express(g_k)) is not None
            return EquivalenceResult(None, obstructed_order=k, witness=g_k,
                                     plain_solvable=plain)
        psi_k = _cochain1_to_matrix(basis1g.combine(x), field)
        psis.append(psi_k)
    iso = make_formal_isomorphism(action, psis)
    gauged = apply_isomorphism(defo_a, iso, cap_order)
    for r in range(cap_order + 1):
        if gauged.term(r) != defo_b.term(r):
            raise RuntimeError("order-by-order solution failed the round trip; "
                               "this must not happen")
    return EquivalenceResult(iso)


def _cochain1_to_matrix(c, field):
    d, m = c.dim, c.mdim
    rows = [[c.data[i * m + l] for i in range(d)] for l in range(m)]
    return Matrix(rows, field, copy=False)


def trivialize(defo, cap_order, caps=DEFAULT_CAPS):
    """Strip coboundary infinitesimals by gauge steps Psi = id + psi t^n.

    Stops when every term through cap_order vanishes (trivial deformation)
    or when the current infinitesimal's class is nonzero (the gauge-reduced
    normal form).  Returns the reduced deformation and a step log.
    """
    system = defo.system
    action = defo.action
    field = system.field
    module = self_module(system)
    module_action = self_module_action(action, module)
    basis1g = cochain_space_basis(module, 1, action, module_action, caps)
    basis3g = cochain_space_basis(module, 3, action, module_action, caps)
    mat = coboundary_matrix(module, basis1g, basis3g, caps)

    cur = pad_deformation(defo, cap_order) if defo.order < cap_order else defo
    log = []
    while True:
        inf = infinitesimal(cur)
        if inf is None:
            log.append({"status": "trivial",
                        "detail": "all terms through order %d vanish" % cur.order})
            return cur, log
        n, cochain = inf
        coords = basis3g.express(cochain)
        x = solve(mat, coords)
        if x is None:
            log.append({"status": "reduced",
                        "detail": "order-%d infinitesimal has nonzero equivariant "
                                  "cohomology class" % n,
                        "order": n})
            return cur, log
        psi = _cochain1_to_matrix(basis1g.combine(x), field)
        mats = [Matrix.identity(system.dim, field)]
        mats.extend(Matrix.zero(system.dim, system.dim, field) for _ in range(n - 1))
        mats.append(psi)
        iso = make_formal_isomorphism(action, mats)
        cur = apply_isomorphism(cur, iso, cap_order)
        log.append({"status": "step", "order": n,
                    "detail": "removed order-%d coboundary infinitesimal" % n})


def rigidity_certificate(system, action, caps=DEFAULT_CAPS):
    """Sufficient rigidity test: equivariant H^3 = 0 certifies rigidity;
    anything else is reported as inconclusive, never as non-rigidity."""
    module = self_module(system)
    report = cohomology(module, 3, action, caps=caps, want_representatives=False)
    return RigidityReport(report.dim_h, report.dim_h == 0)
