"""Index bookkeeping and slot transforms for flat multilinear tensors.

A degree-k cochain with inputs of dimension d and values of dimension m is
stored flat in row-major order over (i_1, ..., i_k, l): the input tuple is
the high part of the index and the value coordinate l the low part.
"""

from __future__ import annotations

from itertools import product


def flat_index(idx, d, m, l):
    base = 0
    for i in idx:
        base = base * d + i
    return base * m + l


def tuple_of(base, degree, d):
    """Inverse of the input-tuple part of flat_index."""
    idx = [0] * degree
    for s in range(degree - 1, -1, -1):
        idx[s] = base % d
        base //= d
    return tuple(idx)


def all_tuples(degree, d):
    return product(range(d), repeat=degree)


def transform_dense(data, degree, d, m, in_mat, out_mat):
    """Apply in_mat to every input slot and out_mat to the value slot.

    data is a flat list over (i_1..i_degree, l); matrices are row lists.
    Result[j_1..j_degree, a] = sum out_mat[a][b] * in_mat[i_1][j_1] * ...
    * in_mat[i_degree][j_degree] * data[i_1..i_degree, b].
    """
    cur = list(data)
    size = len(data)
    stride = m
    for _ in range(degree):
        cur = _transform_axis(cur, size, stride, d, in_mat)
        stride *= d
    return _transform_axis(cur, size, 1, m, out_mat, contra=True)


def _transform_axis(data, size, stride, dim, mat, contra=False):
    """Contract one axis (given by its stride) with mat.

    contra=False: new[.., j, ..] = sum_i mat[i][j] data[.., i, ..]
    contra=True:  new[.., a, ..] = sum_b mat[a][b] data[.., b, ..]
    """
    out = [0] * size
    block = stride * dim
    for start in range(0, size, block):
        for off in range(stride):
            base = start + off
            vals = [data[base + i * stride] for i in range(dim)]
            if not any(vals):
                continue
            for j in range(dim):
                s = 0
                for i in range(dim):
                    v = vals[i]
                    if not v:
                        continue
                    c = mat[j][i] if contra else mat[i][j]
                    if c:
                        s = s + c * v
                out[base + j * stride] = s
    return out


def transform_sparse(entries, degree, d, m, in_mat, out_mat):
    """Sparse version of transform_dense over {flat index: value} dicts."""
    cur = dict(entries)
    stride = m
    for _ in range(degree):
        cur = _transform_axis_sparse(cur, stride, d, in_mat, contra=False)
        stride *= d
    return _transform_axis_sparse(cur, 1, m, out_mat, contra=True)


def _transform_axis_sparse(entries, stride, dim, mat, contra):
    out = {}
    for flat, v in entries.items():
        if not v:
            continue
        i = (flat // stride) % dim
        base = flat - i * stride
        for j in range(dim):
            c = mat[j][i] if contra else mat[i][j]
            if not c:
                continue
            key = base + j * stride
            cur = out.get(key)
            if cur is None:
                out[key] = c * v
            else:
                cur = cur + c * v
                if cur:
                    out[key] = cur
                else:
                    del out[key]
    return out
