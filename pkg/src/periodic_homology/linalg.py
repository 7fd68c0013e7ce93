"""Sparse exact linear algebra over Q and cyclotomic fields.

Matrices are lists of columns; a column is a dict {row index: entry}.
Entries may be int, Fraction or CycElt; ints are promoted to Fraction.
"""
from __future__ import annotations

from fractions import Fraction

from .cyclotomic import CycElt


def field_element(value, n=None):
    """Promote an integer/Fraction to Q (n is None) or Q(xi_n)."""
    if n is None or n <= 2:
        if isinstance(value, CycElt):
            if not value.is_rational():
                raise ValueError("irrational entry in a rational computation")
            return value.c[0]
        return Fraction(value)
    if isinstance(value, CycElt):
        return value
    return CycElt(n, [value])


def _promote(col):
    out = {}
    for r, v in col.items():
        if v:
            out[r] = v if isinstance(v, (Fraction, CycElt)) else Fraction(v)
    return out


def reduce_columns(columns):
    """Left-to-right column reduction with pivot = largest row index.

    Returns (low, zero) where low maps column index -> pivot row for
    columns that survive, and zero lists the columns reduced to 0.
    The reduction only adds multiples of earlier columns to later ones,
    so with rows and columns sorted by a filtration it computes the
    persistence pairing of that filtration.
    """
    pivot_col = {}  # row -> reduced column (dict)
    low = {}
    zero = []
    for j, col in enumerate(columns):
        c = _promote(col)
        while c:
            r = max(c)
            p = pivot_col.get(r)
            if p is None:
                break
            f = c[r] / p[r]
            for rr, vv in p.items():
                nv = c.get(rr, 0) - f * vv
                if nv:
                    c[rr] = nv
                else:
                    c.pop(rr, None)
        if c:
            r = max(c)
            pivot_col[r] = c
            low[j] = r
        else:
            zero.append(j)
    return low, zero


def rank(columns):
    low, _ = reduce_columns(columns)
    return len(low)


def kernel_dim(columns):
    return len(columns) - rank(columns)


def matmul(a_cols, b_cols):
    """Product A*B for column-sparse matrices."""
    out = []
    for col in b_cols:
        acc = {}
        for k, v in col.items():
            for r, w in a_cols[k].items():
                acc[r] = acc.get(r, 0) + w * v
        out.append({r: v for r, v in acc.items() if v})
    return out


def is_zero_matrix(cols):
    return all(not any(v for v in c.values()) for c in cols)


def equal_matrices(a_cols, b_cols):
    if len(a_cols) != len(b_cols):
        return False
    for x, y in zip(a_cols, b_cols):
        keys = set(x) | set(y)
        for k in keys:
            if x.get(k, 0) != y.get(k, 0):
                return False
    return True
