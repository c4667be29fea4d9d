"""Assembly and exact solution of the side-length equation system.

Unknowns are one side length per inner vertex plus the two independent
segment lengths of every inner face (roles 3 and 4 are eliminated through
role3 = role1 + phi*role2 and role4 = phi*role1 + role2).  Equations: five
side sums per inner vertex, role1 = 0 for the five frame-corner faces, and
one normalisation fixing the top frame side to length 1.  The matrix is
square of dimension 5n+6 and is solved exactly over Q(sqrt 5) by
fraction-free (Bareiss) elimination on a scaled integer matrix, with the
pivot chosen by largest double approximation within the column.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import DimensionMismatch, SingularMatrix, TooLarge
from .q5 import ONE, PHI, Q5, ZERO

MAX_DENSE_DIM = 4096

ROLE_COEFFS = {
    1: ((1, ONE),),
    2: ((2, ONE),),
    3: ((1, ONE), (2, PHI)),
    4: ((1, PHI), (2, ONE)),
}

_SQRT5 = math.sqrt(5.0)


def seg_var_coeffs(seg):
    """Sparse coefficients of a segment length in the reduced variables."""
    return [(("f", seg.face, slot), coeff) for slot, coeff in ROLE_COEFFS[seg.role]]


@dataclass
class LinearSystem:
    skeleton: object
    variables: list
    var_index: dict
    rows: list          # sparse rows: dict var-index -> Q5
    rhs: list
    row_labels: list

    @property
    def dim(self):
        return len(self.rows)


def assemble(sk):
    """Equation system for a skeleton; raises on dimension inconsistencies."""
    t = sk.t
    inner = sorted(t.inner_vertices())
    faces = sorted(sk.faces)
    variables = [("v", v) for v in inner]
    for fc in faces:
        variables.append(("f", fc, 1))
        variables.append(("f", fc, 2))
    var_index = {key: i for i, key in enumerate(variables)}

    rows, rhs, labels = [], [], []

    def seg_sum(segs):
        row = {}
        for seg in segs:
            for key, coeff in seg_var_coeffs(seg):
                idx = var_index[key]
                row[idx] = row.get(idx, ZERO) + coeff
        return row

    row = seg_sum(sk.frame_sides[1])
    rows.append(row)
    rhs.append(ONE)
    labels.append("frame side 1 = 1")

    for v in inner:
        for i in range(1, 6):
            row = seg_sum(sk.side_segments(v, i))
            xi = var_index[("v", v)]
            row[xi] = row.get(xi, ZERO) - ONE
            rows.append(row)
            rhs.append(ZERO)
            labels.append(f"side {i} of vertex {v}")

    for fd in sorted(sk.corner_faces(), key=lambda fd: fd.face):
        rows.append({var_index[("f", fd.face, 1)]: ONE})
        rhs.append(ZERO)
        labels.append(f"corner face {fd.face}: role1 = 0")

    n = len(inner)
    if len(rows) != len(variables) or len(rows) != 5 * n + 6:
        raise DimensionMismatch(
            f"{len(rows)} equations vs {len(variables)} variables (n={n})")
    return LinearSystem(sk, variables, var_index, rows, rhs, labels)


# -- exact solver -----------------------------------------------------------


def _approx_abs(a, b):
    """Floating magnitude of a + b*sqrt5, safe for huge integers."""
    shift = max(a.bit_length(), b.bit_length()) - 500
    if shift > 0:
        a >>= shift
        b >>= shift
    return abs(a + b * _SQRT5)


def _row_to_ints(row, rhs_val, dim):
    denoms = [c.a.denominator for c in row.values()]
    denoms += [c.b.denominator for c in row.values()]
    denoms += [rhs_val.a.denominator, rhs_val.b.denominator]
    scale = 1
    for d in denoms:
        scale = scale * d // math.gcd(scale, d)
    flat = [0] * (2 * (dim + 1))
    for j, c in row.items():
        flat[2 * j] = int(c.a * scale)
        flat[2 * j + 1] = int(c.b * scale)
    flat[2 * dim] = int(rhs_val.a * scale)
    flat[2 * dim + 1] = int(rhs_val.b * scale)
    return flat


class Solution:
    """Exact solution vector with helpers for segments and signs."""

    def __init__(self, system, values):
        self.system = system
        self.values = values

    def __getitem__(self, key):
        return self.values[key]

    def seg_value(self, seg):
        total = ZERO
        for key, coeff in seg_var_coeffs(seg):
            total = total + coeff * self.values[key]
        return total

    def negatives(self):
        return [key for key in self.system.variables
                if self.values[key].sign() < 0]

    def all_nonnegative(self):
        return not self.negatives()

    def to_json(self):
        out = {}
        for key in self.system.variables:
            name = (f"x_{key[1]}" if key[0] == "v"
                    else f"f{key[2]}_{'_'.join(map(str, key[1]))}")
            val = self.values[key]
            out[name] = {**val.to_json(), "sign": val.sign()}
        return out


def solve(system):
    """Exact Gaussian elimination (fraction-free) over Q(sqrt 5).

    The residual of the returned solution is verified to be exactly zero;
    a vanishing pivot column raises SingularMatrix, which signals a bug
    because the system is provably uniquely solvable.
    """
    dim = system.dim
    if dim > MAX_DENSE_DIM:
        raise TooLarge(f"dense elimination refused beyond {MAX_DENSE_DIM} "
                       f"unknowns (got {dim})")
    mat = [_row_to_ints(system.rows[i], system.rhs[i], dim) for i in range(dim)]
    prev_a, prev_b = 1, 0
    for k in range(dim):
        best, best_mag = -1, -1.0
        for r in range(k, dim):
            a, b = mat[r][2 * k], mat[r][2 * k + 1]
            if a or b:
                mag = _approx_abs(a, b)
                if mag > best_mag:
                    best, best_mag = r, mag
        if best < 0:
            raise SingularMatrix(f"no pivot in column {k} ({system.variables[k]})")
        if best != k:
            mat[k], mat[best] = mat[best], mat[k]
        row_k = mat[k]
        pa, pb = row_k[2 * k], row_k[2 * k + 1]
        norm = prev_a * prev_a - 5 * prev_b * prev_b
        for r in range(k + 1, dim):
            row = mat[r]
            fa, fb = row[2 * k], row[2 * k + 1]
            row[2 * k] = 0
            row[2 * k + 1] = 0
            for j in range(k + 1, dim + 1):
                xa, xb = row_k[2 * j], row_k[2 * j + 1]
                ya, yb = row[2 * j], row[2 * j + 1]
                # (pivot*y - factor*x) / prev, exactly in Z[sqrt5]
                na = pa * ya + 5 * pb * yb - fa * xa - 5 * fb * xb
                nb = pa * yb + pb * ya - fa * xb - fb * xa
                if prev_b == 0:
                    qa, ra = divmod(na, prev_a)
                    qb, rb = divmod(nb, prev_a)
                else:
                    ca = na * prev_a - 5 * nb * prev_b
                    cb = nb * prev_a - na * prev_b
                    qa, ra = divmod(ca, norm)
                    qb, rb = divmod(cb, norm)
                if ra or rb:
                    raise SingularMatrix("non-exact division in elimination")
                row[2 * j] = qa
                row[2 * j + 1] = qb
        prev_a, prev_b = pa, pb

    xs = [ZERO] * dim
    for i in range(dim - 1, -1, -1):
        row = mat[i]
        acc = Q5(Fraction(row[2 * dim]), Fraction(row[2 * dim + 1]))
        for j in range(i + 1, dim):
            if row[2 * j] or row[2 * j + 1]:
                acc = acc - Q5(Fraction(row[2 * j]), Fraction(row[2 * j + 1])) * xs[j]
        pivot = Q5(Fraction(row[2 * i]), Fraction(row[2 * i + 1]))
        xs[i] = acc / pivot

    values = {key: xs[i] for i, key in enumerate(system.variables)}
    for i, row in enumerate(system.rows):
        acc = ZERO
        for j, coeff in row.items():
            acc = acc + coeff * xs[j]
        if acc != system.rhs[i]:
            raise SingularMatrix(
                f"nonzero residual in equation {system.row_labels[i]}")
    return Solution(system, values)
