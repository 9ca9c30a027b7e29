"""Schur polynomials S_r(x_1, ..., x_r).

S_r is the coefficient of y^r in exp(sum_{n>=1} x_n y^n / n).  Two routes
are provided: the recursion r S_r = sum_{k=1}^r x_k S_{r-k} (differentiate
the generating function) and the determinant of the almost lower
bidiagonal r x r matrix

    [ x_1   x_2   ...        x_r   ]
    [ -r+1  x_1   x_2   ...  x_:   ]
    [  0    -r+2  x_1   ...        ]
    [            ...   -1    x_1   ]

divided by r!.  The two implementations are independent and cross-checked
in the test suite.
"""

from math import factorial

from .scalars import ONE, ZERO, as_rational


class SchurInput:
    """r and the values x_1..x_r (exactly r of them, rationals)."""

    __slots__ = ("r", "x")

    def __init__(self, x):
        self.x = tuple(as_rational(v) for v in x)
        self.r = len(self.x)

    def value(self, k):
        """x_k with 1-based index; out-of-range values are zero."""
        return self.x[k - 1] if 1 <= k <= self.r else ZERO


def schur_rec(inp):
    """S_r by the generating-function recursion; S_0 = 1."""
    s = [ONE]
    for r in range(1, inp.r + 1):
        total = ZERO
        for k in range(1, r + 1):
            total += inp.value(k) * s[r - k]
        s.append(total / r)
    return s[inp.r]


def schur_det(inp):
    """S_r as (1/r!) times the bidiagonal determinant; rejects r = 0."""
    r = inp.r
    if r == 0:
        raise ValueError("determinant form undefined for r = 0; use schur_rec")
    rows = []
    for i in range(1, r + 1):
        row = []
        for j in range(1, r + 1):
            if j >= i:
                row.append(inp.value(j - i + 1))
            elif j == i - 1:
                row.append(as_rational(-(r - i + 1)))
            else:
                row.append(ZERO)
        rows.append(row)
    return _det(rows) / factorial(r)


def _det(rows):
    """Fraction-free-ish Gaussian elimination determinant, exact."""
    n = len(rows)
    m = [row[:] for row in rows]
    det = ONE
    for col in range(n):
        pivot = None
        for i in range(col, n):
            if m[i][col] != ZERO:
                pivot = i
                break
        if pivot is None:
            return ZERO
        if pivot != col:
            m[col], m[pivot] = m[pivot], m[col]
            det = -det
        det *= m[col][col]
        inv = ONE / m[col][col]
        for i in range(col + 1, n):
            if m[i][col] == ZERO:
                continue
            factor = m[i][col] * inv
            for j in range(col, n):
                m[i][j] -= factor * m[col][j]
    return det
