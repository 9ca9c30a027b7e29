"""Truncated Laurent series with explicit determinability bookkeeping.

A window of weight w holds coefficients of the series

    A(z) = sum_n  A_n z^(-n-w)

for indices lo <= n <= hi, together with a tail guarantee A_n = 0 for all
n > tail_zero_above.  Indices below lo are UNKNOWN: asking for them is a
hard error, never a silent zero.  Weight 1 is the chi convention
(sum chi_n z^(-n-1)), weight 2 the theta convention (sum theta_n z^(-n-2)).
"""

from .errors import UndeterminedCoefficientError
from .scalars import ZERO, as_rational


class LaurentWindow:
    __slots__ = ("weight", "lo", "hi", "tail_zero_above", "_coeffs")

    def __init__(self, weight, lo, hi, coeffs, tail_zero_above):
        if lo > hi:
            raise ValueError(f"empty window: lo={lo} > hi={hi}")
        self.weight = int(weight)
        self.lo = int(lo)
        self.hi = int(hi)
        self.tail_zero_above = int(tail_zero_above)
        table = {}
        for n, value in coeffs.items():
            n = int(n)
            if not lo <= n <= hi:
                raise ValueError(f"coefficient index {n} outside window [{lo},{hi}]")
            v = as_rational(value)
            if v != ZERO:
                if n > self.tail_zero_above:
                    raise ValueError(
                        f"nonzero coefficient at {n} contradicts tail bound "
                        f"{self.tail_zero_above}"
                    )
                table[n] = v
        self._coeffs = table

    def is_determined(self, n):
        return (self.lo <= n <= self.hi) or n > self.tail_zero_above

    def get(self, n):
        """Coefficient A_n; raises for indices below the stored window."""
        if self.lo <= n <= self.hi:
            return self._coeffs.get(n, ZERO)
        if n > self.tail_zero_above:
            return ZERO
        raise UndeterminedCoefficientError(
            f"coefficient at index {n} is outside the determinable range "
            f"[{self.lo},{self.hi}] + tail(>{self.tail_zero_above})",
            operation="laurent.get",
        )

    def support(self):
        return sorted(self._coeffs)

    def is_zero_on_window(self):
        return not self._coeffs

    def to_json(self):
        return {
            "weight": self.weight,
            "lo": self.lo,
            "hi": self.hi,
            "tailZeroAbove": self.tail_zero_above,
            "coeffs": {str(n): str(v) for n, v in sorted(self._coeffs.items())},
        }

    def __eq__(self, other):
        if not isinstance(other, LaurentWindow):
            return NotImplemented
        return (
            self.weight == other.weight
            and self.lo == other.lo
            and self.hi == other.hi
            and self.tail_zero_above == other.tail_zero_above
            and self._coeffs == other._coeffs
        )

    def __repr__(self):
        terms = ", ".join(f"{n}: {v}" for n, v in sorted(self._coeffs.items()))
        return (
            f"LaurentWindow(w={self.weight}, [{self.lo},{self.hi}], "
            f"tail>{self.tail_zero_above}, {{{terms}}})"
        )


def window_from_table(weight, coeffs, lo, hi, tail_zero_above=None):
    """Convenience constructor; the tail bound defaults to the top index used."""
    if tail_zero_above is None:
        nonzero = [int(n) for n, v in coeffs.items() if as_rational(v) != ZERO]
        tail_zero_above = max(nonzero) if nonzero else lo - 1
    return LaurentWindow(weight, lo, hi, coeffs, tail_zero_above)


def laurent_mul(a, b, out_lo, out_hi):
    """Product series on the requested index window.

    The product coefficient at m is sum_{i+j=m} A_i B_j; the tail bounds cut
    the sum to i in [m - tail(B), tail(A)].  Every surviving term must be
    determined by the stored data, otherwise the request is rejected.
    """
    coeffs = {}
    for m in range(out_lo, out_hi + 1):
        i_lo = m - b.tail_zero_above
        i_hi = a.tail_zero_above
        total = ZERO
        for i in range(i_lo, i_hi + 1):
            total += a.get(i) * b.get(m - i)
        coeffs[m] = total
    return LaurentWindow(
        a.weight + b.weight,
        out_lo,
        out_hi,
        coeffs,
        a.tail_zero_above + b.tail_zero_above,
    )


def laurent_der(a):
    """Term-by-term d/dz; the weight rises by one, indices stay put.

    d/dz z^(-n-w) = (-n-w) z^(-n-(w+1)), so the new coefficient at n is
    -(n+w) A_n on the unchanged window.
    """
    coeffs = {n: -(n + a.weight) * a.get(n) for n in range(a.lo, a.hi + 1)}
    return LaurentWindow(a.weight + 1, a.lo, a.hi, coeffs, a.tail_zero_above)


def theta_from_chi(chi, out_lo, out_hi):
    """Weight-2 series theta(z) = (chi(z)^2 + 2 d/dz chi(z)) / 2.

    chi must be a weight-1 window; the result is expressed in the theta
    convention sum theta_n z^(-n-2).
    """
    if chi.weight != 1:
        raise ValueError(f"chi must have weight 1, got {chi.weight}")
    square = laurent_mul(chi, chi, out_lo, out_hi)
    deriv = laurent_der(chi)
    half = as_rational(1) / 2
    coeffs = {m: half * square.get(m) + deriv.get(m) for m in range(out_lo, out_hi + 1)}
    tail = max(square.tail_zero_above, deriv.tail_zero_above)
    return LaurentWindow(2, out_lo, out_hi, coeffs, tail)
