"""Free-field state spaces and oscillator mode actions.

Modules handled here:

* Weyl side: the Whittaker module M1(lambda, mu), the quotient of the Weyl
  algebra by the left ideal generated by a(i) - lambda_i (i >= 0) and
  a*(j) - mu_j (j >= 1).  The vacuum module W is M1(0, 0).  Free directions
  are a(-n) for n >= 1 and a*(-m) for m >= 0.
* Heisenberg side: the Whittaker module N1(eta) of level kappa+2 (free
  directions b(-j), j >= 1, with b(n) v = eta_n v for n >= 0), and the
  one-dimensional module L(chi) on which b(n) is multiplication by chi_n
  for every n (critical level only).

Commutators: [a(n), a*(m)] = delta_{n+m,0} (so a*(j) sweeps past a(-j)
with -1 per factor), and [b(n), b(m)] = 2(kappa+2) n delta_{n+m,0}.

A monomial is stored as a triple of ((depth, exponent), ...) tuples for the
a, a* and b factors, depths descending; depth d stands for mode -d.  The
degree of a monomial is the sum of depth * exponent over all factors, so
a*(0) has degree zero and degree-truncated bases need an explicit cap on
its exponent.
"""

from .errors import MissingCapError, ModuleMismatchError
from .laurent import LaurentWindow
from .scalars import ZERO, as_rational

EMPTY_MONO = ((), (), ())


class WhittakerData:
    """Eigenvalue tables of the Weyl Whittaker module M1(lambda, mu).

    lambda is supported on i >= 0, mu on j >= 1, both finitely.  N is the
    top index of lambda (-1 if empty), M the top index of mu (0 if empty).
    """

    __slots__ = ("lam", "mu", "N", "M")

    def __init__(self, lam=None, mu=None):
        self.lam = _table(lam, min_index=0, name="lambda")
        self.mu = _table(mu, min_index=1, name="mu")
        self.N = max(self.lam) if self.lam else -1
        self.M = max(self.mu) if self.mu else 0

    def lam_at(self, i):
        return self.lam.get(i, ZERO)

    def mu_at(self, j):
        return self.mu.get(j, ZERO)

    def is_vacuum(self):
        return not self.lam and not self.mu

    def params(self):
        return {
            "lambda": {str(i): str(v) for i, v in sorted(self.lam.items())},
            "mu": {str(j): str(v) for j, v in sorted(self.mu.items())},
        }


class HeisWhittakerData:
    """Eigenvalue table eta (n >= 0) for the level kappa+2 Heisenberg module."""

    __slots__ = ("eta", "P", "level")

    def __init__(self, eta=None, level=0):
        self.eta = _table(eta, min_index=0, name="eta")
        self.P = max(self.eta) if self.eta else -1
        self.level = as_rational(level)

    def eta_at(self, n):
        return self.eta.get(n, ZERO)

    def params(self):
        return {
            "eta": {str(n): str(v) for n, v in sorted(self.eta.items())},
            "level": str(self.level),
        }


class ChiModuleData:
    """One-dimensional critical-level module: b(n) acts as chi_n."""

    __slots__ = ("chi",)

    def __init__(self, chi):
        if not isinstance(chi, LaurentWindow) or chi.weight != 1:
            raise ValueError("chi must be a weight-1 LaurentWindow")
        self.chi = chi

    def params(self):
        return {"chi": self.chi.to_json()}


def _table(values, *, min_index, name):
    out = {}
    for k, v in (values or {}).items():
        k = int(k)
        if k < min_index:
            raise ValueError(f"{name} index {k} below minimum {min_index}")
        v = as_rational(v)
        if v != ZERO:
            out[k] = v
    return out


class ModuleSpace:
    """Tensor-factor layout of a concrete module (the module tag).

    Either factor may be absent; heis is WhittakerData-like (N1(eta)) or
    ChiModuleData (L(chi)).  Holds the per-space cache of single-mode
    actions on monomials.
    """

    __slots__ = ("weyl", "heis", "_cache")

    def __init__(self, weyl=None, heis=None):
        if weyl is not None and not isinstance(weyl, WhittakerData):
            raise ValueError("weyl factor must be WhittakerData")
        if heis is not None and not isinstance(
            heis, (HeisWhittakerData, ChiModuleData)
        ):
            raise ValueError("heis factor must be HeisWhittakerData or ChiModuleData")
        if weyl is None and heis is None:
            raise ValueError("module needs at least one tensor factor")
        self.weyl = weyl
        self.heis = heis
        self._cache = {}

    @property
    def heis_kind(self):
        if self.heis is None:
            return None
        return "chi" if isinstance(self.heis, ChiModuleData) else "whittaker"

    def cyclic(self):
        return FockVector(self, {EMPTY_MONO: as_rational(1)})

    def validate_monomial(self, key):
        a, s, b = key
        if self.weyl is None and (a or s):
            raise ModuleMismatchError(
                "monomial uses Weyl factors but the module has none"
            )
        if b and self.heis_kind != "whittaker":
            raise ModuleMismatchError(
                "monomial uses b factors but the module has no Whittaker "
                "Heisenberg factor"
            )

    # -- single-mode actions on a monomial key, memoized ------------------

    def weyl_single(self, kind, n, key):
        tag = (kind, n, key)
        hit = self._cache.get(tag)
        if hit is None:
            hit = self._cache[tag] = _weyl_on_monomial(self.weyl, kind, n, key)
        return hit

    def heis_single(self, n, key):
        if self.heis_kind == "chi":
            # scalar action; determinability errors surface at call time
            value = self.heis.chi.get(n)
            return ((key, value),) if value != ZERO else ()
        tag = ("b", n, key)
        hit = self._cache.get(tag)
        if hit is None:
            hit = self._cache[tag] = _heis_on_monomial(self.heis, n, key)
        return hit

    def params(self):
        out = {}
        if self.weyl is not None:
            out.update(self.weyl.params())
        if self.heis is not None:
            out.update(self.heis.params())
        return out


class FockVector:
    """Finite rational combination of monomials applied to the cyclic vector."""

    __slots__ = ("space", "terms")

    def __init__(self, space, terms=None, validate=False):
        self.space = space
        self.terms = {}
        for key, coeff in (terms or {}).items():
            c = as_rational(coeff)
            if c != ZERO:
                if validate:
                    space.validate_monomial(key)
                self.terms[key] = c

    def is_zero(self):
        return not self.terms

    def scale(self, factor):
        factor = as_rational(factor)
        if factor == ZERO:
            return FockVector(self.space, {})
        return FockVector(
            self.space, {k: factor * c for k, c in self.terms.items()}
        )

    def add(self, other):
        if other.space is not self.space:
            raise ModuleMismatchError("cannot add vectors from different modules")
        out = dict(self.terms)
        for k, c in other.terms.items():
            acc = out.get(k)
            if acc is None:
                out[k] = c
            else:
                acc = acc + c
                if acc == ZERO:
                    del out[k]
                else:
                    out[k] = acc
        v = FockVector.__new__(FockVector)
        v.space = self.space
        v.terms = out
        return v

    def sub(self, other):
        return self.add(other.scale(-1))

    def scalar_against_cyclic(self):
        """The coefficient c when the vector equals c * cyclic, else None."""
        if not self.terms:
            return ZERO
        if len(self.terms) == 1 and EMPTY_MONO in self.terms:
            return self.terms[EMPTY_MONO]
        return None

    def monomials(self):
        return sorted(self.terms.items(), key=lambda kv: monomial_sort_key(kv[0]))

    def to_json(self):
        return [
            [serialize_monomial(key), str(coeff)] for key, coeff in self.monomials()
        ]

    def __eq__(self, other):
        if not isinstance(other, FockVector):
            return NotImplemented
        return self.space is other.space and self.terms == other.terms

    def __repr__(self):
        if not self.terms:
            return "FockVector(0)"
        parts = [f"{c} * {pretty_monomial(k)}" for k, c in self.monomials()]
        return "FockVector(" + " + ".join(parts) + ")"


# -- monomial helpers -------------------------------------------------------


def monomial(a=(), a_star=(), b=()):
    """Build a monomial key from (depth, exponent) pair iterables.

    Depths are the positive of the mode index: a(-3)^2 a*(0) is
    monomial(a=[(3, 2)], a_star=[(0, 1)]).
    """
    return (_normalize(a, 1), _normalize(a_star, 0), _normalize(b, 1))


def _normalize(pairs, min_depth):
    table = {}
    for depth, exp in pairs:
        depth = int(depth)
        exp = int(exp)
        if depth < min_depth:
            raise ValueError(f"depth {depth} below minimum {min_depth}")
        if exp < 0:
            raise ValueError("negative exponent")
        if exp:
            table[depth] = table.get(depth, 0) + exp
    return tuple(sorted(table.items(), reverse=True))


def degree(key):
    """Sum of depth * exponent over all oscillator factors."""
    a, s, b = key
    return (
        sum(d * e for d, e in a)
        + sum(d * e for d, e in s)
        + sum(d * e for d, e in b)
    )


def monomial_sort_key(key):
    return (degree(key), key)


def serialize_monomial(key):
    a, s, b = key
    out = [["a", -d, e] for d, e in a]
    out += [["a*", -d, e] for d, e in s]
    out += [["b", -d, e] for d, e in b]
    return out


def pretty_monomial(key):
    a, s, b = key
    if not (a or s or b):
        return "1"
    bits = []
    for gen, part in (("a", a), ("a*", s), ("b", b)):
        for d, e in part:
            bits.append(f"{gen}({-d})" + (f"^{e}" if e > 1 else ""))
    return "".join(bits)


def _bump(part, depth, delta):
    """Adjust the exponent at a depth inside a sorted-descending pair tuple."""
    table = dict(part)
    new = table.get(depth, 0) + delta
    if new < 0:
        raise ValueError("exponent went negative")
    if new:
        table[depth] = new
    else:
        table.pop(depth, None)
    return tuple(sorted(table.items(), reverse=True))


def _exp_at(part, depth):
    for d, e in part:
        if d == depth:
            return e
        if d < depth:
            return 0
    return 0


# -- raw mode actions -------------------------------------------------------


def _weyl_on_monomial(data, kind, n, key):
    a, s, b = key
    if kind == "a":
        if n <= -1:
            return (((_bump(a, -n, 1), s, b), as_rational(1)),)
        out = []
        lam = data.lam_at(n)
        if lam != ZERO:
            out.append((key, lam))
        k = _exp_at(s, n)
        if k:
            out.append(((a, _bump(s, n, -1), b), as_rational(k)))
        return tuple(out)
    if kind == "a*":
        if n <= 0:
            return (((a, _bump(s, -n, 1), b), as_rational(1)),)
        out = []
        mu = data.mu_at(n)
        if mu != ZERO:
            out.append((key, mu))
        k = _exp_at(a, n)
        if k:
            out.append(((_bump(a, n, -1), s, b), as_rational(-k)))
        return tuple(out)
    raise ValueError(f"unknown Weyl generator kind {kind!r}")


def _heis_on_monomial(data, n, key):
    a, s, b = key
    if n <= -1:
        return (((a, s, _bump(b, -n, 1)), as_rational(1)),)
    out = []
    eta = data.eta_at(n)
    if eta != ZERO:
        out.append((key, eta))
    if n >= 1 and data.level != ZERO:
        k = _exp_at(b, n)
        if k:
            out.append(((a, s, _bump(b, n, -1)), 2 * data.level * n * k))
    return tuple(out)


# -- public mode application ------------------------------------------------


def weyl_apply(kind, n, vector):
    """Action of a(n) or a*(n) on a vector with a Weyl factor."""
    space = vector.space
    if space.weyl is None:
        raise ModuleMismatchError(
            f"{kind}({n}) needs a Weyl factor", operation="weyl_apply"
        )
    return _apply(space, lambda key: space.weyl_single(kind, n, key), vector)


def heis_apply(n, vector):
    """Action of b(n) on a vector with a Heisenberg factor."""
    space = vector.space
    if space.heis is None:
        raise ModuleMismatchError(
            f"b({n}) needs a Heisenberg factor", operation="heis_apply"
        )
    return _apply(space, lambda key: space.heis_single(n, key), vector)


def _apply(space, single, vector):
    out = {}
    for key, coeff in vector.terms.items():
        for new_key, factor in single(key):
            value = coeff * factor
            acc = out.get(new_key)
            if acc is None:
                out[new_key] = value
            else:
                acc = acc + value
                if acc == ZERO:
                    del out[new_key]
                else:
                    out[new_key] = acc
    result = FockVector.__new__(FockVector)
    result.space = space
    result.terms = out
    return result


# -- annihilation bounds (exact mode supports) ------------------------------


def a_bound(space, key):
    """a(i) kills the monomial for every i above this bound."""
    top = space.weyl.N
    s = key[1]
    if s and s[0][0] > top:
        top = s[0][0]
    return top


def astar_bound(space, key):
    """a*(j) (j >= 1) kills the monomial for every j above this bound."""
    top = space.weyl.M
    a = key[0]
    if a and a[0][0] > top:
        top = a[0][0]
    return top


def b_bound(space, key):
    """b(m) kills (or acts by zero on) the monomial for every m above this."""
    if space.heis_kind == "chi":
        return space.heis.chi.tail_zero_above
    top = space.heis.P
    b = key[2]
    if b and b[0][0] > top:
        top = b[0][0]
    return top


def vector_bounds(vector):
    """Per-vector (a, a*, b) annihilation bounds; None entries if no factor."""
    space = vector.space
    ab = sb = bb = None
    for key in vector.terms:
        if space.weyl is not None:
            ka = a_bound(space, key)
            ks = astar_bound(space, key)
            ab = ka if ab is None else max(ab, ka)
            sb = ks if sb is None else max(sb, ks)
        if space.heis is not None:
            kb = b_bound(space, key)
            bb = kb if bb is None else max(bb, kb)
    if space.weyl is not None and ab is None:
        ab, sb = space.weyl.N, space.weyl.M
    if space.heis is not None and bb is None:
        bb = (
            space.heis.chi.tail_zero_above
            if space.heis_kind == "chi"
            else space.heis.P
        )
    return ab, sb, bb


# -- degree-truncated bases --------------------------------------------------


def _partitions_upto(limit):
    """Map d -> list of (depth, exp) tuples of total weight d, depths >= 1."""
    table = {d: [] for d in range(limit + 1)}

    def rec(prefix, total, max_depth):
        table[total].append(prefix)
        for depth in range(min(max_depth, limit - total), 0, -1):
            for exp in range(1, (limit - total) // depth + 1):
                rec(prefix + ((depth, exp),), total + depth * exp, depth - 1)

    rec((), 0, limit)
    for d in table:
        table[d].sort()
    return table


def basis_up_to(space, max_degree, cap=None):
    """All monomials of degree <= max_degree in deterministic order.

    Spaces with a Weyl factor admit a*(0) of degree zero, so the a*(0)
    exponent must be capped for the space to be finite dimensional.
    """
    if max_degree < 0:
        raise ValueError("max_degree must be >= 0")
    if space.weyl is not None and cap is None:
        raise MissingCapError(
            "a*(0) has degree 0; basis_up_to needs an exponent cap",
            operation="basis_up_to",
        )
    parts = _partitions_upto(max_degree)
    has_weyl = space.weyl is not None
    has_b = space.heis_kind == "whittaker"
    out = []
    for da in range(max_degree + 1):
        for a_part in parts[da] if has_weyl else ([()] if da == 0 else []):
            for ds in range(max_degree - da + 1):
                s_bases = parts[ds] if has_weyl else ([()] if ds == 0 else [])
                zero_exps = range(cap + 1) if has_weyl else (0,)
                for s_part in s_bases:
                    for z in zero_exps:
                        s_full = s_part + ((0, z),) if z else s_part
                        for db in range(max_degree - da - ds + 1):
                            for b_part in parts[db] if has_b else (
                                [()] if db == 0 else []
                            ):
                                out.append((a_part, s_full, b_part))
    out.sort(key=monomial_sort_key)
    return out
