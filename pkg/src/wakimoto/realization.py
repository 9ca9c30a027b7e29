"""Composite affine sl2 fields on (Weyl) x (Heisenberg) tensor modules.

Convention handbook
-------------------

Field expansions (fixed project wide):

    x(z)  = sum_n x(n) z^(-n-1)   for x in {e, f, h} and for a, b
    a*(z) = sum_n a*(n) z^(-n)
    L(z)  = sum_n L(n) z^(-n-2),  T(z) = sum_n T(n) z^(-n-2)

Generator fields of the free-field realization:

    e(z) = a(z)
    h(z) = -2 :a*(z) a(z): + b(z)
    f(z) = -:a*(z) a*(z) a(z): + kappa d/dz a*(z) + a*(z) b(z)

Oscillator normal ordering places annihilation-side modes (a(n) n >= 0,
a*(j) j >= 1, b(n) n >= 0) to the right of creation-side modes; within one
side all modes commute, so this is well defined.  The resulting closed-form
mode expansions, with the convention above, are

    e(n) = a(n)
    h(n) = -2 [ sum_{j<=0} a*(j) a(n-j)  +  sum_{j>=1} a(n-j) a*(j) ] + b(n)
    f(n) = - sum_{j1+j2+k=n} NO( a*(j1) a*(j2) a(k) )  -  kappa n a*(n)
           + sum_{j+k=n} NO( a*(j) b(k) )

On each vector only finitely many summands act: annihilation-side indices
are bounded by the eigenvalue supports and the factor depths of the vector
(exact bounds, never a heuristic cutoff), and the fixed total index then
bounds every other index.

Sugawara modes are read off the free-field conformal vector
a(-1)a*(-1)1 + (b(-1)^2 - 2 b(-2)) / (4(kappa+2)):

    L(n) = sum_{j+m=n} (-m) NO( a(j) a*(m) )
           + [ sum_{k1+k2=n} NO( b(k1) b(k2) ) + 2(n+1) b(n) ] / (4(kappa+2))

At the critical level kappa = -2 the central field is assembled from the
generator fields with the affine normal ordering
:x(m) y(l): = x(m) y(l) for m <= -1 and y(l) x(m) otherwise:

    T(n) = sum_m [ :e(m) f(n-m): + :f(m) e(n-m): + (1/2) :h(m) h(n-m): ]

This normalization (twice the mode algebra of the vector
(e(-1)f(-1) + f(-1)e(-1) + h(-1)^2/2)1 / 2) is the one under which T(n)
acts on W (x) L(chi~) by the modes of (chi^2 + 2 chi')/2 with chi = -chi~;
it is pinned by the theta-identity suite.
"""

from .errors import (
    CriticalLevelError,
    ModuleMismatchError,
    NotCriticalError,
    UnsupportedModeError,
)
from .fock import (
    ChiModuleData,
    FockVector,
    HeisWhittakerData,
    ModuleSpace,
    WhittakerData,
    a_bound,
    astar_bound,
    b_bound,
)
from .scalars import ZERO, as_rational

CRITICAL = as_rational(-2)

GENERATORS = ("e", "f", "h")


class AffineMode:
    """A mode x(n) of e, f, h, or of the quadratic fields L, T."""

    __slots__ = ("gen", "n")

    def __init__(self, gen, n):
        if gen not in ("e", "f", "h", "L", "T"):
            raise ValueError(f"unknown generator {gen!r}")
        self.gen = gen
        self.n = int(n)

    def __eq__(self, other):
        return (
            isinstance(other, AffineMode)
            and self.gen == other.gen
            and self.n == other.n
        )

    def __hash__(self):
        return hash((self.gen, self.n))

    def __repr__(self):
        return f"{self.gen}({self.n})"


class WakimotoContext:
    """Level plus the tensor module the composite fields act on.

    The Heisenberg factor fixes the level: a Whittaker factor must carry
    level kappa+2, a one-dimensional chi factor forces kappa = -2.
    """

    __slots__ = ("kappa", "space")

    def __init__(self, kappa, weyl, heis):
        self.kappa = as_rational(kappa)
        if weyl is None or heis is None:
            raise ValueError("Wakimoto modules need both tensor factors")
        if isinstance(heis, ChiModuleData):
            if self.kappa != CRITICAL:
                raise ValueError("one-dimensional chi modules require kappa = -2")
        elif isinstance(heis, HeisWhittakerData):
            if heis.level != self.kappa + 2:
                raise ValueError(
                    f"Heisenberg level {heis.level} does not match kappa+2 = "
                    f"{self.kappa + 2}"
                )
        self.space = ModuleSpace(weyl=weyl, heis=heis)

    @property
    def is_critical(self):
        return self.kappa == CRITICAL

    def cyclic(self):
        return self.space.cyclic()

    def params(self):
        out = {"kappa": str(self.kappa)}
        out.update(self.space.params())
        return out


def context(kappa, lam=None, mu=None, eta=None, chi_tilde=None):
    """Convenience builder: Whittaker data tables or a chi window."""
    kappa = as_rational(kappa)
    weyl = WhittakerData(lam, mu)
    if chi_tilde is not None:
        if eta:
            raise ValueError("give either eta or chi_tilde, not both")
        return WakimotoContext(kappa, weyl, ChiModuleData(chi_tilde))
    heis = HeisWhittakerData(eta, level=kappa + 2)
    return WakimotoContext(kappa, weyl, heis)


# -- normal ordering helpers -------------------------------------------------


def _is_annihilation(kind, n):
    if kind == "a":
        return n >= 0
    if kind == "a*":
        return n >= 1
    return n >= 0  # b


def _left_factor_stays(m):
    """Affine normal-ordering boundary for the quadratic fields."""
    return m <= -1


def _apply_modes(space, modes, key):
    """Apply (kind, index) modes to a monomial, first element acts first."""
    terms = ((key, as_rational(1)),)
    for kind, idx in modes:
        out = {}
        for k, c in terms:
            single = (
                space.heis_single(idx, k)
                if kind == "b"
                else space.weyl_single(kind, idx, k)
            )
            for k2, f in single:
                value = c * f
                acc = out.get(k2)
                if acc is None:
                    out[k2] = value
                else:
                    acc = acc + value
                    if acc == ZERO:
                        del out[k2]
                    else:
                        out[k2] = acc
        terms = tuple(out.items())
        if not terms:
            return terms
    return terms


def _normal_ordered(space, factors, key):
    """NO(factors) on a monomial: annihilation side acts first."""
    ann = [f for f in factors if _is_annihilation(*f)]
    cre = [f for f in factors if not _is_annihilation(*f)]
    return _apply_modes(space, ann + cre, key)


def _enum_bounds(space, key):
    """(a+, s+, b+) upper contribution bounds for oscillator indices."""
    a_plus = max(-1, a_bound(space, key))
    s_plus = max(0, astar_bound(space, key))
    if space.heis_kind == "chi":
        b_plus = space.heis.chi.tail_zero_above
    else:
        b_plus = max(-1, b_bound(space, key))
    return a_plus, s_plus, b_plus


# -- composite generator modes on one monomial --------------------------------


def _accumulate(out, terms, coeff):
    for k, c in terms:
        value = coeff * c
        acc = out.get(k)
        if acc is None:
            out[k] = value
        else:
            acc = acc + value
            if acc == ZERO:
                del out[k]
            else:
                out[k] = acc


def _h_mono(space, kappa, n, key):
    out = {}
    a_plus, s_plus, _ = _enum_bounds(space, key)
    minus_two = as_rational(-2)
    for j in range(n - a_plus, 1):  # a*(j) a(n-j), j <= 0
        terms = _apply_modes(space, (("a", n - j), ("a*", j)), key)
        _accumulate(out, terms, minus_two)
    s_top = astar_bound(space, key)
    for j in range(1, s_top + 1):  # a(n-j) a*(j), j >= 1
        terms = _apply_modes(space, (("a*", j), ("a", n - j)), key)
        _accumulate(out, terms, minus_two)
    _accumulate(out, space.heis_single(n, key), as_rational(1))
    return tuple(out.items())


def _f_mono(space, kappa, n, key):
    out = {}
    a_plus, s_plus, b_plus = _enum_bounds(space, key)
    minus_one = as_rational(-1)
    for j1 in range(n - a_plus - s_plus, s_plus + 1):
        for j2 in range(n - a_plus - j1, s_plus + 1):
            k = n - j1 - j2
            terms = _normal_ordered(
                space, (("a*", j1), ("a*", j2), ("a", k)), key
            )
            _accumulate(out, terms, minus_one)
    if n != 0 and kappa != ZERO:
        s_top = astar_bound(space, key)
        if n <= 0 or n <= s_top:
            terms = _apply_modes(space, (("a*", n),), key)
            _accumulate(out, terms, -kappa * n)
    for j in range(n - b_plus, s_plus + 1):
        terms = _normal_ordered(space, (("a*", j), ("b", n - j)), key)
        _accumulate(out, terms, as_rational(1))
    return tuple(out.items())


def _sl2_single(space, kappa, gen, n, key):
    if gen == "e":
        return space.weyl_single("a", n, key)
    tag = (gen, n, key)
    hit = space._cache.get(tag)
    if hit is None:
        fn = _h_mono if gen == "h" else _f_mono
        hit = space._cache[tag] = fn(space, kappa, n, key)
    return hit


# -- per-monomial mode bounds for the quadratic fields ------------------------


def _gen_top(space, kappa, gen, key):
    """Largest l with x(l) acting nontrivially on the monomial."""
    a_plus, s_plus, b_plus = _enum_bounds(space, key)
    if gen == "e":
        return a_bound(space, key)
    if gen == "h":
        return max(s_plus + a_plus, b_plus)
    return max(2 * s_plus + a_plus, s_plus, s_plus + b_plus)


def _L_mono(space, kappa, n, key):
    out = {}
    a_plus, s_plus, b_plus = _enum_bounds(space, key)
    for m in range(n - a_plus, s_plus + 1):  # (-m) NO(a(n-m) a*(m))
        if m == 0:
            continue
        terms = _normal_ordered(space, (("a", n - m), ("a*", m)), key)
        _accumulate(out, terms, as_rational(-m))
    quarter = as_rational(1) / (4 * (kappa + 2))
    for k1 in range(n - b_plus, b_plus + 1):
        terms = _normal_ordered(space, (("b", k1), ("b", n - k1)), key)
        _accumulate(out, terms, quarter)
    _accumulate(out, space.heis_single(n, key), quarter * 2 * (n + 1))
    return tuple(out.items())


def _T_mono(space, kappa, n, key):
    out = {}
    half = as_rational(1) / 2
    for x, y, weight in (
        ("e", "f", as_rational(1)),
        ("f", "e", as_rational(1)),
        ("h", "h", half),
    ):
        x_top = _gen_top(space, kappa, x, key)
        y_top = _gen_top(space, kappa, y, key)
        for m in range(min(n - y_top, 0), max(x_top, -1) + 1):
            if _left_factor_stays(m):
                # x(m) y(n-m): the right factor acts first
                if n - m > y_top:
                    continue
                inner = _sl2_single(space, kappa, y, n - m, key)
                for k1, c1 in inner:
                    outer = _sl2_single(space, kappa, x, m, k1)
                    _accumulate(out, outer, weight * c1)
            else:
                # y(n-m) x(m): the swapped order, x acts first
                if m > x_top:
                    continue
                inner = _sl2_single(space, kappa, x, m, key)
                for k1, c1 in inner:
                    outer = _sl2_single(space, kappa, y, n - m, k1)
                    _accumulate(out, outer, weight * c1)
    return tuple(out.items())


# -- public operations --------------------------------------------------------


def _vector_apply(ctx, tag_fn, vector):
    if vector.space is not ctx.space:
        raise ModuleMismatchError(
            "vector does not live in this context's module", operation="sl2_apply"
        )
    out = {}
    for key, coeff in vector.terms.items():
        _accumulate(out, tag_fn(key), coeff)
    result = FockVector.__new__(FockVector)
    result.space = ctx.space
    result.terms = out
    return result


def sl2_apply(mode, vector, ctx):
    """Exact action of e(n), f(n) or h(n) of the free-field realization."""
    if mode.gen == "L":
        return sugawara_apply(mode.n, vector, ctx)
    if mode.gen == "T":
        return central_t_apply(mode.n, vector, ctx)
    space, kappa = ctx.space, ctx.kappa
    return _vector_apply(
        ctx, lambda key: _sl2_single(space, kappa, mode.gen, mode.n, key), vector
    )


def sugawara_apply(n, vector, ctx):
    """Virasoro mode L(n); defined away from the critical level."""
    if ctx.is_critical:
        raise CriticalLevelError(
            "L(n) is undefined at kappa = -2; use the central field T",
            operation="sugawara_apply",
        )
    space, kappa = ctx.space, ctx.kappa

    def single(key):
        tag = ("L", n, key)
        hit = space._cache.get(tag)
        if hit is None:
            hit = space._cache[tag] = _L_mono(space, kappa, n, key)
        return hit

    return _vector_apply(ctx, single, vector)


def central_t_apply(n, vector, ctx):
    """Central field mode T(n) at the critical level."""
    if not ctx.is_critical:
        raise NotCriticalError(
            f"T(n) requires kappa = -2, got kappa = {ctx.kappa}",
            operation="central_t_apply",
        )
    space, kappa = ctx.space, ctx.kappa

    def single(key):
        tag = ("T", n, key)
        hit = space._cache.get(tag)
        if hit is None:
            hit = space._cache[tag] = _T_mono(space, kappa, n, key)
        return hit

    return _vector_apply(ctx, single, vector)


def tau_mode(mode):
    """Order-two twist e(n) -> f(n), f(n) -> e(n), h(n) -> -h(n)."""
    if mode.gen == "e":
        return AffineMode("f", mode.n), as_rational(1)
    if mode.gen == "f":
        return AffineMode("e", mode.n), as_rational(1)
    if mode.gen == "h":
        return AffineMode("h", mode.n), as_rational(-1)
    raise UnsupportedModeError(
        f"tau is defined on generator modes only, not {mode.gen}",
        operation="tau_mode",
    )


def affine_bracket(x, n, y, m, kappa):
    """[x(n), y(m)] as (generator coefficient table, central scalar).

    Structure constants: [e,f] = h, [h,e] = 2e, [h,f] = -2f, forms
    (e,f) = (f,e) = 1, (h,h) = 2, central term n (x,y) delta_{n+m,0} kappa.
    """
    table = {}
    central = ZERO
    if x == y:
        if x == "h" and n + m == 0:
            central = 2 * kappa * n
        return table, central
    pair = x + y
    if pair in ("ef", "fe"):
        sign = 1 if pair == "ef" else -1
        table[("h", n + m)] = as_rational(sign)
        if n + m == 0:
            central = sign * n * kappa
    elif pair == "he":
        table[("e", n + m)] = as_rational(2)
    elif pair == "eh":
        table[("e", n + m)] = as_rational(-2)
    elif pair == "hf":
        table[("f", n + m)] = as_rational(-2)
    elif pair == "fh":
        table[("f", n + m)] = as_rational(2)
    return table, central
