"""Truncated formal group law arithmetic.

A formal group law ``F(u, v) = u + v + sum a_ij u^i v^j`` is stored as its
coefficient table over a coefficient :class:`~okc.algebra.Ring`.  Power
series in variables ``u_1, ..., u_r`` are :class:`TruncSeries`: polynomials
over the coefficient ring extended by the series variables, with every
monomial of series degree above ``trunc`` discarded.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Mapping, Sequence

from .algebra import Poly, Ring, RingMismatchError, ZZ

__all__ = [
    "ZZ_BETA",
    "FormalGroupLaw",
    "TruncSeries",
    "AssociativityReport",
    "series_ring",
    "fgl_multiplicative",
    "fgl_additive",
    "formal_sum",
    "multiple",
    "n_series",
    "formal_inverse",
    "multi_sum",
    "support_decompose",
    "reconstruct",
    "verify_associativity",
]

# Coefficient ring of connective K-theory; beta has cohomological degree -1.
ZZ_BETA = Ring(("beta",), weights=(-1,), name="Z[beta]")


@lru_cache(maxsize=None)
def series_ring(coeff: Ring, names: tuple[str, ...], trunc: int) -> Ring:
    """``coeff[[names]]`` truncated above total degree ``trunc`` in ``names``."""
    clash = set(names) & set(coeff.variables)
    if clash:
        raise ValueError(f"series variables {sorted(clash)} clash with coefficient variables")
    return coeff.extend(names, weights=(1,) * len(names), trunc=trunc)


class TruncSeries:
    """Power series in ``names`` over ``coeff``, truncated above degree ``trunc``."""

    __slots__ = ("coeff", "names", "trunc", "poly")

    def __init__(self, coeff: Ring, names: Sequence[str], trunc: int, poly: Poly | None = None):
        self.coeff = coeff
        self.names = tuple(names)
        self.trunc = trunc
        ring = series_ring(coeff, self.names, trunc)
        if poly is None:
            poly = ring.zero()
        elif poly.ring != ring:
            poly = poly.lift(ring)
        self.poly = poly

    @classmethod
    def var(cls, coeff: Ring, names: Sequence[str], trunc: int, name: str) -> "TruncSeries":
        ring = series_ring(coeff, tuple(names), trunc)
        return cls(coeff, names, trunc, ring.gen(name))

    @property
    def ring(self) -> Ring:
        return self.poly.ring

    def _wrap(self, poly: Poly) -> "TruncSeries":
        return TruncSeries(self.coeff, self.names, self.trunc, poly)

    def _other(self, other) -> Poly:
        if isinstance(other, TruncSeries):
            if other.ring != self.ring:
                raise RingMismatchError("series over different rings or truncations")
            return other.poly
        if isinstance(other, Poly):
            return other.lift(self.ring)
        return self.ring.const(other)

    def __add__(self, other):
        return self._wrap(self.poly + self._other(other))

    __radd__ = __add__

    def __sub__(self, other):
        return self._wrap(self.poly - self._other(other))

    def __rsub__(self, other):
        return self._wrap(self._other(other) - self.poly)

    def __neg__(self):
        return self._wrap(-self.poly)

    def __mul__(self, other):
        return self._wrap(self.poly * self._other(other))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        return self._wrap(self.poly**k)

    def __eq__(self, other):
        if isinstance(other, (TruncSeries, Poly, int)):
            try:
                return self.poly == self._other(other)
            except (RingMismatchError, KeyError):
                return False
        return NotImplemented

    def __hash__(self):
        return hash(self.poly)

    def __bool__(self):
        return bool(self.poly)

    def series_exponents(self, e) -> tuple[int, ...]:
        return tuple(e[self.coeff.nvars:])

    def constant_part(self) -> Poly:
        """Coefficient of the series-degree-0 monomial."""
        k = self.coeff.nvars
        terms = {e[:k]: c for e, c in self.poly.terms.items() if not any(e[k:])}
        return Poly(self.coeff, terms)

    def homogeneous_part(self, degree: int) -> "TruncSeries":
        k = self.coeff.nvars
        terms = {e: c for e, c in self.poly.terms.items() if sum(e[k:]) == degree}
        return self._wrap(Poly(self.ring, terms))

    def coefficients(self) -> dict[tuple[int, ...], Poly]:
        """Map series exponent vector -> coefficient in ``coeff``."""
        k = self.coeff.nvars
        groups: dict[tuple[int, ...], dict] = {}
        for e, c in self.poly.terms.items():
            groups.setdefault(e[k:], {})[e[:k]] = c
        return {s: Poly(self.coeff, t) for s, t in groups.items()}

    def __str__(self):
        return str(self.poly)

    def __repr__(self):
        return f"TruncSeries({self.poly}, trunc={self.trunc})"


class FormalGroupLaw:
    """Coefficient table ``a_ij`` (``i, j >= 1``, ``i + j <= trunc + 1``) of a commutative law.

    Missing mirror entries are filled in; conflicting ones raise ``ValueError``.
    """

    __slots__ = ("ring", "trunc", "coeffs", "name")

    def __init__(self, ring: Ring, coeffs: Mapping[tuple[int, int], Poly | int], trunc: int, name: str = ""):
        if trunc < 1:
            raise ValueError("truncation must be at least 1")
        table: dict[tuple[int, int], Poly] = {}
        for (i, j), c in coeffs.items():
            if i < 1 or j < 1:
                raise ValueError(f"coefficient index {(i, j)} must have i, j >= 1")
            if i + j > trunc + 1:
                raise ValueError(f"coefficient index {(i, j)} exceeds i + j <= {trunc + 1}")
            c = ring.const(c) if isinstance(c, int) else c
            if c.ring != ring:
                raise RingMismatchError(f"coefficient a_{i}{j} is not in {ring}")
            table[(i, j)] = c
        for (i, j), c in list(table.items()):
            mirror = table.get((j, i))
            if mirror is None:
                table[(j, i)] = c
            elif mirror != c:
                raise ValueError(f"law is not commutative: a_{i}{j} = {c} but a_{j}{i} = {mirror}")
        self.ring = ring
        self.trunc = trunc
        self.coeffs = {k: v for k, v in sorted(table.items()) if v}
        self.name = name

    def coeff(self, i: int, j: int) -> Poly:
        return self.coeffs.get((i, j), self.ring.zero())

    def with_trunc(self, trunc: int) -> "FormalGroupLaw":
        """The same law known to a lower order."""
        if trunc > self.trunc:
            raise ValueError(f"law is only known through truncation {self.trunc}")
        kept = {k: v for k, v in self.coeffs.items() if sum(k) <= trunc + 1}
        return FormalGroupLaw(self.ring, kept, trunc, self.name)

    def series(self, names: Sequence[str] = ("u", "v"), trunc: int | None = None) -> TruncSeries:
        """``F(u, v)`` itself; by default every stored coefficient is shown."""
        trunc = self.trunc + 1 if trunc is None else trunc
        u = TruncSeries.var(self.ring, names, trunc, names[0])
        v = TruncSeries.var(self.ring, names, trunc, names[1])
        return formal_sum(self, u, v)

    def __str__(self):
        return str(self.series())

    def __repr__(self):
        return f"FormalGroupLaw({self}, ring={self.ring}, trunc={self.trunc})"


def fgl_multiplicative(trunc: int) -> FormalGroupLaw:
    """``u + v - beta*u*v`` over ``Z[beta]``."""
    beta = ZZ_BETA.gen("beta")
    return FormalGroupLaw(ZZ_BETA, {(1, 1): -beta}, trunc, name="multiplicative")


def fgl_additive(trunc: int) -> FormalGroupLaw:
    return FormalGroupLaw(ZZ, {}, trunc, name="additive")


def _check_summand(F: FormalGroupLaw, s: TruncSeries):
    if s.coeff != F.ring:
        raise RingMismatchError(f"series coefficients in {s.coeff}, law over {F.ring}")
    if s.constant_part():
        raise ValueError("formal sum needs series without constant term")
    if s.trunc > F.trunc + 1:
        raise ValueError(f"series truncation {s.trunc} exceeds what the law determines ({F.trunc + 1})")


def formal_sum(F: FormalGroupLaw, s: TruncSeries, t: TruncSeries) -> TruncSeries:
    """``F(s, t)`` truncated at the series' truncation degree."""
    if s.ring != t.ring:
        raise RingMismatchError("summands live in different series rings")
    _check_summand(F, s)
    _check_summand(F, t)
    ring = s.ring
    out = s.poly + t.poly
    if not F.coeffs or not s or not t:
        return s._wrap(out)
    N = s.trunc
    s_pows = [ring.one(), s.poly]
    t_pows = [ring.one(), t.poly]
    for (i, j), a in F.coeffs.items():
        if i + j > N:
            continue
        while len(s_pows) <= i:
            s_pows.append(s_pows[-1] * s.poly)
        while len(t_pows) <= j:
            t_pows.append(t_pows[-1] * t.poly)
        out = out + a.lift(ring) * (s_pows[i] * t_pows[j])
    return s._wrap(out)


def formal_inverse(F: FormalGroupLaw, name: str = "u", names: Sequence[str] | None = None) -> TruncSeries:
    """The series ``i(u)`` with ``F(u, i(u)) = 0``, solved one degree at a time."""
    names = tuple(names) if names is not None else (name,)
    u = TruncSeries.var(F.ring, names, F.trunc, name)
    return _inverse_of(F, u)


def _inverse_of(F: FormalGroupLaw, s: TruncSeries) -> TruncSeries:
    inv = -s
    # F(s, inv + d) = F(s, inv) + d * (1 + O(s)); each pass fixes one more degree
    for _ in range(s.trunc):
        err = formal_sum(F, s, inv)
        if not err:
            break
        inv = inv - err
    return inv


def multiple(F: FormalGroupLaw, n: int, s: TruncSeries) -> TruncSeries:
    """``[n]_F s`` via ``[k+1]s = F([k]s, s)``; negative ``n`` uses the formal inverse."""
    if n == 0:
        return s._wrap(s.ring.zero())
    base = s if n > 0 else _inverse_of(F, s)
    result = base
    for _ in range(abs(n) - 1):
        result = formal_sum(F, result, base)
    return result


def n_series(F: FormalGroupLaw, n: int, name: str = "u") -> TruncSeries:
    u = TruncSeries.var(F.ring, (name,), F.trunc, name)
    return multiple(F, n, u)


def default_names(r: int) -> tuple[str, ...]:
    return ("u",) if r == 1 else tuple(f"u{i}" for i in range(1, r + 1))


def multi_sum(F: FormalGroupLaw, multiplicities: Sequence[int], names: Sequence[str] | None = None) -> TruncSeries:
    """``[n_1]u_1 +_F ... +_F [n_r]u_r``, folded from the left."""
    ns = list(multiplicities)
    if not ns:
        raise ValueError("multi_sum needs at least one multiplicity")
    names = tuple(names) if names is not None else default_names(len(ns))
    if len(names) != len(ns):
        raise ValueError("one variable name per multiplicity")
    gens = [TruncSeries.var(F.ring, names, F.trunc, x) for x in names]
    acc = multiple(F, ns[0], gens[0])
    for n, u in zip(ns[1:], gens[1:]):
        acc = formal_sum(F, acc, multiple(F, n, u))
    return acc


def support_decompose(S: TruncSeries) -> dict[tuple[int, ...], TruncSeries]:
    """Write ``S = sum_I G_I * u_I`` with ``G_I`` involving only the variables in ``I``.

    Keys are sorted tuples of 1-based variable indices; ``G_I`` collects the
    monomials of ``S`` whose variable support is exactly ``I``, divided by
    ``u_I``.
    """
    if S.constant_part():
        raise ValueError("support decomposition needs a series without constant term")
    k = S.coeff.nvars
    groups: dict[tuple[int, ...], dict] = {}
    for e, c in S.poly.terms.items():
        tail = e[k:]
        support = tuple(i + 1 for i, x in enumerate(tail) if x)
        reduced = e[:k] + tuple(x - 1 if x else 0 for x in tail)
        groups.setdefault(support, {})[reduced] = c
    return {I: S._wrap(Poly(S.ring, groups[I])) for I in sorted(groups, key=lambda I: (len(I), I))}


def reconstruct(decomposition: Mapping[tuple[int, ...], TruncSeries], like: TruncSeries) -> TruncSeries:
    """``sum_I G_I * u_I`` in the ring of ``like``."""
    total = like._wrap(like.ring.zero())
    for I, G in decomposition.items():
        u_I = like.ring.one()
        for i in I:
            u_I = u_I * like.ring.gen(like.names[i - 1])
        total = total + G.poly * u_I
    return total


@dataclass(frozen=True)
class AssociativityReport:
    law: str
    degree: int
    failures: tuple[tuple[tuple[int, int, int], str], ...]

    @property
    def passed(self) -> bool:
        return not self.failures

    def __bool__(self):
        return self.passed


def verify_associativity(F: FormalGroupLaw) -> AssociativityReport:
    """Nonzero coefficients of ``F(F(u,v),w) - F(u,F(v,w))`` through degree ``trunc + 1``."""
    names = ("u", "v", "w")
    N = F.trunc + 1
    u, v, w = (TruncSeries.var(F.ring, names, N, x) for x in names)
    diff = formal_sum(F, formal_sum(F, u, v), w) - formal_sum(F, u, formal_sum(F, v, w))
    failures = tuple(
        (tuple(e), str(c)) for e, c in sorted(diff.coefficients().items(), key=lambda t: (sum(t[0]), t[0]))
    )
    return AssociativityReport(F.name or "law", N, failures)
