"""K-theory, Borel-Moore and Chow models of multiprojective spaces.

For ``P = P^{d_1} x ... x P^{d_s}`` the Grothendieck ring is presented as
``Z[x_1..x_s] / (x_i^{d_i+1})`` with ``x_i = 1 - [O_i(-1)]``.  The class of
the structure sheaf of a product of linear subspaces of codimensions
``c_i`` is the monomial ``prod x_i^{c_i}``, whose support has dimension
``sum(d_i - c_i)``.

Borel-Moore classes are Laurent polynomials in ``beta`` with K-theory
coefficients; ``beta`` has homological degree +1, so the fundamental class
of ``P`` is ``beta^d * 1``.  The first Chern class operator of ``L`` is
multiplication by ``beta^-1 (1 - [L^-1])``; with this sign convention
``c1(O(1))`` of the fundamental class is ``beta`` times a hyperplane.

Connective classes at level ``n`` are K-classes in the span ``F_n`` of
monomials whose support has dimension at most ``n``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Sequence

from .algebra import Exps, Poly, Ring, monomial_key, poly_invert_unit

__all__ = [
    "MultiProj",
    "BMClass",
    "ConnectiveClass",
    "FiltrationError",
    "k_ring",
    "bm_ring",
    "chow_ring",
    "class_of_bundle",
    "class_of_linear_stratum",
    "chern_multiplier",
    "chern_operator",
    "monomial_dimension",
    "filtration_level",
    "connective_group",
    "beta_inclusion",
    "gr_map",
    "pullback_projection",
    "pullback_linear",
    "pushforward_linear",
    "k_class_to_json",
]


class FiltrationError(ValueError):
    """A class does not lie in the requested filtration level."""


@dataclass(frozen=True)
class MultiProj:
    dims: tuple[int, ...]

    def __post_init__(self):
        dims = tuple(int(d) for d in self.dims)
        if not dims:
            raise ValueError("a multiprojective space needs at least one factor")
        if any(d < 0 for d in dims):
            raise ValueError(f"negative dimension in {dims}")
        object.__setattr__(self, "dims", dims)

    @property
    def d(self) -> int:
        return sum(self.dims)

    @property
    def s(self) -> int:
        return len(self.dims)

    def __mul__(self, other: "MultiProj") -> "MultiProj":
        return MultiProj(self.dims + other.dims)

    def __str__(self):
        return " x ".join(f"P^{d}" for d in self.dims)

    def to_json(self) -> dict:
        return {"dims": list(self.dims)}


def _names(prefix: str, s: int) -> tuple[str, ...]:
    return (prefix,) if s == 1 else tuple(f"{prefix}{i}" for i in range(1, s + 1))


@lru_cache(maxsize=None)
def k_ring(P: MultiProj) -> Ring:
    return Ring(
        _names("x", P.s),
        nilpotency=tuple(d + 1 for d in P.dims),
        name=f"K0({P})",
    )


@lru_cache(maxsize=None)
def bm_ring(P: MultiProj) -> Ring:
    return Ring(
        ("beta",) + _names("x", P.s),
        weights=(1,) + (0,) * P.s,
        nilpotency=(None,) + tuple(d + 1 for d in P.dims),
        laurent=(True,) + (False,) * P.s,
        name=f"G0({P})[beta,beta^-1]",
    )


@lru_cache(maxsize=None)
def chow_ring(P: MultiProj) -> Ring:
    return Ring(
        _names("h", P.s),
        weights=(1,) * P.s,
        nilpotency=tuple(d + 1 for d in P.dims),
        name=f"CH({P})",
    )


def _check_k(P: MultiProj, kappa: Poly):
    if kappa.ring != k_ring(P):
        raise ValueError(f"class lives in {kappa.ring}, expected {k_ring(P)}")


def class_of_bundle(P: MultiProj, a: Sequence[int]) -> Poly:
    """``[O(a_1, ..., a_s)] = prod (1 - x_i)^(-a_i)``."""
    a = tuple(a)
    if len(a) != P.s:
        raise ValueError(f"multidegree {a} does not match {P}")
    R = k_ring(P)
    out = R.one()
    for x, ai in zip(R.gens(), a):
        if ai:
            base = 1 - x
            out = out * (poly_invert_unit(base) ** ai if ai > 0 else base ** (-ai))
    return out


def class_of_linear_stratum(P: MultiProj, codims: Sequence[int]) -> Poly:
    codims = tuple(codims)
    if len(codims) != P.s or any(c < 0 or c > d for c, d in zip(codims, P.dims)):
        raise ValueError(f"codimensions {codims} out of range for {P}")
    return k_ring(P).monomial(codims)


class BMClass:
    """Element of ``G_0(P)[beta, beta^-1]``."""

    __slots__ = ("space", "poly")

    def __init__(self, space: MultiProj, poly: Poly):
        if poly.ring != bm_ring(space):
            poly = poly.lift(bm_ring(space))
        self.space = space
        self.poly = poly

    @classmethod
    def from_k(cls, space: MultiProj, kappa: Poly, beta_exp: int = 0) -> "BMClass":
        _check_k(space, kappa)
        R = bm_ring(space)
        return cls(space, kappa.lift(R) * R.monomial((beta_exp,) + (0,) * space.s))

    @classmethod
    def fundamental(cls, space: MultiProj) -> "BMClass":
        return cls.from_k(space, k_ring(space).one(), space.d)

    @classmethod
    def zero(cls, space: MultiProj) -> "BMClass":
        return cls(space, bm_ring(space).zero())

    def beta_terms(self) -> dict[int, Poly]:
        """Map beta exponent (homological degree) -> K-theory coefficient."""
        K = k_ring(self.space)
        groups: dict[int, dict] = {}
        for e, c in self.poly.terms.items():
            groups.setdefault(e[0], {})[e[1:]] = c
        return {k: Poly(K, groups[k]) for k in sorted(groups)}

    def degrees(self) -> list[int]:
        return sorted({e[0] for e in self.poly.terms})

    def _same(self, other: "BMClass"):
        if not isinstance(other, BMClass) or other.space != self.space:
            raise ValueError("classes on different spaces")

    def __add__(self, other):
        self._same(other)
        return BMClass(self.space, self.poly + other.poly)

    def __sub__(self, other):
        self._same(other)
        return BMClass(self.space, self.poly - other.poly)

    def __neg__(self):
        return BMClass(self.space, -self.poly)

    def __mul__(self, other):
        if isinstance(other, int):
            return BMClass(self.space, self.poly * other)
        if isinstance(other, Poly):
            return BMClass(self.space, self.poly * other.lift(self.poly.ring))
        return NotImplemented

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, BMClass):
            return NotImplemented
        return self.space == other.space and self.poly == other.poly

    def __hash__(self):
        return hash((self.space, self.poly))

    def __bool__(self):
        return bool(self.poly)

    def __str__(self):
        return str(self.poly)

    def __repr__(self):
        return f"BMClass({self.poly} on {self.space})"

    def to_json(self) -> dict:
        return {
            "space": self.space.to_json(),
            "beta_terms": [{"exp": k, "poly": _poly_json(v)} for k, v in self.beta_terms().items()],
        }

    @classmethod
    def from_json(cls, data: dict) -> "BMClass":
        space = MultiProj(tuple(data["space"]["dims"]))
        R = bm_ring(space)
        terms = {}
        for term in data["beta_terms"]:
            for key, c in term["poly"].items():
                exps = tuple(int(x) for x in key.split(",")) if key else ()
                if len(exps) != space.s:
                    raise ValueError(f"exponent key {key!r} does not match {space}")
                terms[(int(term["exp"]),) + exps] = int(c)
        return cls(space, Poly(R, terms))

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


def _poly_json(p: Poly) -> dict[str, int]:
    return {",".join(map(str, e)): c for e, c in p.items()}


def k_class_to_json(P: MultiProj, kappa: Poly) -> dict:
    """A K-class in the Borel-Moore schema, as a single beta^0 term."""
    return BMClass.from_k(P, kappa).to_json()


def chern_multiplier(P: MultiProj, a: Sequence[int]) -> Poly:
    """``beta^-1 (1 - [O(-a)])`` in the Borel-Moore ring."""
    R = bm_ring(P)
    y = 1 - class_of_bundle(P, [-x for x in a])
    return y.lift(R) * R.monomial((-1,) + (0,) * P.s)


def chern_operator(P: MultiProj, a: Sequence[int], alpha: BMClass) -> BMClass:
    """First Chern class operator of ``O(a)`` applied to ``alpha``."""
    if alpha.space != P:
        raise ValueError("class does not live on this space")
    return BMClass(P, chern_multiplier(P, a) * alpha.poly)


def monomial_dimension(P: MultiProj, e: Exps) -> int:
    return sum(d - c for d, c in zip(P.dims, e))


def filtration_level(P: MultiProj, kappa: Poly) -> int:
    """Smallest ``n`` with ``kappa`` in ``F_n``."""
    _check_k(P, kappa)
    if not kappa:
        raise ValueError("the zero class has no filtration level")
    return max(monomial_dimension(P, e) for e in kappa.terms)


def connective_group(P: MultiProj, n: int) -> list[Poly]:
    """Monomial basis of ``F_n``."""
    R = k_ring(P)
    monos = [e for e in product(*(range(d + 1) for d in P.dims)) if monomial_dimension(P, e) <= n]
    return [R.monomial(e) for e in sorted(monos, key=monomial_key)]


@dataclass(frozen=True)
class ConnectiveClass:
    """A class of ``F_level``; models the (2n, n) connective group at ``n = level``."""

    space: MultiProj
    level: int
    value: Poly

    def __post_init__(self):
        _check_k(self.space, self.value)
        if self.value and filtration_level(self.space, self.value) > self.level:
            raise FiltrationError(
                f"{self.value} has level {filtration_level(self.space, self.value)} > {self.level}"
            )

    def __add__(self, other: "ConnectiveClass") -> "ConnectiveClass":
        if other.space != self.space or other.level != self.level:
            raise ValueError("connective classes of different spaces or levels")
        return ConnectiveClass(self.space, self.level, self.value + other.value)

    def __str__(self):
        return f"({self.level}, {self.value})"


def beta_inclusion(P: MultiProj, c: ConnectiveClass) -> ConnectiveClass:
    if c.space != P:
        raise ValueError("class does not live on this space")
    return ConnectiveClass(P, c.level + 1, c.value)


def gr_map(P: MultiProj, c: ConnectiveClass) -> Poly:
    """Leading part in ``F_n / F_{n-1}``, read as a cycle of dimension ``n``."""
    if c.space != P:
        raise ValueError("class does not live on this space")
    C = chow_ring(P)
    terms = {e: k for e, k in c.value.terms.items() if monomial_dimension(P, e) == c.level}
    return Poly(C, terms)


def _projection_factors(source: MultiProj, target: MultiProj, factors: Sequence[int] | None) -> tuple[int, ...]:
    if factors is None:
        factors = tuple(range(target.s))
    factors = tuple(factors)
    if len(factors) != target.s or len(set(factors)) != len(factors):
        raise ValueError("need one distinct source factor per target factor")
    for i, f in enumerate(factors):
        if not 0 <= f < source.s or source.dims[f] != target.dims[i]:
            raise ValueError(f"factor {f} of {source} does not match factor {i} of {target}")
    return factors


def pullback_projection(source: MultiProj, target: MultiProj, kappa: Poly, factors: Sequence[int] | None = None) -> Poly:
    """Pull back along the projection ``source -> target`` onto the given factors."""
    _check_k(target, kappa)
    factors = _projection_factors(source, target, factors)
    terms = {}
    for e, c in kappa.terms.items():
        f = [0] * source.s
        for i, x in enumerate(e):
            f[factors[i]] = x
        terms[tuple(f)] = c
    return Poly(k_ring(source), terms)


def _check_linear(sub: MultiProj, ambient: MultiProj):
    if sub.s != ambient.s or any(a > b for a, b in zip(sub.dims, ambient.dims)):
        raise ValueError(f"{sub} is not a linear subspace of {ambient}")


def pullback_linear(sub: MultiProj, ambient: MultiProj, kappa: Poly) -> Poly:
    """Restrict to a product of linear subspaces: ``x_i -> x_i`` with tighter nilpotency."""
    _check_linear(sub, ambient)
    _check_k(ambient, kappa)
    return Poly(k_ring(sub), dict(kappa.terms))


def pushforward_linear(sub: MultiProj, ambient: MultiProj, lam: Poly) -> Poly:
    """Push forward from a product of linear subspaces: multiply by ``prod x_i^{codim_i}``."""
    _check_linear(sub, ambient)
    _check_k(sub, lam)
    codims = tuple(b - a for a, b in zip(sub.dims, ambient.dims))
    return Poly(k_ring(ambient), dict(lam.terms)) * class_of_linear_stratum(ambient, codims)
