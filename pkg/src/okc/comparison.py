"""Fundamental classes of complete intersections and their two specializations.

``theta_times`` inverts beta (connective class -> Borel-Moore G-theory) and
``theta_plus`` sets beta to zero (connective class -> Chow group), realized
on the filtered model as "remember the beta power" and "take the leading
graded piece" respectively.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations_with_replacement, product
from typing import Iterator, Sequence

from .algebra import Poly
from .proj import (
    BMClass,
    ConnectiveClass,
    FiltrationError,
    MultiProj,
    chow_ring,
    class_of_bundle,
    filtration_level,
    gr_map,
    k_ring,
    pullback_linear,
    pullback_projection,
    pushforward_linear,
)
from .report import Check, Report

__all__ = [
    "CompleteIntersection",
    "FundamentalClassTriple",
    "NonTransverseError",
    "fundamental_class_CK",
    "fundamental_triple",
    "theta_times",
    "theta_plus",
    "chow_oracle",
    "verify_fundamental_triangle",
    "lci_pullback_check",
    "tor_formula_check",
    "enumerate_complete_intersections",
]


class NonTransverseError(ValueError):
    pass


@dataclass(frozen=True)
class CompleteIntersection:
    """Intersection of hypersurfaces of the given multidegrees in general position."""

    ambient: MultiProj
    degrees: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        degs = tuple(tuple(int(x) for x in b) for b in self.degrees)
        for b in degs:
            if len(b) != self.ambient.s:
                raise ValueError(f"multidegree {b} does not match {self.ambient}")
            if any(x < 0 for x in b) or not any(b):
                raise ValueError(f"multidegree {b} must be nonnegative and nonzero")
        if len(degs) > self.ambient.d:
            raise ValueError(f"{len(degs)} hypersurfaces exceed the dimension of {self.ambient}")
        object.__setattr__(self, "degrees", degs)

    @classmethod
    def of(cls, dims: Sequence[int], degrees: Sequence[Sequence[int]] = ()) -> "CompleteIntersection":
        return cls(MultiProj(tuple(dims)), tuple(tuple(b) for b in degrees))

    @property
    def codim(self) -> int:
        return len(self.degrees)

    @property
    def dim(self) -> int:
        return self.ambient.d - self.codim

    def structure_sheaf(self) -> Poly:
        out = k_ring(self.ambient).one()
        for b in self.degrees:
            out = out * (1 - class_of_bundle(self.ambient, [-x for x in b]))
        return out

    def __str__(self):
        degs = ", ".join(str(list(b)) for b in self.degrees) or "none"
        return f"CI(degrees {degs}) in {self.ambient}"


@dataclass(frozen=True)
class FundamentalClassTriple:
    ck: ConnectiveClass
    g: BMClass
    ch: Poly


def fundamental_class_CK(X: CompleteIntersection) -> ConnectiveClass:
    value = X.structure_sheaf()
    # a complete intersection class always lands in F_dim; failure means a model bug
    assert not value or filtration_level(X.ambient, value) <= X.dim, f"{X} escaped F_{X.dim}"
    return ConnectiveClass(X.ambient, X.dim, value)


def theta_times(t: ConnectiveClass) -> BMClass:
    return BMClass.from_k(t.space, t.value, t.level)


def theta_plus(t: ConnectiveClass) -> Poly:
    return gr_map(t.space, t)


def fundamental_triple(X: CompleteIntersection) -> FundamentalClassTriple:
    ck = fundamental_class_CK(X)
    return FundamentalClassTriple(ck, theta_times(ck), theta_plus(ck))


def chow_oracle(X: CompleteIntersection) -> Poly:
    """Bezout: ``prod_j (sum_i b_i^(j) h_i)``, computed without K-theory."""
    C = chow_ring(X.ambient)
    out = C.one()
    for b in X.degrees:
        out = out * sum((h * bi for h, bi in zip(C.gens(), b)), C.zero())
    return out


def verify_fundamental_triangle(X: CompleteIntersection) -> Report:
    triple = fundamental_triple(X)
    oracle = chow_oracle(X)
    g_expected = BMClass.from_k(X.ambient, X.structure_sheaf(), X.dim)
    report = Report(
        f"fundamental class of {X}",
        [
            Check("theta_+([X]_CK) = [X]_CH", str(triple.ch), str(oracle), triple.ch == oracle),
            Check("theta_x([X]_CK) = beta^dim [O_X]", str(triple.g), str(g_expected), triple.g == g_expected),
        ],
    )
    report.data = {"ck": str(triple.ck), "dim": X.dim}
    return report


def _restrict_degrees(X: CompleteIntersection, sub: MultiProj) -> CompleteIntersection:
    for b in X.degrees:
        if not any(x for x, d in zip(b, sub.dims) if d > 0):
            raise NonTransverseError(f"hypersurface of degree {list(b)} is constant on {sub}")
    if len(X.degrees) > sub.d:
        raise NonTransverseError(f"{X} does not meet {sub} in the expected dimension")
    return CompleteIntersection(sub, X.degrees)


def lci_pullback_check(kind: str, X: CompleteIntersection, other: MultiProj, factors: Sequence[int] | None = None) -> Report:
    """Compare ``f^*[X]_CK`` with the fundamental class of ``f^-1(X)``.

    ``kind`` is ``"projection"`` (``f: other -> X.ambient`` onto ``factors``)
    or ``"linear"`` (``f: other -> X.ambient`` a product of linear subspaces).
    """
    P = X.ambient
    ck = fundamental_class_CK(X)
    if kind == "projection":
        if factors is None:
            factors = tuple(range(P.s))
        value = pullback_projection(other, P, ck.value, factors)
        level = ck.level + other.d - P.d
        degrees = []
        for b in X.degrees:
            full = [0] * other.s
            for i, f in enumerate(factors):
                full[f] = b[i]
            degrees.append(tuple(full))
        Y = CompleteIntersection(other, tuple(degrees))
    elif kind == "linear":
        Y = _restrict_degrees(X, other)
        value = pullback_linear(other, P, ck.value)
        level = ck.level - (P.d - other.d)
    else:
        raise ValueError(f"unknown morphism kind {kind!r}")
    try:
        pulled = ConnectiveClass(other, level, value)
    except FiltrationError as exc:
        raise NonTransverseError(str(exc)) from exc
    expected = fundamental_class_CK(Y)
    ok = pulled.level == expected.level and pulled.value == expected.value
    return Report(
        f"{kind} pullback of {X} to {other}",
        [Check("f^*[X]_CK = [f^-1 X]_CK", str(pulled), str(expected), ok)],
    )


def tor_formula_check(P: MultiProj, codims: Sequence[int], kappa: Poly) -> Report:
    """Self-intersection on a linear stratum ``H``: ``i_* i^* (i_* lam) = lambda_-1(N^v) * i_* lam``.

    ``kappa`` must be ``i_* lam`` for some class ``lam`` on ``H``; for a
    hyperplane the right side is ``(1 - [O(-1)]) * kappa``.
    """
    codims = tuple(codims)
    H = MultiProj(tuple(d - c for d, c in zip(P.dims, codims)))
    lam_terms = {}
    for e, c in kappa.terms.items():
        if any(x < k for x, k in zip(e, codims)):
            raise ValueError(f"{kappa} is not supported on the stratum of codimensions {codims}")
        lam_terms[tuple(x - k for x, k in zip(e, codims))] = c
    lam = Poly(k_ring(H), lam_terms)
    if pushforward_linear(H, P, lam) != kappa:
        raise ValueError(f"{kappa} is not a pushforward from the stratum of codimensions {codims}")
    lhs = pushforward_linear(H, P, pullback_linear(H, P, kappa))
    euler = k_ring(P).one()
    for i, c in enumerate(codims):
        unit = [0] * P.s
        unit[i] = -1
        euler = euler * (1 - class_of_bundle(P, unit)) ** c
    rhs = euler * kappa
    return Report(f"Tor formula on {H} in {P}", [Check("i_* i^* i_* lam = e(N) i_* lam", str(lhs), str(rhs), lhs == rhs)])


def enumerate_complete_intersections(
    max_dim: int = 6, max_codim: int = 3, max_entry: int = 3, max_factors: int = 2, min_factors: int = 1
) -> Iterator[CompleteIntersection]:
    """Every CI in every ``P^{d_1} x ... x P^{d_s}`` (``d_i >= 1``,
    ``min_factors <= s <= max_factors``, ``d <= max_dim``) cut by an unordered
    choice of ``c <= max_codim`` multidegrees with entries in ``0..max_entry``."""
    for s in range(min_factors, max_factors + 1):
        for dims in product(range(1, max_dim + 1), repeat=s):
            if sum(dims) > max_dim:
                continue
            P = MultiProj(dims)
            degs = [b for b in product(range(max_entry + 1), repeat=s) if any(b)]
            for c in range(min(max_codim, P.d) + 1):
                for choice in combinations_with_replacement(degs, c):
                    yield CompleteIntersection(P, choice)
