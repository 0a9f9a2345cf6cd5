"""The Lazard ring, degree by degree, and classifying maps out of it.

Generators ``a_ij`` (``1 <= i <= j``, ``i + j <= N + 1``) sit in
cohomological degree ``1 - i - j``.  Degree ``-n`` of the truncated ring is
the quotient of the free Z-module on monomials of that degree by the span of
(associativity relation) x (monomial) products, computed with integer
linear algebra only.  Degrees are reported homologically (``L_n = L^{-n}``).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Mapping

from .algebra import Exps, Poly, QuotientBasis, Ring, monomial_key, quotient_basis
from .fgl import FormalGroupLaw, TruncSeries, formal_sum, series_ring

__all__ = [
    "generator_name",
    "generators",
    "free_lazard_ring",
    "universal_fgl",
    "associativity_relations",
    "DegreePiece",
    "LazardRing",
    "lazard_truncation",
    "RingMap",
    "GradingError",
    "RelationNotKilledError",
    "classifying_map",
    "apply_map",
    "partition_count",
]


class GradingError(ValueError):
    pass


class RelationNotKilledError(ValueError):
    pass


def generator_name(i: int, j: int) -> str:
    return f"a{i}{j}" if i < 10 and j < 10 else f"a{i}_{j}"


def generators(N: int) -> tuple[tuple[int, int], ...]:
    return tuple((i, j) for k in range(2, N + 2) for i in range(1, k // 2 + 1) for j in (k - i,))


@lru_cache(maxsize=None)
def free_lazard_ring(N: int) -> Ring:
    """``Z[a_ij]`` with ``deg a_ij = 1 - i - j`` (no relations imposed)."""
    gens = generators(N)
    return Ring(
        tuple(generator_name(i, j) for i, j in gens),
        weights=tuple(1 - i - j for i, j in gens),
        name=f"Z[a_ij | i+j<={N + 1}]",
    )


def _coeff_table(ring: Ring, N: int) -> dict[tuple[int, int], Poly]:
    return {(i, j): ring.gen(generator_name(i, j)) for i, j in generators(N)}


def universal_fgl(N: int) -> FormalGroupLaw:
    """``u + v + sum a_ij u^i v^j`` over the free ring; associativity is not imposed."""
    ring = free_lazard_ring(N)
    return FormalGroupLaw(ring, _coeff_table(ring, N), N, name="universal")


@lru_cache(maxsize=None)
def associativity_relations(N: int) -> tuple[Poly, ...]:
    """Distinct nonzero coefficients of ``F(F(u,v),w) - F(u,F(v,w))`` through degree ``N + 1``."""
    F = universal_fgl(N)
    names = ("u", "v", "w")
    u, v, w = (TruncSeries.var(F.ring, names, N + 1, x) for x in names)
    diff = formal_sum(F, formal_sum(F, u, v), w) - formal_sum(F, u, formal_sum(F, v, w))
    seen: list[Poly] = []
    for _, c in sorted(diff.coefficients().items(), key=lambda t: (sum(t[0]), tuple(-x for x in t[0]))):
        if c and c not in seen and -c not in seen:
            seen.append(c)
    return tuple(seen)


def _monomials_of_degree(weights: tuple[int, ...], n: int) -> list[Exps]:
    """Exponent vectors with ``sum(e_k * w_k) == n`` for positive weights ``w``."""
    out: list[Exps] = []

    def rec(k: int, remaining: int, acc: list[int]):
        if k == len(weights):
            if remaining == 0:
                out.append(tuple(acc))
            return
        w = weights[k]
        for e in range(remaining // w + 1):
            acc.append(e)
            rec(k + 1, remaining - e * w, acc)
            acc.pop()

    rec(0, n, [])
    return sorted(out, key=monomial_key)


def partition_count(n: int) -> int:
    """Number of partitions of ``n`` (independent count used as an oracle)."""
    table = [1] + [0] * n
    for part in range(1, n + 1):
        for k in range(part, n + 1):
            table[k] += table[k - part]
    return table[n]


@dataclass(frozen=True)
class DegreePiece:
    """Homological degree ``n`` piece ``L_n`` of the truncated Lazard ring."""

    degree: int
    monomials: tuple[Exps, ...]
    basis: tuple[Exps, ...]
    rank: int
    torsion: tuple[int, ...]
    integral: bool
    quotient: QuotientBasis = field(repr=False, compare=False)

    def index(self) -> dict[Exps, int]:
        return {m: i for i, m in enumerate(self.monomials)}


class _LazardReducer:
    """Degreewise normal form: reduce each homogeneous part modulo the relation lattice."""

    def __init__(self, weights: tuple[int, ...], pieces: Mapping[int, DegreePiece]):
        self.weights = weights
        self.pieces = pieces
        self.indices = {n: p.index() for n, p in pieces.items()}

    def __call__(self, terms):
        by_degree: dict[int, dict] = {}
        for e, c in terms.items():
            n = sum(a * b for a, b in zip(self.weights, e))
            by_degree.setdefault(n, {})[e] = c
        out = {}
        for n, part in by_degree.items():
            piece = self.pieces.get(n)
            if piece is None or not piece.quotient.lattice.basis:
                out.update(part)
                continue
            idx = self.indices[n]
            vec = [0] * len(piece.monomials)
            for e, c in part.items():
                vec[idx[e]] += c
            for i, c in enumerate(piece.quotient.reduce(vec)):
                if c:
                    out[piece.monomials[i]] = c
        return out


class LazardRing:
    """Truncation of the Lazard ring through homological degree ``N``.

    ``ring`` is the quotient ring: elements are kept in degreewise normal
    form and everything of degree above ``N`` is zero.
    """

    def __init__(self, N: int):
        if N < 1:
            raise ValueError("truncation must be at least 1")
        self.trunc = N
        self.generators = generators(N)
        self.free_ring = free_lazard_ring(N)
        self.relations = associativity_relations(N)
        homological = tuple(i + j - 1 for i, j in self.generators)
        self.pieces: dict[int, DegreePiece] = {}
        rel_by_degree: dict[int, list[Poly]] = {}
        for r in self.relations:
            (w,) = r.weights()
            rel_by_degree.setdefault(-w, []).append(r)
        for n in range(N + 1):
            monos = _monomials_of_degree(homological, n)
            idx = {m: i for i, m in enumerate(monos)}
            rows = []
            for k, rels in sorted(rel_by_degree.items()):
                if k > n:
                    continue
                for mu in _monomials_of_degree(homological, n - k):
                    mu_poly = self.free_ring.monomial(mu)
                    for r in rels:
                        row = [0] * len(monos)
                        for e, c in (r * mu_poly).terms.items():
                            row[idx[e]] += c
                        rows.append(row)
            q = quotient_basis(rows, len(monos))
            self.pieces[n] = DegreePiece(
                degree=n,
                monomials=tuple(monos),
                basis=tuple(monos[i] for i in q.representatives),
                rank=q.free_rank,
                torsion=q.torsion,
                integral=q.integral,
                quotient=q,
            )
        self.ring = Ring(
            self.free_ring.variables,
            weights=self.free_ring.weights,
            truncations=((homological, N),),
            reducer=_LazardReducer(homological, self.pieces),
            name=f"L/(deg<{-N})",
        )

    def gen(self, i: int, j: int) -> Poly:
        i, j = min(i, j), max(i, j)
        return self.ring.gen(generator_name(i, j))

    def element(self, p: Poly) -> Poly:
        """Normal form in the quotient of an element of the free ring."""
        return p.lift(self.ring)

    def ranks(self) -> list[int]:
        return [self.pieces[n].rank for n in range(self.trunc + 1)]

    def torsion(self) -> list[tuple[int, ...]]:
        return [self.pieces[n].torsion for n in range(self.trunc + 1)]

    def fgl(self) -> FormalGroupLaw:
        """The universal law over the quotient ring (associative to truncation)."""
        return FormalGroupLaw(self.ring, _coeff_table(self.ring, self.trunc), self.trunc, name="lazard")

    def monomial_str(self, e: Exps) -> str:
        return str(self.free_ring.monomial(e))

    def to_json(self) -> list[dict]:
        return [
            {
                "degree": p.degree,
                "monomials": [self.monomial_str(m) for m in p.basis],
                "rank": p.rank,
                "torsion": list(p.torsion),
            }
            for p in (self.pieces[n] for n in range(self.trunc + 1))
        ]

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True)


@lru_cache(maxsize=None)
def lazard_truncation(N: int) -> LazardRing:
    return LazardRing(N)


class RingMap:
    """Ring homomorphism from the truncated Lazard ring to ``target``.

    ``target`` is the coefficient ring of the law with everything of degree
    below ``-N`` killed, so the map is compatible with truncation.
    """

    def __init__(self, source: LazardRing, target: Ring, images: Mapping[str, Poly]):
        self.source = source
        self.target = target
        self.images = dict(images)
        for name, img in self.images.items():
            if img.ring != target:
                raise ValueError(f"image of {name} is not in {target}")
            w = source.free_ring.weights[source.free_ring.index(name)]
            if img and img.weights() != {w}:
                raise GradingError(f"image {img} of {name} is not homogeneous of degree {w}")
        for r in source.relations:
            if self(r):
                raise RelationNotKilledError(f"relation {r} maps to {self(r)}")

    def __call__(self, x):
        return apply_map(self, x)

    def __repr__(self):
        shown = ", ".join(f"{k} -> {v}" for k, v in self.images.items() if v)
        return f"RingMap({shown or 'all generators -> 0'})"


def classifying_map(F: FormalGroupLaw, L: LazardRing) -> RingMap:
    """The map ``a_ij -> (coefficient of u^i v^j in F)``, checked against every relation."""
    if F.trunc < L.trunc:
        raise ValueError(f"law known through {F.trunc}, Lazard ring truncated at {L.trunc}")
    target = F.ring.truncate_weight(L.trunc)
    images = {}
    for i, j in L.generators:
        c = F.coeff(i, j)
        if c and c.weights() != {1 - i - j}:
            raise GradingError(f"coefficient of u^{i} v^{j} is {c}, not of degree {1 - i - j}")
        images[generator_name(i, j)] = c.lift(target)
    return RingMap(L, target, images)


def apply_map(m: RingMap, x):
    """Image of a Lazard element, a series over the Lazard ring, or a law."""
    if isinstance(x, FormalGroupLaw):
        coeffs = {k: apply_map(m, c) for k, c in x.coeffs.items() if k[0] <= k[1]}
        return FormalGroupLaw(m.target, coeffs, min(x.trunc, m.source.trunc), name=x.name)
    if isinstance(x, TruncSeries):
        target = series_ring(m.target, x.names, x.trunc)
        poly = x.poly.substitute(target, {k: v.lift(target) for k, v in m.images.items()})
        return TruncSeries(m.target, x.names, x.trunc, poly)
    if isinstance(x, Poly):
        return x.substitute(m.target, m.images)
    if isinstance(x, int):
        return m.target.const(x)
    raise TypeError(f"cannot apply a ring map to {type(x).__name__}")
