"""Cospans, syzygies, and weak limits over the matrix backends.

A cospan ``(A --gens--> W <--rels-- C)`` presents the formal subquotient
im(gens)/(im(rels) ∩ im(gens)) of the row module W.  A syzygy of the cospan
is a map into A whose composite with ``gens`` factors through ``rels``; the
factoring matrix is its witness.  Deciding the inclusion of one cospan's
syzygies in another's is the single primitive everything downstream runs on.

Backends split by capability: Z and GF(p) produce finite syzygy generating
sets (and therefore weak kernels and biased weak pullbacks), while the
non-coherent backend only decides syzygy inclusion and refuses the
kernel-flavoured operations here with :class:`CapabilityError`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, List, Optional, Tuple

from .rings import Matrix, decide_lift, hstack, row_syzygies, vstack, block_diag


class CapabilityError(Exception):
    """The backend lacks the capability an operation requires."""


@dataclass(frozen=True)
class Cospan:
    """Pair of matrices with a common target row module."""

    gens: Matrix
    rels: Matrix

    def __post_init__(self):
        if self.gens.ring != self.rels.ring:
            raise ValueError("cospan legs live over different backends")
        if self.gens.cols != self.rels.cols:
            raise ValueError(
                f"cospan legs target different modules: {self.gens.cols} vs {self.rels.cols}")

    @classmethod
    def no_relations(cls, gens: Matrix) -> "Cospan":
        return cls(gens, Matrix.zero(gens.ring, 0, gens.cols))

    @property
    def ring(self):
        return self.gens.ring

    @property
    def rank(self) -> int:
        """Rank of the first object (the generator count)."""
        return self.gens.rows

    @property
    def ambient(self) -> int:
        return self.gens.cols


@dataclass
class InclusionDecision:
    """Constructive answer to a syzygy-inclusion question.

    On ``holds``, ``witness`` maps any syzygy of the first cospan to a
    witness for the second one, and ``checks`` lists the generator/witness
    pairs established during the decision.  Otherwise ``counterexample`` is
    a syzygy of the first cospan that fails for the second.
    """

    holds: bool
    witness: Optional[Callable[[Matrix], Matrix]] = None
    counterexample: Optional[Matrix] = None
    checks: List[Tuple[Matrix, Matrix]] = field(default_factory=list)

    def __bool__(self):
        return self.holds


def syzygy_membership(sigma: Matrix, cs: Cospan) -> Optional[Matrix]:
    """Witness w with sigma @ cs.gens == w @ cs.rels, or None."""
    if sigma.cols != cs.rank:
        raise ValueError(f"map into rank {cs.rank} expected, got {sigma.rows}x{sigma.cols}")
    return decide_lift(cs.rels, sigma @ cs.gens)


def syzygy_generators(cs: Cospan) -> Matrix:
    """Rows generating all syzygies of the cospan (finite-syzygy backends).

    These are the generator-block columns of the row syzygies of the stacked
    legs: s is a syzygy iff (s, -w) kills the stack for some witness w.
    """
    if not cs.ring.finite_syzygies:
        raise CapabilityError(f"{cs.ring.name} has no finite syzygy generating sets")
    L = row_syzygies(vstack(cs.gens, cs.rels))
    return L.block(0, L.rows, 0, cs.rank)


def syzygy_inclusion(first: Cospan, second: Cospan) -> InclusionDecision:
    """Decide Syz(first) ⊆ Syz(second) for cospans sharing the first object."""
    if first.ring != second.ring:
        raise ValueError("cospans live over different backends")
    if first.rank != second.rank:
        raise ValueError(
            f"first objects differ: rank {first.rank} vs {second.rank}")
    if not first.ring.finite_syzygies:
        return first.ring.syzygy_inclusion(first, second)
    gens = syzygy_generators(first)
    checks: List[Tuple[Matrix, Matrix]] = []
    for i in range(gens.rows):
        sig = gens.row(i)
        w = syzygy_membership(sig, second)
        if w is None:
            return InclusionDecision(False, counterexample=sig, checks=checks)
        checks.append((sig, w))

    def witness(sigma: Matrix) -> Matrix:
        w = syzygy_membership(sigma, second)
        if w is None:
            raise ValueError("input is not a syzygy of the second cospan")
        return w

    return InclusionDecision(True, witness=witness, checks=checks)


@dataclass
class BiasedWeakPullback:
    """Weak pullback with the companion triangle's commutativity dropped.

    ``pi`` maps the apex to the second leg's source and ``companion`` to the
    first leg's source, with companion @ first == pi @ second.  ``lift`` maps
    a pair (tau, sigma) with tau @ second == sigma @ first to u with
    u @ pi == tau; nothing is promised about u @ companion.
    """

    pi: Matrix
    companion: Matrix
    lift: Callable[[Matrix, Matrix], Matrix]

    @property
    def apex_rank(self) -> int:
        return self.pi.rows


def biased_weak_pullback(alpha: Matrix, gamma: Matrix) -> BiasedWeakPullback:
    """Biased weak pullback of (alpha: A -> B, gamma: C -> B).

    Built from the row syzygies of the stacked legs; the sign on ``pi`` is
    chosen so that companion @ alpha == pi @ gamma holds on the nose.  A zero
    target is special-cased with the identity projection, which is where the
    apex gets smaller than any genuine weak pullback can be.
    """
    if alpha.ring != gamma.ring:
        raise ValueError("legs live over different backends")
    if alpha.cols != gamma.cols:
        raise ValueError("legs target different modules")
    ring = alpha.ring
    if not ring.finite_syzygies:
        raise CapabilityError(f"{ring.name} has no biased weak pullbacks")
    a, c = alpha.rows, gamma.rows
    if alpha.cols == 0:
        pi = Matrix.identity(ring, c)
        companion = Matrix.zero(ring, c, a)

        def lift_zero(tau: Matrix, sigma: Matrix) -> Matrix:
            return tau

        return BiasedWeakPullback(pi, companion, lift_zero)

    L = row_syzygies(vstack(alpha, gamma))
    companion = L.block(0, L.rows, 0, a)
    pi = -L.block(0, L.rows, a, a + c)

    def lift(tau: Matrix, sigma: Matrix) -> Matrix:
        u = decide_lift(L, hstack(sigma, -tau))
        if u is None:
            raise ValueError("pair does not commute against the cospan")
        return u

    return BiasedWeakPullback(pi, companion, lift)


def weak_kernel(gamma: Matrix) -> Matrix:
    """kappa with kappa @ gamma == 0, through which every such map factors."""
    pwb = biased_weak_pullback(Matrix.zero(gamma.ring, 0, gamma.cols), gamma)
    return pwb.pi


def full_weak_pullback(alpha: Matrix, gamma: Matrix) -> Tuple[Matrix, Matrix]:
    """Honest weak pullback from direct sum plus weak kernel.

    Returns projections (to_a, to_c) from the apex; both triangles commute,
    at the price of a bigger apex than the biased construction needs.
    """
    kappa = weak_kernel(vstack(alpha, -gamma))
    a = alpha.rows
    return kappa.block(0, kappa.rows, 0, a), kappa.block(0, kappa.rows, a, a + gamma.rows)


def direct_sum(cospans) -> Cospan:
    cospans = list(cospans)
    if not cospans:
        raise ValueError("direct sum of nothing")
    return Cospan(block_diag([c.gens for c in cospans]),
                  block_diag([c.rels for c in cospans]))


def simplify_cospan_pair(first: Cospan, second: Cospan) -> Tuple[Cospan, Cospan]:
    """Replace an inclusion question by one whose first cospan has no relations.

    The first cospan's relations are absorbed into its generator block; the
    second cospan gains matching zero rows.  Syzygy inclusion holds for the
    original pair iff it holds for the returned pair.
    """
    if first.rank != second.rank:
        raise ValueError("first objects differ")
    ring = first.ring
    first2 = Cospan.no_relations(vstack(first.gens, first.rels))
    second2 = Cospan(
        vstack(second.gens, Matrix.zero(ring, first.rels.rows, second.ambient)),
        second.rels)
    return first2, second2
