"""The category of formal subquotients over a matrix backend.

Objects wrap cospans; a cospan ``(A -> W <- C)`` stands for the subquotient
im(gens)/(im(rels) ∩ im(gens)) of the row module W.  A morphism is a matrix
between the generator ranks whose well-definedness (source syzygies push to
target syzygies) is checked eagerly at construction: invalid morphisms are
unrepresentable, and the rejection carries the failing syzygy generator.

A morphism is zero exactly when its pushed generator map factors through
the target relations; the factoring matrix is the zero witness, and every
decision procedure here answers with such a witness.  Cokernels, images,
lifts along monos and colifts along epis exist over every backend with
decidable syzygy inclusion; kernels additionally need finite syzygies and
raise :class:`~qcat.addcat.CapabilityError` over the non-coherent ring.

Construction outputs are returned literally, never normalized: the cokernel
of phi really is the target with ``phi``'s pushed generators stacked onto
the relations, and equal-but-distinct objects are only ever compared
through explicit morphisms.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional, Tuple

from .addcat import CapabilityError, Cospan, biased_weak_pullback, syzygy_inclusion
from .rings import Matrix, decide_lift, vstack


class IllDefinedMorphism(Exception):
    """A matrix that fails the well-definedness property.

    ``counterexample`` is a syzygy of the intended source whose push is not
    a syzygy of the intended target.
    """

    def __init__(self, message, counterexample=None):
        super().__init__(message)
        self.counterexample = counterexample


@dataclass(frozen=True)
class QObject:
    cospan: Cospan

    @property
    def ring(self):
        return self.cospan.ring

    @property
    def rank(self) -> int:
        return self.cospan.rank

    def __repr__(self):
        return f"QObject(gens={self.cospan.gens!r}, rels={self.cospan.rels!r})"


def _pushed(matrix: Matrix, dst: QObject) -> Cospan:
    return Cospan(matrix @ dst.cospan.gens, dst.cospan.rels)


@dataclass(frozen=True)
class QMorphism:
    src: QObject
    dst: QObject
    matrix: Matrix

    def __post_init__(self):
        if self.matrix.rows != self.src.rank or self.matrix.cols != self.dst.rank:
            raise ValueError(
                f"matrix {self.matrix.rows}x{self.matrix.cols} cannot map rank "
                f"{self.src.rank} to rank {self.dst.rank}")
        dec = syzygy_inclusion(self.src.cospan, _pushed(self.matrix, self.dst))
        if not dec.holds:
            raise IllDefinedMorphism(
                "matrix does not respect syzygies", dec.counterexample)

    def then(self, other: "QMorphism") -> "QMorphism":
        if self.dst != other.src:
            raise ValueError("endpoints do not compose")
        return QMorphism(self.src, other.dst, self.matrix @ other.matrix)

    def __add__(self, other: "QMorphism") -> "QMorphism":
        _same_endpoints(self, other)
        return QMorphism(self.src, self.dst, self.matrix + other.matrix)

    def __sub__(self, other: "QMorphism") -> "QMorphism":
        _same_endpoints(self, other)
        return QMorphism(self.src, self.dst, self.matrix - other.matrix)

    def __neg__(self) -> "QMorphism":
        return QMorphism(self.src, self.dst, -self.matrix)


def _same_endpoints(phi: QMorphism, psi: QMorphism):
    if phi.src != psi.src or phi.dst != psi.dst:
        raise ValueError("endpoint mismatch")


def make_qmorphism(src: QObject, dst: QObject, matrix: Matrix) -> QMorphism:
    """Validated morphism, or IllDefinedMorphism carrying the failing syzygy."""
    return QMorphism(src, dst, matrix)


def identity(x: QObject) -> QMorphism:
    return QMorphism(x, x, Matrix.identity(x.ring, x.rank))


def compose(phi: QMorphism, psi: QMorphism) -> QMorphism:
    return phi.then(psi)


def is_zero(phi: QMorphism) -> Optional[Matrix]:
    """Zero witness: zeta with zeta @ rels == matrix @ gens, or None."""
    dst = phi.dst.cospan
    return decide_lift(dst.rels, phi.matrix @ dst.gens)


def eq(phi: QMorphism, psi: QMorphism) -> bool:
    """Equality in the quotient: the difference carries a zero witness."""
    _same_endpoints(phi, psi)
    dst = phi.dst.cospan
    return decide_lift(dst.rels, (phi.matrix - psi.matrix) @ dst.gens) is not None


# ---------------------------------------------------------------------------
# The embedding of the base category, and covers
# ---------------------------------------------------------------------------

def emb_object(ring, rank: int) -> QObject:
    """The free row module of the given rank, with no relations."""
    return QObject(Cospan(Matrix.identity(ring, rank), Matrix.zero(ring, 0, rank)))


def emb(matrix: Matrix) -> QMorphism:
    """Full and faithful embedding of a plain matrix."""
    return QMorphism(emb_object(matrix.ring, matrix.rows),
                     emb_object(matrix.ring, matrix.cols), matrix)


def cover(x: QObject) -> QMorphism:
    """The canonical epimorphism from the free module onto the subquotient."""
    return QMorphism(emb_object(x.ring, x.rank), x, Matrix.identity(x.ring, x.rank))


# ---------------------------------------------------------------------------
# Cokernels and the epi side
# ---------------------------------------------------------------------------

def cokernel(phi: QMorphism) -> Tuple[QObject, QMorphism]:
    """Cokernel object and projection.

    The object keeps the target's generators and stacks the pushed source
    generators onto the relations; the projection underlies the identity.
    """
    dst = phi.dst.cospan
    obj = QObject(Cospan(dst.gens, vstack(dst.rels, phi.matrix @ dst.gens)))
    proj = QMorphism(phi.dst, obj, Matrix.identity(phi.dst.ring, phi.dst.rank))
    return obj, proj


def cokernel_colift(phi: QMorphism, tau: QMorphism) -> QMorphism:
    """The morphism out of coker(phi) induced by a test morphism killing phi."""
    if tau.src != phi.dst:
        raise ValueError("test morphism must start at the target of phi")
    if is_zero(phi.then(tau)) is None:
        raise ValueError("test morphism does not kill phi")
    obj, _ = cokernel(phi)
    return QMorphism(obj, tau.dst, tau.matrix)


def _epi_witness(phi: QMorphism) -> Optional[Matrix]:
    """zeta with zeta @ [rels; pushed gens] == gens: the cokernel's zero witness."""
    dst = phi.dst.cospan
    stacked = vstack(dst.rels, phi.matrix @ dst.gens)
    return decide_lift(stacked, dst.gens)


def is_epi(phi: QMorphism) -> bool:
    """Epimorphism test: the cokernel projection is zero."""
    return _epi_witness(phi) is not None


def colift_along_epi(phi: QMorphism, tau: QMorphism) -> QMorphism:
    """Colift a test morphism through an epimorphism.

    ``tau`` must be a test morphism: everything that kills phi kills tau,
    decided by one syzygy inclusion.  The colift underlies zeta2 @ tau where
    zeta2 is the source block of the epi witness.
    """
    if tau.src != phi.src:
        raise ValueError("test morphism must start at the source of phi")
    zeta = _epi_witness(phi)
    if zeta is None:
        raise ValueError("colift requires an epimorphism")
    dec = syzygy_inclusion(_pushed(phi.matrix, phi.dst), _pushed(tau.matrix, tau.dst))
    if not dec.holds:
        raise ValueError(
            f"not a test morphism; failing syzygy generator {dec.counterexample!r}")
    r = phi.dst.cospan.rels.rows
    zeta2 = zeta.block(0, zeta.rows, r, r + phi.src.rank)
    return QMorphism(phi.dst, tau.dst, zeta2 @ tau.matrix)


# ---------------------------------------------------------------------------
# Monos, lifts, images
# ---------------------------------------------------------------------------

def is_mono(phi: QMorphism) -> bool:
    """Monomorphism test: pushed syzygies already come from the source."""
    return syzygy_inclusion(_pushed(phi.matrix, phi.dst), phi.src.cospan).holds


def lift_along_mono(phi: QMorphism, tau: QMorphism) -> QMorphism:
    """Lift a test morphism through a monomorphism.

    ``tau`` composed with the cokernel projection of phi must be zero; the
    source block of that zero witness is the lift.
    """
    if tau.dst != phi.dst:
        raise ValueError("test morphism must end at the target of phi")
    if not is_mono(phi):
        raise ValueError("lift requires a monomorphism")
    dst = phi.dst.cospan
    stacked = vstack(dst.rels, phi.matrix @ dst.gens)
    zeta = decide_lift(stacked, tau.matrix @ dst.gens)
    if zeta is None:
        raise ValueError("test morphism does not kill the cokernel of phi")
    r = dst.rels.rows
    lam = zeta.block(0, zeta.rows, r, r + phi.src.rank)
    return QMorphism(tau.src, phi.src, lam)


def epi_mono_factorization(phi: QMorphism) -> Tuple[QObject, QMorphism, QMorphism]:
    """Universal factorization (image, e, m) with e epi, m mono, e.then(m) == phi.

    The image keeps the target's ambient and relations with the pushed
    generators; e underlies the identity and m the original matrix.
    """
    dst = phi.dst.cospan
    image = QObject(Cospan(phi.matrix @ dst.gens, dst.rels))
    e = QMorphism(phi.src, image, Matrix.identity(phi.src.ring, phi.src.rank))
    m = QMorphism(image, phi.dst, phi.matrix)
    return image, e, m


def invert(phi: QMorphism) -> QMorphism:
    """Two-sided inverse of a morphism that is both mono and epi."""
    if not is_mono(phi):
        raise ValueError("invert requires a monomorphism")
    zeta = _epi_witness(phi)
    if zeta is None:
        raise ValueError("invert requires an epimorphism")
    r = phi.dst.cospan.rels.rows
    zeta2 = zeta.block(0, zeta.rows, r, r + phi.src.rank)
    return QMorphism(phi.dst, phi.src, zeta2)


# ---------------------------------------------------------------------------
# Kernels (finite-syzygy backends only)
# ---------------------------------------------------------------------------

def kernel(phi: QMorphism) -> Tuple[QObject, QMorphism, Callable[[QMorphism], QMorphism]]:
    """Kernel object, embedding, and the universal-property factorization.

    The kernel's first object is the biased weak pullback of the target
    relations against the pushed generators; its projection composed with
    the source generators presents the kernel, with the source relations
    unchanged.  ``induce(tau)`` factors any tau with tau.then(phi) == 0
    through the embedding, exactly at the matrix level.
    """
    ring = phi.src.ring
    if not ring.finite_syzygies:
        raise CapabilityError("kernel unavailable: backend lacks weak kernels")
    src, dst = phi.src.cospan, phi.dst.cospan
    pwb = biased_weak_pullback(dst.rels, phi.matrix @ dst.gens)
    obj = QObject(Cospan(pwb.pi @ src.gens, src.rels))
    kappa = QMorphism(obj, phi.src, pwb.pi)

    def induce(tau: QMorphism) -> QMorphism:
        if tau.dst != phi.src:
            raise ValueError("test morphism must end at the source of phi")
        zeta = is_zero(tau.then(phi))
        if zeta is None:
            raise ValueError("test morphism does not kill phi")
        u = pwb.lift(tau.matrix, zeta)
        return QMorphism(tau.src, obj, u)

    return obj, kappa, induce


def homology_at(d2: QMorphism, d1: QMorphism) -> QObject:
    """Homology of the complex d2.then(d1) == 0 at the middle object."""
    if d2.dst != d1.src:
        raise ValueError("differentials do not compose")
    if is_zero(d2.then(d1)) is None:
        raise ValueError("not a complex: d2.then(d1) is not zero")
    _, kappa, _ = kernel(d1)
    lam = lift_along_mono(kappa, d2)
    obj, _ = cokernel(lam)
    return obj
