"""Independent abelian-group semantics for integer subquotients.

Every subquotient object over Z denotes an honest finitely generated
abelian group; this module computes its invariant factors by plain
Hermite/Smith linear algebra, deliberately sharing nothing with the
categorical layer beyond the matrix primitives.  The category's cokernel,
image, and kernel constructions are cross-checked against these values.

Invariant factors are canonical: unit factors dropped, torsion ascending
by divisibility, one trailing zero per free summand.
"""

from __future__ import annotations

from typing import Tuple

from .rings import IntegerRing, Matrix, decide_lift, row_syzygies, smith_normal_form, vstack


def _require_int(ring):
    if not isinstance(ring, IntegerRing):
        raise ValueError(f"the oracle works over Z only, got {ring.name}")


def presentation_invariants(ngens: int, relations: Matrix) -> Tuple[int, ...]:
    """Invariant factors of Z^ngens modulo the row space of ``relations``."""
    _require_int(relations.ring)
    if relations.cols != ngens:
        raise ValueError("relation matrix must have one column per generator")
    D, _, _ = smith_normal_form(relations)
    diag = [D[i, i] for i in range(min(D.rows, D.cols))]
    torsion = [d for d in diag if d > 1]
    free = ngens - sum(1 for d in diag if d != 0)
    return tuple(torsion + [0] * free)


def evaluate(x) -> Tuple[int, ...]:
    """Invariant factors of the group im(gens)/(im(rels) ∩ im(gens)).

    Generators are the rows of ``gens``; a combination of them dies exactly
    when it factors through ``rels``, so the relations of the presentation
    are the generator block of the stacked row syzygies.
    """
    cs = x.cospan
    _require_int(cs.ring)
    L = row_syzygies(vstack(cs.gens, cs.rels))
    rel = L.block(0, L.rows, 0, cs.rank)
    return presentation_invariants(cs.rank, rel)


def induced_is_zero(phi) -> bool:
    """Does phi induce the zero map on the denoted groups?

    True iff every row of the pushed generator matrix lies in the row space
    of the target relations, checked row by row.
    """
    dst = phi.dst.cospan
    _require_int(dst.ring)
    pushed = phi.matrix @ dst.gens
    for i in range(pushed.rows):
        if decide_lift(dst.rels, pushed.row(i)) is None:
            return False
    return True


def homology_invariants(d2: Matrix, d1: Matrix) -> Tuple[int, ...]:
    """Invariant factors of ker(d1)/im(d2) for integer matrices with d2 @ d1 == 0.

    The kernel rows from the Hermite transform are a lattice basis, so the
    rows of d2 lift through them exactly; that lift is the presentation.
    """
    _require_int(d2.ring)
    if not (d2 @ d1).is_zero():
        raise ValueError("not a complex: d2 @ d1 is nonzero")
    K = row_syzygies(d1)
    C = decide_lift(K, d2)
    if C is None:
        raise AssertionError("kernel basis failed to absorb the image")
    return presentation_invariants(K.rows, C)


def format_invariants(factors) -> str:
    """Render e.g. (2, 6, 0, 0) as ``Z^2 + Z/2 + Z/6``; the trivial group is ``0``."""
    torsion = [d for d in factors if d > 1]
    free = sum(1 for d in factors if d == 0)
    parts = []
    if free == 1:
        parts.append("Z")
    elif free > 1:
        parts.append(f"Z^{free}")
    parts.extend(f"Z/{d}" for d in torsion)
    return " + ".join(parts) if parts else "0"
