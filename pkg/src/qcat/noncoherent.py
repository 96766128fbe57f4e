"""The ring R = k[x_i, z | i in N]/(x_i z) as a matrix backend.

Elements keep the canonical split p = p_x + p_z, with p_x a polynomial in
finitely many x_i (constant included) and p_z a polynomial in z without
constant term; any monomial mixing z with some x_i dies at construction.
The coefficient field is GF(p).

R is not coherent: the annihilator of z needs all the x_i.  Lift decisions
survive anyway by cutting off at the largest variable index in sight and
delegating to R_n = k[x1..xn, z]/(x_i z), and the syzygy-inclusion decision
survives through a finite certificate: generators of the cutoff kernel plus
the x-part kernel generators bumped by one fresh variable.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import List, Optional

from .addcat import CapabilityError, Cospan, InclusionDecision, simplify_cospan_pair
from .groebner import Poly, PolyRing, module_syzygies, rn_decide_lift, rn_row_syzygies
from .rings import Matrix


def _check_prime(p):
    if not isinstance(p, int) or p < 2:
        raise ValueError(f"prime expected, got {p!r}")
    d = 2
    while d * d <= p:
        if p % d == 0:
            raise ValueError(f"{p} is not prime")
        d += 1


class RElement:
    """Canonical element of R: sparse x-polynomial plus a z-polynomial.

    ``px`` maps sparse x-monomials (sorted tuples of (index, exponent) pairs,
    indices starting at 1) to coefficients; the constant term sits at the
    empty monomial.  ``pz`` maps z-degrees >= 1 to coefficients.
    """

    __slots__ = ("p", "px", "pz")

    def __init__(self, p, px=None, pz=None):
        _check_prime(p)
        cleaned_px = {}
        for mono, c in (px or {}).items():
            c %= p
            if not c:
                continue
            mono = tuple(sorted((int(i), int(e)) for i, e in mono))
            if any(i < 1 or e < 1 for i, e in mono):
                raise ValueError(f"bad x-monomial {mono!r}")
            cleaned_px[mono] = c
        cleaned_pz = {}
        for d, c in (pz or {}).items():
            c %= p
            if not c:
                continue
            if d < 1:
                raise ValueError("z-part must have zero constant term")
            cleaned_pz[int(d)] = c
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "px", tuple(sorted(cleaned_px.items())))
        object.__setattr__(self, "pz", tuple(sorted(cleaned_pz.items())))

    def __setattr__(self, name, value):
        raise AttributeError("RElement is immutable")

    @classmethod
    def const(cls, p, c):
        return cls(p, {(): c})

    @classmethod
    def x(cls, p, i, exp=1, coeff=1):
        return cls(p, {((i, exp),): coeff})

    @classmethod
    def z(cls, p, deg=1, coeff=1):
        return cls(p, pz={deg: coeff})

    def is_zero(self):
        return not self.px and not self.pz

    def constant_term(self):
        return dict(self.px).get((), 0)

    @property
    def x_part(self) -> "RElement":
        return RElement(self.p, dict(self.px))

    @property
    def z_part(self) -> "RElement":
        return RElement(self.p, pz=dict(self.pz))

    def max_x_index(self) -> int:
        return max((i for mono, _ in self.px for i, _ in mono), default=0)

    def __add__(self, other):
        self._check(other)
        px = dict(self.px)
        for m, c in other.px:
            px[m] = px.get(m, 0) + c
        pz = dict(self.pz)
        for d, c in other.pz:
            pz[d] = pz.get(d, 0) + c
        return RElement(self.p, px, pz)

    def __neg__(self):
        return RElement(self.p, {m: -c for m, c in self.px},
                        {d: -c for d, c in self.pz})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        self._check(other)
        px = {}
        for m1, c1 in self.px:
            for m2, c2 in other.px:
                m = _merge_mono(m1, m2)
                px[m] = px.get(m, 0) + c1 * c2
        # cross terms survive only through constants; x-by-z products vanish
        ca = self.constant_term()
        cb = other.constant_term()
        pz = {}
        for d1, c1 in self.pz:
            for d2, c2 in other.pz:
                pz[d1 + d2] = pz.get(d1 + d2, 0) + c1 * c2
        for d, c in other.pz:
            pz[d] = pz.get(d, 0) + ca * c
        for d, c in self.pz:
            pz[d] = pz.get(d, 0) + cb * c
        return RElement(self.p, px, pz)

    def _check(self, other):
        if not isinstance(other, RElement) or other.p != self.p:
            raise ValueError("mixed coefficient fields")

    def to_dense(self, ring: PolyRing) -> Poly:
        """Dense image in GF(p)[x1..xn(,z)]; requires n >= every used index."""
        if ring.p != self.p:
            raise ValueError("coefficient field mismatch")
        terms = {}
        for mono, c in self.px:
            e = [0] * ring.nvars
            for i, exp in mono:
                if i > ring.nx:
                    raise ValueError(f"cutoff {ring.nx} too small for x{i}")
                e[i - 1] = exp
            terms[tuple(e)] = c
        if self.pz:
            if not ring.has_z:
                raise ValueError("target ring has no z")
            for d, c in self.pz:
                e = [0] * ring.nvars
                e[ring.nx] = d
                terms[tuple(e)] = c
        return Poly(ring, terms)

    @classmethod
    def from_dense(cls, poly: Poly) -> "RElement":
        """Pull a dense polynomial back; mixed x/z monomials are dropped."""
        ring = poly.ring
        px = {}
        pz = {}
        for mono, c in poly.terms.items():
            zdeg = mono[ring.nx] if ring.has_z else 0
            xs = tuple((i + 1, e) for i, e in enumerate(mono[:ring.nx]) if e)
            if zdeg and xs:
                continue
            if zdeg:
                pz[zdeg] = pz.get(zdeg, 0) + c
            else:
                px[xs] = px.get(xs, 0) + c
        return cls(ring.p, px, pz)

    def __eq__(self, other):
        return (isinstance(other, RElement) and other.p == self.p
                and other.px == self.px and other.pz == self.pz)

    def __hash__(self):
        return hash((self.p, self.px, self.pz))

    def __repr__(self):
        return format_relement(self)


def _merge_mono(m1, m2):
    d = dict(m1)
    for i, e in m2:
        d[i] = d.get(i, 0) + e
    return tuple(sorted(d.items()))


def r_normalize(terms, p=101) -> RElement:
    """Canonical element from raw monomials (coeff, {index: exp}, z_degree).

    Monomials carrying both a z power and some x power are relations and
    vanish; the rest splits into the x-part and the z-part.
    """
    px = {}
    pz = {}
    for coeff, xexps, zdeg in terms:
        xs = tuple(sorted((int(i), int(e)) for i, e in dict(xexps).items() if e))
        if zdeg and xs:
            continue
        if zdeg:
            pz[zdeg] = pz.get(zdeg, 0) + coeff
        else:
            px[xs] = px.get(xs, 0) + coeff
    return RElement(p, px, pz)


class NoncoherentRing:
    """Backend object for R with k = GF(p)."""

    finite_syzygies = False

    def __init__(self, p: int = 101):
        _check_prime(p)
        self.p = p
        self.name = f"NC({p})"
        self.zero = RElement(p)
        self.one = RElement.const(p, 1)

    def coerce(self, v):
        if isinstance(v, RElement):
            if v.p != self.p:
                raise ValueError("coefficient field mismatch")
            return v
        if isinstance(v, int):
            return RElement.const(self.p, v)
        raise TypeError(f"cannot coerce {v!r} into {self.name}")

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def is_zero(self, a):
        return a.is_zero()

    def format_element(self, a):
        return format_relement(a)

    def __eq__(self, other):
        return isinstance(other, NoncoherentRing) and other.p == self.p

    def __hash__(self):
        return hash(("NC", self.p))

    def __repr__(self):
        return self.name

    def decide_lift(self, A: Matrix, B: Matrix) -> Optional[Matrix]:
        return decide_lift_R(A, B)

    def row_syzygies(self, A: Matrix):
        raise CapabilityError(
            f"{self.name} has no finite row-syzygy generating sets; "
            "use kernel_generators for the certificate")

    def syzygy_inclusion(self, first: Cospan, second: Cospan) -> InclusionDecision:
        return syzygy_inclusion_R(first, second)


def NC(p: int = 101) -> NoncoherentRing:
    return NoncoherentRing(p)


def min_cutoff(matrices) -> int:
    """Smallest n with every entry inside R_n; at least 1."""
    n = 1
    for mat in matrices:
        for v in mat.entries:
            n = max(n, v.max_x_index())
    return n


@dataclass
class SyzygyGenerators:
    """Finite certificate for the row kernel of a matrix over R.

    ``sigma`` generates the kernel over the cutoff ring R_n; ``tau``
    generates the kernel of the x-part over k[x1..xn].  Together they
    describe the full kernel over R: the R_n block plus every multiple of
    the tau rows by x-variables beyond the cutoff.
    """

    n: int
    sigma: List[Matrix]
    tau: List[Matrix]

    @property
    def d(self) -> int:
        return len(self.sigma)

    @property
    def e(self) -> int:
        return len(self.tau)


def kernel_generators(gamma: Matrix, n: Optional[int] = None) -> SyzygyGenerators:
    """Kernel certificate of gamma, optionally at an enlarged cutoff."""
    ring = gamma.ring
    if not isinstance(ring, NoncoherentRing):
        raise ValueError(f"NC backend expected, got {ring.name}")
    least = min_cutoff([gamma])
    n = least if n is None else max(n, least)
    ringz = PolyRing(ring.p, n, True)
    ringx = PolyRing(ring.p, n, False)
    dense = [[gamma[i, j].to_dense(ringz) for j in range(gamma.cols)]
             for i in range(gamma.rows)]
    sigma = [Matrix(ring, 1, gamma.rows, [RElement.from_dense(q) for q in row])
             for row in rn_row_syzygies(dense, gamma.cols, ringz)]
    dense_x = [[gamma[i, j].x_part.to_dense(ringx) for j in range(gamma.cols)]
               for i in range(gamma.rows)]
    tau = [Matrix(ring, 1, gamma.rows,
                  [RElement.from_dense(q) for q in s.to_row()])
           for s in module_syzygies(dense_x, gamma.cols, ringx)]
    return SyzygyGenerators(n, sigma, tau)


def decide_lift_R(A: Matrix, B: Matrix) -> Optional[Matrix]:
    """Solve X @ A == B over R by deciding over the cutoff ring.

    A lift over R exists iff one exists over R_n once n covers every index
    in sight: the quotient map R ->> R_n sends any R-lift to an R_n-lift,
    and R_n sits inside R.
    """
    ring = A.ring
    if not isinstance(ring, NoncoherentRing):
        raise ValueError(f"NC backend expected, got {ring.name}")
    if A.ring != B.ring:
        raise ValueError("backend mismatch")
    if A.cols != B.cols:
        raise ValueError("dimension mismatch")
    n = min_cutoff([A, B])
    ringz = PolyRing(ring.p, n, True)
    a_rows = [[A[i, j].to_dense(ringz) for j in range(A.cols)] for i in range(A.rows)]
    b_rows = [[B[i, j].to_dense(ringz) for j in range(B.cols)] for i in range(B.rows)]
    x_rows = rn_decide_lift(a_rows, b_rows, A.cols, ringz)
    if x_rows is None:
        return None
    ent = [RElement.from_dense(p) for row in x_rows for p in row]
    return Matrix(ring, B.rows, A.rows, ent)


def syzygy_inclusion_R(first: Cospan, second: Cospan) -> InclusionDecision:
    """Decide Syz(first) ⊆ Syz(second) over R, constructively.

    The pair is brought to the simplified form (relations absorbed into the
    first leg), the kernel certificate of the simplified first leg is
    computed at a cutoff covering all three matrices, and each sigma
    generator plus each tau generator times x_{n+1} is checked against the
    simplified second cospan by a lift decision.  Passing those finitely
    many checks settles every kernel element: multiples of tau by higher
    variables reduce to the checked one by swapping variables beyond the
    cutoff, which fixes all three matrices.
    """
    ring = first.ring
    if not isinstance(ring, NoncoherentRing):
        raise ValueError(f"NC backend expected, got {ring.name}")
    if first.ring != second.ring:
        raise ValueError("backend mismatch")
    if first.rank != second.rank:
        raise ValueError("first objects differ")
    first2, second2 = simplify_cospan_pair(first, second)
    n = max(min_cutoff([first2.gens]), min_cutoff([second2.gens]), min_cutoff([second2.rels]))
    cert = kernel_generators(first2.gens, n)
    xnext = RElement.x(ring.p, n + 1)
    candidates = list(cert.sigma) + [t.scale(xnext) for t in cert.tau]
    a = first.rank
    checks = []
    for srow in candidates:
        w = decide_lift_R(second2.rels, srow @ second2.gens)
        sa = srow.block(0, 1, 0, a)
        if w is None:
            return InclusionDecision(False, counterexample=sa, checks=checks)
        checks.append((sa, w))

    def witness(sigma: Matrix) -> Matrix:
        w = decide_lift_R(second.rels, sigma @ second.gens)
        if w is None:
            raise ValueError("input is not a syzygy of the second cospan")
        return w

    return InclusionDecision(True, witness=witness, checks=checks)


# ---------------------------------------------------------------------------
# Literal syntax: as the dense rings, but with unbounded variable indices
# ---------------------------------------------------------------------------

_TERM_RE = re.compile(r"[+-]?[^+-]+")
_FACTOR_RE = re.compile(r"^(?:(x(\d+))|(z))(?:\^(\d+))?$")


def parse_relement(text: str, p: int = 101) -> RElement:
    """Parse an element of R; x17 and friends are legal, relations vanish."""
    s = text.replace(" ", "")
    if not s:
        raise ValueError("empty element literal")
    raw = []
    matched = _TERM_RE.findall(s)
    if "".join(matched) != s:
        raise ValueError(f"cannot parse element {text!r}")
    for term in matched:
        sign = 1
        body = term
        if body[0] == "+":
            body = body[1:]
        elif body[0] == "-":
            sign = -1
            body = body[1:]
        if not body:
            raise ValueError(f"dangling sign in {text!r}")
        coeff = sign
        xexps: dict = {}
        zdeg = 0
        for part in body.split("*"):
            if not part:
                raise ValueError(f"empty factor in {text!r}")
            if part.isdigit():
                coeff *= int(part)
                continue
            fm = _FACTOR_RE.match(part)
            if fm is None:
                raise ValueError(f"bad factor {part!r} in {text!r}")
            exp = int(fm.group(4)) if fm.group(4) else 1
            if fm.group(3):
                zdeg += exp
            else:
                i = int(fm.group(2))
                if i < 1:
                    raise ValueError(f"bad variable index in {text!r}")
                xexps[i] = xexps.get(i, 0) + exp
        raw.append((coeff, xexps, zdeg))
    return r_normalize(raw, p)


def format_relement(a: RElement) -> str:
    """Canonical literal: x-part by descending degree, then the z-part."""
    parts = []
    xmonos = sorted(a.px, key=lambda mc: (-sum(e for _, e in mc[0]), mc[0]))
    for mono, c in xmonos:
        factors = [f"x{i}" if e == 1 else f"x{i}^{e}" for i, e in mono]
        if not factors:
            parts.append(str(c))
        elif c == 1:
            parts.append("*".join(factors))
        else:
            parts.append(f"{c}*" + "*".join(factors))
    for d, c in sorted(a.pz, key=lambda dc: -dc[0]):
        body = "z" if d == 1 else f"z^{d}"
        parts.append(body if c == 1 else f"{c}*{body}")
    return " + ".join(parts) if parts else "0"
