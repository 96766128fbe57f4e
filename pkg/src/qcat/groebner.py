"""Groebner-basis engine over GF(p)[x1..xm] and GF(p)[x1..xn, z]/(x_i z).

Module elements live in free row modules S^(1 x k); submodule membership
comes with an exact witness, and row syzygies are harvested from a basis
computed under a block elimination order (ambient components strictly
dominate the tracking components, so basis elements with empty ambient
block are exactly the syzygy generators).

The monomial order is degrevlex with x1 > x2 > ... > xm > z, fixed once;
together with deterministic pair selection and a final inter-reduction this
makes every basis canonical for its input.

Quotient-ring computations for R_n = k[x1..xn, z]/(x_i z) never work with
quotient arithmetic directly: inputs are lifted to the free polynomial
ring, the monomial relations x_i*z come along as extra generators, and
results are pushed back down by dropping every monomial that mixes z with
some x_i (confluent, since the relations are monomials).
"""

from __future__ import annotations

import re
from typing import Optional


class PolyRing:
    """GF(p)[x1..x_nx] with an optional trailing variable z."""

    __slots__ = ("p", "nx", "has_z", "nvars")

    def __init__(self, p: int = 101, nx: int = 0, has_z: bool = False):
        if not isinstance(p, int) or p < 2:
            raise ValueError(f"prime expected, got {p!r}")
        d = 2
        while d * d <= p:
            if p % d == 0:
                raise ValueError(f"{p} is not prime")
            d += 1
        if nx < 0:
            raise ValueError("negative variable count")
        self.p = p
        self.nx = nx
        self.has_z = has_z
        self.nvars = nx + (1 if has_z else 0)

    def inv(self, c: int) -> int:
        if c % self.p == 0:
            raise ZeroDivisionError("inverse of 0")
        return pow(c, self.p - 2, self.p)

    def var_name(self, i: int) -> str:
        return "z" if self.has_z and i == self.nx else f"x{i + 1}"

    def __eq__(self, other):
        return (isinstance(other, PolyRing) and other.p == self.p
                and other.nx == self.nx and other.has_z == self.has_z)

    def __hash__(self):
        return hash((self.p, self.nx, self.has_z))

    def __repr__(self):
        vars_ = ", ".join(self.var_name(i) for i in range(self.nvars))
        return f"GF({self.p})[{vars_}]"


def mono_mul(a, b):
    return tuple(x + y for x, y in zip(a, b))


def mono_sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def mono_lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def mono_divides(a, b):
    return all(x <= y for x, y in zip(a, b))


def mono_key(e):
    # degrevlex: higher total degree wins; ties go to the monomial whose
    # exponent is smaller in the last differing (least) variable
    return (sum(e), tuple(-v for v in reversed(e)))


def _term_key(idx, mono, split):
    # components below `split` form the dominating block
    return ((1 if idx < split else 0),) + mono_key(mono) + (-idx,)


class Poly:
    """Polynomial over a PolyRing, stored as a monomial -> coefficient map."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: PolyRing, terms):
        p = ring.p
        clean = {}
        for mono, c in terms.items():
            c %= p
            if c:
                if len(mono) != ring.nvars or any(e < 0 for e in mono):
                    raise ValueError(f"bad monomial {mono!r} for {ring!r}")
                clean[tuple(mono)] = c
        self.ring = ring
        self.terms = clean

    @classmethod
    def zero(cls, ring):
        return cls(ring, {})

    @classmethod
    def const(cls, ring, c):
        return cls(ring, {(0,) * ring.nvars: c})

    @classmethod
    def monomial(cls, ring, mono, c=1):
        return cls(ring, {tuple(mono): c})

    @classmethod
    def variable(cls, ring, i, exp=1):
        mono = [0] * ring.nvars
        mono[i] = exp
        return cls(ring, {tuple(mono): 1})

    def is_zero(self):
        return not self.terms

    def degree(self):
        return max((sum(m) for m in self.terms), default=-1)

    def lt(self):
        mono = max(self.terms, key=mono_key)
        return mono, self.terms[mono]

    def __add__(self, other):
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return Poly(self.ring, out)

    def __sub__(self, other):
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) - c
        return Poly(self.ring, out)

    def __neg__(self):
        return Poly(self.ring, {m: -c for m, c in self.terms.items()})

    def __mul__(self, other):
        out = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = mono_mul(m1, m2)
                out[m] = out.get(m, 0) + c1 * c2
        return Poly(self.ring, out)

    def term_mul(self, mono, c=1):
        return Poly(self.ring, {mono_mul(m, mono): cc * c for m, cc in self.terms.items()})

    def scale(self, c):
        return Poly(self.ring, {m: cc * c for m, cc in self.terms.items()})

    def __eq__(self, other):
        return isinstance(other, Poly) and self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        return hash((self.ring, tuple(sorted(self.terms.items()))))

    def __repr__(self):
        return format_poly(self)


class ModuleElement:
    """Sparse element of a free module S^(1 x rank): index -> Poly."""

    __slots__ = ("ring", "rank", "comps")

    def __init__(self, ring: PolyRing, rank: int, comps):
        clean = {}
        for idx, poly in comps.items():
            if not (0 <= idx < rank):
                raise ValueError(f"component {idx} outside rank {rank}")
            if poly.ring != ring:
                raise ValueError("mixed rings in module element")
            if not poly.is_zero():
                clean[idx] = poly
        self.ring = ring
        self.rank = rank
        self.comps = clean

    @classmethod
    def zero(cls, ring, rank):
        return cls(ring, rank, {})

    @classmethod
    def unit(cls, ring, rank, idx):
        return cls(ring, rank, {idx: Poly.const(ring, 1)})

    @classmethod
    def from_row(cls, ring, row):
        return cls(ring, len(row), {i: p for i, p in enumerate(row)})

    def to_row(self):
        zero = Poly.zero(self.ring)
        return [self.comps.get(i, zero) for i in range(self.rank)]

    def comp(self, idx):
        return self.comps.get(idx, Poly.zero(self.ring))

    def is_zero(self):
        return not self.comps

    def terms(self):
        for idx, poly in self.comps.items():
            for mono, c in poly.terms.items():
                yield idx, mono, c

    def leading(self, split):
        best = None
        bestkey = None
        for idx, mono, c in self.terms():
            k = _term_key(idx, mono, split)
            if bestkey is None or k > bestkey:
                best = (idx, mono, c)
                bestkey = k
        return best

    def __add__(self, other):
        out = dict(self.comps)
        for idx, poly in other.comps.items():
            out[idx] = out.get(idx, Poly.zero(self.ring)) + poly
        return ModuleElement(self.ring, self.rank, out)

    def __sub__(self, other):
        out = dict(self.comps)
        for idx, poly in other.comps.items():
            out[idx] = out.get(idx, Poly.zero(self.ring)) - poly
        return ModuleElement(self.ring, self.rank, out)

    def __neg__(self):
        return ModuleElement(self.ring, self.rank, {i: -p for i, p in self.comps.items()})

    def term_mul(self, mono, c=1):
        return ModuleElement(self.ring, self.rank,
                             {i: p.term_mul(mono, c) for i, p in self.comps.items()})

    def poly_mul(self, poly):
        return ModuleElement(self.ring, self.rank,
                             {i: p * poly for i, p in self.comps.items()})

    def scale(self, c):
        return ModuleElement(self.ring, self.rank,
                             {i: p.scale(c) for i, p in self.comps.items()})

    def __eq__(self, other):
        return (isinstance(other, ModuleElement) and self.ring == other.ring
                and self.rank == other.rank and self.comps == other.comps)

    def __repr__(self):
        if self.is_zero():
            return "(0)"
        parts = [f"e{i}*({format_poly(p)})" for i, p in sorted(self.comps.items())]
        return "(" + " + ".join(parts) + ")"


class GroebnerBasis:
    """A reduced basis plus the combination of each element from the input.

    ``elements[i] == sum_j combos[i][j] * generators[j]`` exactly, which lets
    membership witnesses produced against the basis be rewritten against the
    original generating set.
    """

    __slots__ = ("ring", "rank", "split", "elements", "combos", "generators")

    def __init__(self, ring, rank, split, elements, combos, generators):
        self.ring = ring
        self.rank = rank
        self.split = split
        self.elements = elements
        self.combos = combos
        self.generators = generators

    def express(self, coeffs):
        """Rewrite coefficients against ``elements`` into ones against ``generators``."""
        out = [Poly.zero(self.ring) for _ in self.generators]
        for c, combo in zip(coeffs, self.combos):
            if c.is_zero():
                continue
            for j, cj in combo.items():
                out[j] = out[j] + c * cj
        return out

    def __len__(self):
        return len(self.elements)


def _divide(f: ModuleElement, divisors, split):
    """Full division: f == sum quot[k] * divisors[k] + r, no term of r reducible."""
    ring = f.ring
    lts = [d.leading(split) for d in divisors]
    work = {idx: dict(poly.terms) for idx, poly in f.comps.items()}
    rem: dict = {}
    quot = [dict() for _ in divisors]

    def top_term():
        best = None
        bestkey = None
        for idx, terms in work.items():
            for mono in terms:
                k = _term_key(idx, mono, split)
                if bestkey is None or k > bestkey:
                    best = (idx, mono)
                    bestkey = k
        return best

    while work:
        idx, mono = top_term()
        c = work[idx][mono]
        hit = None
        for k, lt in enumerate(lts):
            if lt is not None and lt[0] == idx and mono_divides(lt[1], mono):
                hit = k
                break
        if hit is None:
            rem.setdefault(idx, {})[mono] = c
            del work[idx][mono]
            if not work[idx]:
                del work[idx]
            continue
        lidx, lmono, lc = lts[hit]
        u = mono_sub(mono, lmono)
        t = (c * ring.inv(lc)) % ring.p
        quot[hit][u] = (quot[hit].get(u, 0) + t) % ring.p
        for didx, dpoly in divisors[hit].comps.items():
            tgt = work.setdefault(didx, {})
            for dmono, dc in dpoly.terms.items():
                m2 = mono_mul(dmono, u)
                v = (tgt.get(m2, 0) - t * dc) % ring.p
                if v:
                    tgt[m2] = v
                else:
                    tgt.pop(m2, None)
            if not tgt:
                del work[didx]
    r = ModuleElement(ring, f.rank, {i: Poly(ring, t) for i, t in rem.items()})
    return r, [Poly(ring, q) for q in quot]


def _combo_sub_scaled(combo, other, factor):
    """combo -= factor * other, in place on a fresh dict."""
    out = dict(combo)
    for j, cj in other.items():
        upd = out.get(j, Poly.zero(cj.ring)) - factor * cj
        if upd.is_zero():
            out.pop(j, None)
        else:
            out[j] = upd
    return out


def buchberger(gens, split: Optional[int] = None) -> GroebnerBasis:
    """Buchberger's algorithm with the chain (lcm) criterion.

    ``split`` selects the block elimination order: components below it
    strictly dominate the rest.  The default compares all components in one
    block.  The returned basis is inter-reduced, monic, and sorted, hence
    canonical for the given generators.
    """
    gens = list(gens)
    if not gens:
        return GroebnerBasis(None, 0, 0, [], [], [])
    ring = gens[0].ring
    rank = gens[0].rank
    for g in gens:
        if g.ring != ring or g.rank != rank:
            raise ValueError("generators disagree on ring or ambient rank")
    if split is None:
        split = rank

    basis = []
    combos = []
    lts = []
    for gi, g in enumerate(gens):
        if g.is_zero():
            continue
        lt = g.leading(split)
        c = ring.inv(lt[2])
        basis.append(g.scale(c))
        combos.append({gi: Poly.const(ring, c)})
        lts.append(basis[-1].leading(split))

    pairs = set()
    for i in range(len(basis)):
        for j in range(i + 1, len(basis)):
            if lts[i][0] == lts[j][0]:
                pairs.add((i, j))
    done = set()

    def pair_order(pr):
        i, j = pr
        lcm = mono_lcm(lts[i][1], lts[j][1])
        return (sum(lcm), i, j)

    while pairs:
        i, j = min(pairs, key=pair_order)
        pairs.discard((i, j))
        lcm = mono_lcm(lts[i][1], lts[j][1])
        skip = False
        for k in range(len(basis)):
            if k in (i, j):
                continue
            if lts[k][0] == lts[i][0] and mono_divides(lts[k][1], lcm):
                if (min(i, k), max(i, k)) in done and (min(j, k), max(j, k)) in done:
                    skip = True
                    break
        done.add((i, j))
        if skip:
            continue
        ui = mono_sub(lcm, lts[i][1])
        uj = mono_sub(lcm, lts[j][1])
        s = basis[i].term_mul(ui) - basis[j].term_mul(uj)
        scombo = _combo_sub_scaled(
            {k: v.term_mul(ui) for k, v in combos[i].items()},
            combos[j], Poly.monomial(ring, uj))
        r, quot = _divide(s, basis, split)
        for k, q in enumerate(quot):
            if not q.is_zero():
                scombo = _combo_sub_scaled(scombo, combos[k], q)
        if r.is_zero():
            continue
        lt = r.leading(split)
        c = ring.inv(lt[2])
        r = r.scale(c)
        scombo = {k: v.scale(c) for k, v in scombo.items()}
        new = len(basis)
        basis.append(r)
        combos.append(scombo)
        lts.append(r.leading(split))
        for k in range(new):
            if lts[k][0] == lts[new][0]:
                pairs.add((k, new))

    basis, combos = _interreduce(basis, combos, split, ring)
    order = sorted(range(len(basis)),
                   key=lambda k: _term_key(*basis[k].leading(split)[:2], split),
                   reverse=True)
    basis = [basis[k] for k in order]
    combos = [combos[k] for k in order]
    return GroebnerBasis(ring, rank, split, basis, combos, gens)


def _interreduce(basis, combos, split, ring):
    basis = list(basis)
    combos = list(combos)
    changed = True
    while changed:
        changed = False
        for idx in range(len(basis)):
            others = basis[:idx] + basis[idx + 1:]
            if not others:
                continue
            r, quot = _divide(basis[idx], others, split)
            if r == basis[idx]:
                continue
            combo = combos[idx]
            other_combos = combos[:idx] + combos[idx + 1:]
            for k, q in enumerate(quot):
                if not q.is_zero():
                    combo = _combo_sub_scaled(combo, other_combos[k], q)
            if r.is_zero():
                del basis[idx]
                del combos[idx]
            else:
                lt = r.leading(split)
                c = ring.inv(lt[2])
                basis[idx] = r.scale(c)
                combos[idx] = {k: v.scale(c) for k, v in combo.items()}
            changed = True
            break
    return basis, combos


def normal_form(f: ModuleElement, gb: GroebnerBasis):
    """Remainder of f modulo the basis plus exact witness coefficients.

    Returns (r, coeffs) with ``f == sum coeffs[i] * gb.elements[i] + r``.
    """
    if not gb.elements:
        return f, []
    return _divide(f, gb.elements, gb.split)


def module_syzygies(rows, ncols: Optional[int] = None, ring: Optional[PolyRing] = None):
    """Generators of { s : s @ A == 0 } for the matrix A given by ``rows``.

    Each row is a list of Poly of length ``ncols``.  The rows are tagged with
    tracking components, a basis is computed under the elimination order, and
    elements supported only on the tracking block are the answer.
    """
    rows = [list(r) for r in rows]
    m = len(rows)
    if m == 0:
        return []
    if ncols is None:
        ncols = len(rows[0])
    if ring is None:
        ring = rows[0][0].ring if rows[0] else None
    if ring is None:
        raise ValueError("ring required for zero-width rows")
    gens = []
    for i, row in enumerate(rows):
        if len(row) != ncols:
            raise ValueError("ragged rows")
        comps = {j: p for j, p in enumerate(row)}
        comps[ncols + i] = Poly.const(ring, 1)
        gens.append(ModuleElement(ring, ncols + m, comps))
    gb = buchberger(gens, split=ncols)
    out = []
    for el in gb.elements:
        if all(idx >= ncols for idx in el.comps):
            out.append(ModuleElement(ring, m, {idx - ncols: p for idx, p in el.comps.items()}))
    return out


# ---------------------------------------------------------------------------
# The quotient rings R_n = k[x1..xn, z]/(x_1 z, ..., x_n z)
# ---------------------------------------------------------------------------

def rn_reduce(poly: Poly) -> Poly:
    """Canonical form in R_n: drop every monomial mixing z with some x_i."""
    ring = poly.ring
    if not ring.has_z:
        raise ValueError("rn_reduce needs a ring with z")
    zi = ring.nx
    keep = {m: c for m, c in poly.terms.items()
            if m[zi] == 0 or all(m[k] == 0 for k in range(ring.nx))}
    return Poly(ring, keep)


def rn_relation_rows(ring: PolyRing, ncols: int):
    """The rows x_i*z*e_j generating the defining relations in S^(1 x ncols)."""
    if not ring.has_z:
        raise ValueError("relation rows need a ring with z")
    rows = []
    for i in range(ring.nx):
        mono = [0] * ring.nvars
        mono[i] = 1
        mono[ring.nx] = 1
        rel = Poly.monomial(ring, tuple(mono))
        for j in range(ncols):
            row = [Poly.zero(ring)] * ncols
            row[j] = rel
            rows.append(row)
    return rows


def rn_row_syzygies(rows, ncols: Optional[int] = None, ring: Optional[PolyRing] = None):
    """Generators of the row kernel of a matrix over R_n (entries canonical).

    The matrix is lifted to the free ring, the relation rows are appended,
    syzygies of the stack are computed, and the block belonging to the
    original rows is reduced back to canonical form.
    """
    rows = [list(r) for r in rows]
    m = len(rows)
    if m == 0:
        return []
    if ncols is None:
        ncols = len(rows[0])
    if ring is None:
        ring = rows[0][0].ring if rows[0] else None
    if ring is None:
        raise ValueError("ring required for zero-width rows")
    stacked = rows + rn_relation_rows(ring, ncols)
    syz = module_syzygies(stacked, ncols, ring)
    out = []
    for s in syz:
        row = [rn_reduce(s.comp(i)) for i in range(m)]
        if all(p.is_zero() for p in row):
            continue
        if row in out:
            continue
        out.append(row)
    return out


def rn_decide_lift(a_rows, b_rows, ncols: int, ring: PolyRing):
    """Solve X @ A == B over R_n, or return None.

    Row membership runs in the free ring against the rows of A together with
    the relation rows; witness coefficients of relation rows are discarded
    (they multiply zero in R_n) and the rest is reduced to canonical form.
    """
    a_rows = [list(r) for r in a_rows]
    b_rows = [list(r) for r in b_rows]
    m = len(a_rows)
    gens = [ModuleElement.from_row(ring, row) for row in a_rows]
    gens += [ModuleElement.from_row(ring, row) for row in rn_relation_rows(ring, ncols)]
    gb = buchberger(gens)
    out = []
    for row in b_rows:
        if len(row) != ncols:
            raise ValueError("ragged rows")
        f = ModuleElement.from_row(ring, row)
        r, coeffs = normal_form(f, gb)
        if not r.is_zero():
            return None
        orig = gb.express(coeffs)
        out.append([rn_reduce(orig[j]) for j in range(m)])
    return out


# ---------------------------------------------------------------------------
# Literal syntax: 3*x1^2*x2 + z^3 + 1
# ---------------------------------------------------------------------------

_TERM_RE = re.compile(r"[+-]?[^+-]+")
_FACTOR_RE = re.compile(r"^(?:(x(\d+))|(z))(?:\^(\d+))?$")


def parse_poly(text: str, ring: PolyRing) -> Poly:
    """Parse the fixed polynomial literal syntax; coefficients reduce mod p."""
    s = text.replace(" ", "")
    if not s:
        raise ValueError("empty polynomial literal")
    if s in ("0", "+0", "-0"):
        return Poly.zero(ring)
    terms = {}
    matched = _TERM_RE.findall(s)
    if "".join(matched) != s:
        raise ValueError(f"cannot parse polynomial {text!r}")
    for raw in matched:
        sign = 1
        body = raw
        if body[0] == "+":
            body = body[1:]
        elif body[0] == "-":
            sign = -1
            body = body[1:]
        if not body:
            raise ValueError(f"dangling sign in {text!r}")
        coeff = sign
        mono = [0] * ring.nvars
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
                if not ring.has_z:
                    raise ValueError(f"variable z not available in {ring!r}")
                mono[ring.nx] += exp
            else:
                i = int(fm.group(2))
                if not (1 <= i <= ring.nx):
                    raise ValueError(f"variable x{i} not available in {ring!r}")
                mono[i - 1] += exp
        key = tuple(mono)
        terms[key] = terms.get(key, 0) + coeff
    return Poly(ring, terms)


def format_poly(poly: Poly) -> str:
    """Canonical literal form: terms in descending degrevlex order."""
    if poly.is_zero():
        return "0"
    ring = poly.ring
    parts = []
    for mono in sorted(poly.terms, key=mono_key, reverse=True):
        c = poly.terms[mono]
        factors = []
        for i, e in enumerate(mono):
            if e == 0:
                continue
            name = ring.var_name(i)
            factors.append(name if e == 1 else f"{name}^{e}")
        if not factors:
            parts.append(str(c))
        elif c == 1:
            parts.append("*".join(factors))
        else:
            parts.append(f"{c}*" + "*".join(factors))
    return " + ".join(parts)
