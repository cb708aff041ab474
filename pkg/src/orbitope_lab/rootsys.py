"""Restricted root systems over the rationals.

A :class:`RootSystem` stores an ordered list of simple roots, the positive
roots with their multiplicities, and an exact symmetric positive-definite
bilinear form on the ambient coordinate space (the Gram matrix, identity by
default).  Root/vector pairings go through that form, so a root acts on a
vector as ``lambda(v) = <lambda, v>_G``.

Built-in catalog (all with the plain dot product, multiplicity 1):

* ``A<n>``   in the sum-zero hyperplane of (n+1)-space,
* ``B<n>``, ``C<n>``, ``D<n>``, ``BC<n>`` in n-space,
* ``G2``     in the sum-zero hyperplane of 3-space,
* ``F4``     in 4-space.

``BC<n>`` is non-reduced: ``e_i`` and ``2 e_i`` are both roots.  Multiplicity
tables and a nonzero Cartan-centralizer dimension (used only by dimension
bookkeeping downstream) can be supplied through the text format, see
:func:`root_system_from_text`.
"""

from __future__ import annotations

import functools
import os
import re
from dataclasses import dataclass
from fractions import Fraction

from .linalg import (
    Mat,
    Vec,
    det,
    dot,
    frac,
    identity,
    inverse,
    matvec,
    nullspace,
    primitive,
    rank,
    solve,
    vec,
    vec_add,
    vec_scale,
)

_LABEL_RE = re.compile(r"^(BC|A|B|C|D)([1-9][0-9]*)$")


@dataclass(frozen=True)
class RootSystem:
    """A restricted root system with exact rational data.

    ``positive_multiplicities`` is aligned with ``positive_roots``; the
    multiplicity of a negative root is that of its negation.
    ``centralizer_dim`` is the dimension of the centralizer of the Cartan
    subspace inside the compact factor (0 for split forms); it only enters
    parabolic dimension counts.
    """

    label: str
    ambient_dim: int
    simple_roots: Mat
    positive_roots: Mat
    positive_multiplicities: tuple
    inner_product: Mat
    centralizer_dim: int = 0

    @property
    def rank(self) -> int:
        return len(self.simple_roots)

    @property
    def roots(self) -> tuple:
        """All roots, positive then negative, in matching order."""
        return self.positive_roots + tuple(
            vec_scale(-1, r) for r in self.positive_roots
        )

    @property
    def multiplicities(self) -> dict:
        out = {}
        for root, m in zip(self.positive_roots, self.positive_multiplicities):
            out[root] = m
            out[vec_scale(-1, root)] = m
        return out

    def multiplicity(self, root: Vec) -> int:
        mults = self.multiplicities
        if root not in mults:
            raise ValueError(f"{root!r} is not a root of {self.label}")
        return mults[root]

    @property
    def is_reduced(self) -> bool:
        pos = set(self.positive_roots)
        return not any(vec_scale(2, r) in pos for r in pos)


@dataclass(frozen=True)
class ChamberPoint:
    """A point of the Cartan space with its exact sign data.

    ``signs`` is aligned with ``root_system.positive_roots`` and holds the
    sign (-1, 0, +1) of each positive root's pairing with ``coords``.
    """

    root_system: RootSystem
    coords: Vec
    signs: tuple

    @property
    def sign_vector(self) -> dict:
        return dict(zip(self.root_system.positive_roots, self.signs))

    @property
    def is_dominant(self) -> bool:
        return all(s >= 0 for s in self.signs)


def pairing(rs: RootSystem, lam: Vec, v: Vec) -> Fraction:
    """Exact value of the root (or any covector) lam on v: <lam, v>_G."""
    if len(lam) != rs.ambient_dim or len(v) != rs.ambient_dim:
        raise ValueError(
            f"dimension mismatch: expected vectors of length {rs.ambient_dim}"
        )
    return dot(lam, matvec(rs.inner_product, v))


def metric_covector(rs: RootSystem, v: Vec) -> Vec:
    """Plain-coordinate covector of v: G v, so that <lam, v>_G = (G v) . lam.

    Callers that hand a direction to coordinate-only code (the polytope
    module works with plain dot products) must convert through this map.
    With the identity form it is the identity.
    """
    return matvec(rs.inner_product, vec(v))


def chamber_point(rs: RootSystem, coords) -> ChamberPoint:
    x = vec(coords)
    if len(x) != rs.ambient_dim:
        raise ValueError(f"expected {rs.ambient_dim} coordinates, got {len(x)}")
    signs = []
    for lam in rs.positive_roots:
        p = pairing(rs, lam, x)
        signs.append(0 if p == 0 else (1 if p > 0 else -1))
    return ChamberPoint(rs, x, tuple(signs))


def share_closed_chamber(rs: RootSystem, x, y) -> bool:
    """True iff lam(x) * lam(y) >= 0 for every root lam.

    Products over positive roots suffice since negation flips both factors.
    This is the exact combinatorial test for x and y lying in a common
    closed Weyl chamber.
    """
    xv, yv = vec(x), vec(y)
    for lam in rs.positive_roots:
        if pairing(rs, lam, xv) * pairing(rs, lam, yv) < 0:
            return False
    return True


def is_dominant(rs: RootSystem, x) -> bool:
    xv = vec(x)
    return all(pairing(rs, a, xv) >= 0 for a in rs.simple_roots)


def wall_set(rs: RootSystem, x) -> frozenset:
    """Indices of the simple roots vanishing on a dominant x."""
    xv = vec(x)
    vals = [pairing(rs, a, xv) for a in rs.simple_roots]
    if any(v < 0 for v in vals):
        raise ValueError("x is not dominant; apply weyl.to_dominant first")
    return frozenset(i for i, v in enumerate(vals) if v == 0)


def simple_coefficients(rs: RootSystem, root) -> tuple:
    """Coefficients of a root in the simple-root basis (exact)."""
    r = vec(root)
    a = tuple(
        tuple(alpha[i] for alpha in rs.simple_roots) for i in range(rs.ambient_dim)
    )
    c = solve(a, r)
    if c is None:
        raise ValueError(f"{root!r} is not in the span of the simple roots")
    return c


def root_support(rs: RootSystem, root) -> frozenset:
    """Indices of simple roots appearing in the root's expansion."""
    return frozenset(i for i, c in enumerate(simple_coefficients(rs, root)) if c != 0)


@functools.lru_cache(maxsize=None)
def fundamental_coweights(rs: RootSystem) -> tuple:
    """Basis of span(simple roots) dual to the simple coroots.

    The i-th coweight w_i satisfies <alpha_j, w_i>_G = 0 for j != i and
    <alpha_i, w_i>_G = <alpha_i, alpha_i>_G / 2, i.e. the coroot pairing
    <alpha_j^v, w_i> equals delta_ij.
    """
    k = rs.rank
    gram = tuple(
        tuple(pairing(rs, rs.simple_roots[i], rs.simple_roots[j]) for j in range(k))
        for i in range(k)
    )
    gram_inv = inverse(gram)
    coweights = []
    for i in range(k):
        scale = pairing(rs, rs.simple_roots[i], rs.simple_roots[i]) / 2
        w = (frac(0),) * rs.ambient_dim
        for j in range(k):
            w = vec_add(w, vec_scale(scale * gram_inv[i][j], rs.simple_roots[j]))
        coweights.append(w)
    return tuple(coweights)


def dominant_with_walls(rs: RootSystem, wall_indices):
    """A dominant integer vector whose wall set is exactly the given one.

    For a proper subset S of the simple roots this is the primitive multiple
    of the sum of the coweights off S.  For S equal to the full simple set a
    nonzero vector orthogonal to every root is returned when the ambient
    space is larger than the root span, and None otherwise (no such nonzero
    vector exists).
    """
    walls = frozenset(int(i) for i in wall_indices)
    if any(i < 0 or i >= rs.rank for i in walls):
        raise ValueError("wall index out of range")
    if len(walls) == rs.rank:
        kernel = nullspace(
            tuple(matvec(rs.inner_product, a) for a in rs.simple_roots)
        )
        if not kernel:
            return None
        return vec(primitive(kernel[0]))
    coweights = fundamental_coweights(rs)
    x = (frac(0),) * rs.ambient_dim
    for i in range(rs.rank):
        if i not in walls:
            x = vec_add(x, coweights[i])
    return vec(primitive(x))


def _validate(rs: RootSystem) -> RootSystem:
    d = rs.ambient_dim
    for v in rs.simple_roots + rs.positive_roots:
        if len(v) != d:
            raise ValueError("root length does not match the ambient dimension")
    if len(rs.inner_product) != d or any(len(r) != d for r in rs.inner_product):
        raise ValueError("Gram matrix shape does not match the ambient dimension")
    g = rs.inner_product
    for i in range(d):
        for j in range(d):
            if g[i][j] != g[j][i]:
                raise ValueError("Gram matrix is not symmetric")
    for k in range(1, d + 1):
        minor = tuple(tuple(g[i][j] for j in range(k)) for i in range(k))
        if det(minor) <= 0:
            raise ValueError("Gram matrix is not positive definite")
    if rank(rs.simple_roots) != len(rs.simple_roots):
        raise ValueError("simple roots are not linearly independent")
    if len(rs.positive_multiplicities) != len(rs.positive_roots):
        raise ValueError("multiplicity table does not match the positive roots")
    if any(m < 1 or m != int(m) for m in rs.positive_multiplicities):
        raise ValueError("multiplicities must be positive integers")
    if len(set(rs.positive_roots)) != len(rs.positive_roots):
        raise ValueError("duplicate positive root")
    if rs.centralizer_dim < 0:
        raise ValueError("centralizer dimension must be nonnegative")
    pos = set(rs.positive_roots)
    for r in rs.positive_roots:
        if vec_scale(-1, r) in pos:
            raise ValueError("positive roots contain a root and its negation")
        coeffs = simple_coefficients(rs, r)
        if any(c.denominator != 1 or c < 0 for c in coeffs):
            raise ValueError(
                f"{r!r} is not a nonnegative integer combination of simple roots"
            )
    for a in rs.simple_roots:
        if a not in pos:
            raise ValueError("every simple root must be listed as a positive root")
    return rs


def make_root_system(
    simple_roots,
    positive_roots,
    *,
    multiplicities=None,
    inner_product=None,
    centralizer_dim: int = 0,
    label: str = "custom",
) -> RootSystem:
    """Build and validate a root system from explicit data.

    ``multiplicities`` may be None (all 1), a sequence aligned with
    ``positive_roots``, or a mapping from root to multiplicity (a mapping may
    mention negative roots; negation symmetry is enforced).
    """
    simples = tuple(vec(r) for r in simple_roots)
    positives = tuple(vec(r) for r in positive_roots)
    d = len(simples[0]) if simples else 0
    if multiplicities is None:
        mults = tuple(1 for _ in positives)
    elif isinstance(multiplicities, dict):
        table = {vec(k): int(v) for k, v in multiplicities.items()}
        for r, m in list(table.items()):
            neg = vec_scale(-1, r)
            if neg in table and table[neg] != m:
                raise ValueError("multiplicity table inconsistent under negation")
        mults = tuple(table.get(r, table.get(vec_scale(-1, r), 1)) for r in positives)
    else:
        mults = tuple(int(m) for m in multiplicities)
    gram = identity(d) if inner_product is None else tuple(vec(r) for r in inner_product)
    return _validate(
        RootSystem(
            label=label,
            ambient_dim=d,
            simple_roots=simples,
            positive_roots=positives,
            positive_multiplicities=mults,
            inner_product=gram,
            centralizer_dim=centralizer_dim,
        )
    )


def _e(i: int, n: int) -> Vec:
    return tuple(frac(1 if j == i else 0) for j in range(n))


def _catalog(label: str) -> RootSystem:
    if label == "G2":
        a1 = vec((1, -1, 0))
        a2 = vec((-2, 1, 1))
        positives = (
            a1,
            a2,
            vec_add(a1, a2),
            vec_add(vec_scale(2, a1), a2),
            vec_add(vec_scale(3, a1), a2),
            vec_add(vec_scale(3, a1), vec_scale(2, a2)),
        )
        return make_root_system((a1, a2), positives, label="G2")
    if label == "F4":
        n = 4
        simples = (
            vec((0, 1, -1, 0)),
            vec((0, 0, 1, -1)),
            vec((0, 0, 0, 1)),
            vec((Fraction(1, 2), Fraction(-1, 2), Fraction(-1, 2), Fraction(-1, 2))),
        )
        positives = [_e(i, n) for i in range(n)]
        for i in range(n):
            for j in range(i + 1, n):
                positives.append(vec_sub_pair(_e(i, n), _e(j, n), 1))
                positives.append(vec_sub_pair(_e(i, n), _e(j, n), -1))
        for s2 in (1, -1):
            for s3 in (1, -1):
                for s4 in (1, -1):
                    positives.append(
                        vec_scale(
                            Fraction(1, 2),
                            vec((1, s2, s3, s4)),
                        )
                    )
        return make_root_system(simples, tuple(positives), label="F4")
    m = _LABEL_RE.match(label)
    if not m:
        raise ValueError(f"malformed root system label {label!r}")
    family, n_str = m.group(1), m.group(2)
    n = int(n_str)
    if family == "A":
        amb = n + 1
        simples = tuple(vec_sub_pair(_e(i, amb), _e(i + 1, amb), -1) for i in range(n))
        positives = tuple(
            vec_sub_pair(_e(i, amb), _e(j, amb), -1)
            for i in range(amb)
            for j in range(i + 1, amb)
        )
        return make_root_system(simples, positives, label=label)
    if family == "D" and n < 2:
        raise ValueError("D-type needs rank at least 2")
    diffs = [
        vec_sub_pair(_e(i, n), _e(j, n), -1) for i in range(n) for j in range(i + 1, n)
    ]
    sums = [
        vec_sub_pair(_e(i, n), _e(j, n), 1) for i in range(n) for j in range(i + 1, n)
    ]
    shorts = [_e(i, n) for i in range(n)]
    longs = [vec_scale(2, _e(i, n)) for i in range(n)]
    chain = tuple(vec_sub_pair(_e(i, n), _e(i + 1, n), -1) for i in range(n - 1))
    if family == "B":
        simples = chain + (_e(n - 1, n),)
        positives = tuple(diffs + sums + shorts)
    elif family == "C":
        simples = chain + (vec_scale(2, _e(n - 1, n)),)
        positives = tuple(diffs + sums + longs)
    elif family == "D":
        simples = chain + (vec_sub_pair(_e(n - 2, n), _e(n - 1, n), 1),)
        positives = tuple(diffs + sums)
    else:  # BC
        simples = chain + (_e(n - 1, n),)
        positives = tuple(diffs + sums + shorts + longs)
    return make_root_system(simples, positives, label=label)


def vec_sub_pair(u: Vec, v: Vec, sign: int) -> Vec:
    """u + sign*v; tiny helper for catalog construction."""
    return vec_add(u, vec_scale(sign, v))


def build_root_system(spec: str) -> RootSystem:
    """Build a root system from a catalog label, a file path, or literal text.

    Labels: ``A<n>``, ``B<n>``, ``C<n>``, ``D<n>``, ``BC<n>``, ``G2``, ``F4``.
    Anything containing a newline is parsed as the text format; anything else
    is treated as a path to a text-format file.
    """
    if not isinstance(spec, str) or not spec.strip():
        raise ValueError("empty root system spec")
    s = spec.strip().upper()
    if s in ("G2", "F4") or _LABEL_RE.match(s):
        return _catalog(s)
    if "\n" in spec:
        return root_system_from_text(spec)
    if os.path.exists(spec):
        with open(spec, "r", encoding="utf-8") as fh:
            return root_system_from_text(fh.read())
    raise ValueError(
        f"malformed root system spec {spec!r}: not a catalog label and not a file"
    )


def root_system_from_text(text: str) -> RootSystem:
    """Parse the root-system text format.

    Directives, one per line (``#`` starts a comment):

    * ``label <token>``                      optional, default ``custom``
    * ``ambient <int>``                      required, must come first
    * ``gram <d*d rationals, row-major>``    optional, default identity
    * ``centralizer <int>``                  optional, default 0
    * ``simple <d rationals>``               one line per simple root, in order
    * ``root <d rationals> [mult <int>]``    one line per root

    ``root`` lines may list only the positive roots (negatives are implied)
    or the full set; if any negative root is listed, the listing must be
    closed under negation with matching multiplicities.
    """
    label = "custom"
    ambient = None
    gram = None
    centralizer = 0
    simples: list[Vec] = []
    listed: list[tuple[Vec, int]] = []

    def fail(line_no: int, msg: str):
        raise ValueError(f"root system text, line {line_no}: {msg}")

    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        key, args = parts[0], parts[1:]
        try:
            if key == "label":
                if len(args) != 1:
                    fail(line_no, "label takes one token")
                label = args[0]
            elif key == "ambient":
                ambient = int(args[0])
                if ambient < 1:
                    fail(line_no, "ambient dimension must be positive")
            elif key == "gram":
                if ambient is None:
                    fail(line_no, "ambient must be declared before gram")
                if len(args) != ambient * ambient:
                    fail(line_no, f"gram needs {ambient * ambient} entries")
                vals = [Fraction(t) for t in args]
                gram = tuple(
                    tuple(vals[i * ambient + j] for j in range(ambient))
                    for i in range(ambient)
                )
            elif key == "centralizer":
                centralizer = int(args[0])
            elif key == "simple":
                if ambient is None:
                    fail(line_no, "ambient must be declared before simple roots")
                if len(args) != ambient:
                    fail(line_no, f"expected {ambient} coordinates")
                simples.append(vec(Fraction(t) for t in args))
            elif key == "root":
                if ambient is None:
                    fail(line_no, "ambient must be declared before roots")
                mult = 1
                coords = args
                if "mult" in args:
                    k = args.index("mult")
                    coords = args[:k]
                    if len(args) != k + 2:
                        fail(line_no, "mult takes one integer")
                    mult = int(args[k + 1])
                if len(coords) != ambient:
                    fail(line_no, f"expected {ambient} coordinates")
                listed.append((vec(Fraction(t) for t in coords), mult))
            else:
                fail(line_no, f"unknown directive {key!r}")
        except (ValueError, ZeroDivisionError) as exc:
            if str(exc).startswith("root system text"):
                raise
            fail(line_no, f"bad value ({exc})")
    if ambient is None:
        raise ValueError("root system text: missing 'ambient' directive")
    if not simples:
        raise ValueError("root system text: no simple roots")
    if not listed:
        raise ValueError("root system text: no roots")
    table: dict[Vec, int] = {}
    for r, m in listed:
        if r in table and table[r] != m:
            raise ValueError(
                f"root system text: root {tuple(map(str, r))} listed with two multiplicities"
            )
        table[r] = m

    coeff_matrix = tuple(
        tuple(alpha[i] for alpha in simples) for i in range(ambient)
    )
    positives: list[Vec] = []
    mults: list[int] = []
    negatives: dict[Vec, int] = {}
    for r, m in table.items():
        coeffs = solve(coeff_matrix, r)
        if coeffs is None:
            raise ValueError(
                "root system text: a listed root is outside the simple-root span"
            )
        if all(c >= 0 for c in coeffs):
            positives.append(r)
            mults.append(m)
        elif all(c <= 0 for c in coeffs):
            negatives[r] = m
        else:
            raise ValueError(
                "root system text: a listed root is neither positive nor negative"
            )
    for r, m in negatives.items():
        pos = vec_scale(-1, r)
        if pos not in table:
            raise ValueError("root system text: root list is not closed under negation")
        if table[pos] != m:
            raise ValueError(
                "root system text: multiplicity table inconsistent under negation"
            )
    return make_root_system(
        simples,
        positives,
        multiplicities=mults,
        inner_product=gram,
        centralizer_dim=centralizer,
        label=label,
    )


def root_system_to_text(rs: RootSystem) -> str:
    """Serialize a root system; round-trips exactly through the parser."""
    lines = [f"label {rs.label}", f"ambient {rs.ambient_dim}"]
    if rs.inner_product != identity(rs.ambient_dim):
        flat = " ".join(str(x) for row in rs.inner_product for x in row)
        lines.append(f"gram {flat}")
    if rs.centralizer_dim:
        lines.append(f"centralizer {rs.centralizer_dim}")
    for a in rs.simple_roots:
        lines.append("simple " + " ".join(str(x) for x in a))
    for r, m in zip(rs.positive_roots, rs.positive_multiplicities):
        lines.append("root " + " ".join(str(x) for x in r) + f" mult {m}")
    for r, m in zip(rs.positive_roots, rs.positive_multiplicities):
        neg = vec_scale(-1, r)
        lines.append("root " + " ".join(str(x) for x in neg) + f" mult {m}")
    return "\n".join(lines) + "\n"
