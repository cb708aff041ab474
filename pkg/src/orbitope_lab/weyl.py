"""Finite reflection groups as exact rational matrices.

The group attached to a root system is generated by the simple reflections

    s_a(v) = v - 2 <a, v>_G / <a, a>_G * a

and enumerated by breadth-first closure, deduplicating by exact matrix
equality.  Elements are listed in BFS order (word length first, then
lexicographic on generator indices), which fixes every canonical choice
downstream: words are reduced, ``to_dominant`` picks the first witness,
orbits are listed in first-discovery order.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import NamedTuple

from .linalg import (
    Mat,
    Vec,
    identity,
    matmul,
    matvec,
    transpose,
    vec,
    vec_add,
    vec_scale,
)
from .rootsys import RootSystem, pairing

DEFAULT_ORDER_CAP = 51840


@dataclass(frozen=True)
class WeylGroup:
    """A reflection group with exact elements and reduced words.

    ``generator_indices`` names which simple roots of the root system
    generate this group (the full simple set for the whole Weyl group, a
    subset for parabolic subgroups).  ``words[i]`` spells ``elements[i]`` as
    a product of simple reflections, letters being simple-root indices.
    """

    root_system: RootSystem
    generator_indices: tuple
    elements: tuple
    words: tuple

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def generators(self) -> tuple:
        return tuple(
            self.elements[self.words.index((idx,))] for idx in self.generator_indices
        )

    @cached_property
    def element_index(self) -> dict:
        return {m: i for i, m in enumerate(self.elements)}


def simple_reflection(rs: RootSystem, index: int) -> Mat:
    """Exact matrix of the reflection in the index-th simple root."""
    alpha = rs.simple_roots[index]
    norm2 = pairing(rs, alpha, alpha)
    galpha = matvec(rs.inner_product, alpha)
    n = rs.ambient_dim
    scale = 2 / norm2
    return tuple(
        tuple(
            (1 if a == b else 0) - scale * alpha[a] * galpha[b] for b in range(n)
        )
        for a in range(n)
    )


def generate(rs: RootSystem, *, order_cap: int = DEFAULT_ORDER_CAP) -> WeylGroup:
    """The full Weyl group of rs by breadth-first closure."""
    return generate_subgroup(rs, range(rs.rank), order_cap=order_cap)


def generate_subgroup(
    rs: RootSystem, generator_indices, *, order_cap: int = DEFAULT_ORDER_CAP
) -> WeylGroup:
    """The subgroup generated by the reflections in the given simple roots."""
    gen_idx = tuple(sorted(set(int(i) for i in generator_indices)))
    if any(i < 0 or i >= rs.rank for i in gen_idx):
        raise ValueError("generator index out of range")
    gens = [simple_reflection(rs, i) for i in gen_idx]
    ident = identity(rs.ambient_dim)
    gram = rs.inner_product
    for g in gens:
        if matmul(g, g) != ident:
            raise ValueError("simple reflection is not an involution (bad root data)")
        if matmul(matmul(transpose(g), gram), g) != gram:
            raise ValueError("simple reflection does not preserve the inner product")
    elements = [ident]
    words = [()]
    seen = {ident: 0}
    frontier = [0]
    while frontier:
        next_frontier = []
        for ei in frontier:
            base = elements[ei]
            base_word = words[ei]
            for gi, g in zip(gen_idx, gens):
                prod = matmul(base, g)
                if prod in seen:
                    continue
                if len(elements) >= order_cap:
                    raise ValueError(
                        f"group order exceeds the cap of {order_cap}; "
                        "this rank is not supported for exact enumeration"
                    )
                seen[prod] = len(elements)
                elements.append(prod)
                words.append(base_word + (gi,))
                next_frontier.append(len(elements) - 1)
        frontier = next_frontier
    return WeylGroup(
        root_system=rs,
        generator_indices=gen_idx,
        elements=tuple(elements),
        words=tuple(words),
    )


def orbit(group: WeylGroup, x) -> tuple:
    """The exact orbit of x, in first-discovery (BFS element) order."""
    xv = vec(x)
    out = []
    seen = set()
    for m in group.elements:
        y = matvec(m, xv)
        if y not in seen:
            seen.add(y)
            out.append(y)
    return tuple(out)


class DominantResult(NamedTuple):
    vector: Vec
    element: Mat
    word: tuple


def to_dominant(group: WeylGroup, x) -> DominantResult:
    """The dominant representative of x's orbit and a witness element.

    Returns (x_plus, w, word) with w . x = x_plus and every simple pairing of
    x_plus nonnegative.  The witness is the BFS-first element that works, so
    the choice is deterministic; x_plus itself is orbit-invariant.
    """
    rs = group.root_system
    xv = vec(x)
    for m, word in zip(group.elements, group.words):
        y = matvec(m, xv)
        if all(pairing(rs, a, y) >= 0 for a in rs.simple_roots):
            return DominantResult(y, m, word)
    raise ValueError(
        "no dominant representative found; the group does not contain the "
        "full Weyl group of the root system"
    )


def stabilizer(group: WeylGroup, x) -> tuple:
    """All elements fixing x exactly, in BFS order (a subgroup)."""
    xv = vec(x)
    return tuple(m for m in group.elements if matvec(m, xv) == xv)


def average(group: WeylGroup, x) -> Vec:
    """(1/|W|) sum of the orbit with element multiplicity, exact."""
    xv = vec(x)
    total = vec([0] * len(xv))
    for m in group.elements:
        total = vec_add(total, matvec(m, xv))
    return vec_scale(Fraction(1, group.order), total)
