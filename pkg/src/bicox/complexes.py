"""The two-sided Coxeter complex as an explicit simplicial poset.

Faces are triples (I, w, J) with I, J generator subsets and w the minimal
representative of the double coset W_I w W_J, ordered by

    (I, w, J) <= (I', w', J')   iff   I >= I', J >= J', and
                                      W_I w W_J >= W_I' w' W_J'.

The last condition reduces, given the first two, to ``minimal_rep(I, w', J)
== w``.  A face of rank r behaves like an (r-1)-simplex: the interval below
it is boolean of size 2^r.  There is one facet (0, w, 0) per group element,
one minimum (S, e, S), and the classical Coxeter complex sits inside as the
upper order ideal of faces with empty left subset.

Besides construction this module carries the verification suite: boolean
lower intervals, balanced coloring, interval partition, weak-order
monotonicity, shelling along a facet order, thinness, the pseudomanifold
property, the Euler characteristic, and the embedding of the classical
complex.  Face-level shelling verification walks boundaries of boundaries
and is intended for small rank.
"""

from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .coxeter import (
    GroupTable,
    popcount_table,
    two_sided_down_reach,
    word,
)
from .cosets import double_coset, is_minimal_rep, minimal_rep
from .errors import CapacityError

DEFAULT_FACE_BUDGET = 2_000_000


class Face(NamedTuple):
    """A face (I, w, J): generator bitmasks around a minimal representative."""

    left: int
    w: int
    right: int


def submasks(mask: int):
    """All submasks of ``mask`` in increasing numeric order."""
    sub = 0
    while True:
        yield sub
        if sub == mask:
            return
        sub = (sub - mask) & mask


def face_rank(n: int, face: Face) -> int:
    """Poset rank |S-I| + |S-J|; the dimension of the face is rank - 1."""
    return 2 * n - face.left.bit_count() - face.right.bit_count()


def face_color(n: int, face: Face) -> tuple[int, int]:
    """The balanced coloring (S-I, S-J) as a pair of bitmasks."""
    full = (1 << n) - 1
    return (full ^ face.left, full ^ face.right)


def restriction(table: GroupTable, w: int) -> Face:
    """The minimum face represented by w: (Asc_L(w), w, Asc_R(w))."""
    full = table.full_mask
    return Face(full ^ int(table.des_left[w]), w, full ^ int(table.des_right[w]))


def facet(w: int) -> Face:
    """The maximal face represented by w."""
    return Face(0, w, 0)


def codim_one_of_facet(table: GroupTable, w: int) -> list[Face]:
    """The 2n codimension-one faces of the facet (0, w, 0).

    Descent-type walls first (left then right), then ascent-type walls.
    """
    faces = []
    des_l, des_r = int(table.des_left[w]), int(table.des_right[w])
    for s in range(table.rank):
        if des_l >> s & 1:
            faces.append(Face(1 << s, int(table.left_mult[w, s]), 0))
    for s in range(table.rank):
        if des_r >> s & 1:
            faces.append(Face(0, int(table.right_mult[w, s]), 1 << s))
    for s in range(table.rank):
        if not des_l >> s & 1:
            faces.append(Face(1 << s, w, 0))
    for s in range(table.rank):
        if not des_r >> s & 1:
            faces.append(Face(0, w, 1 << s))
    return faces


def face_count(table: GroupTable) -> int:
    """Total number of faces, from the interval partition: the faces
    represented by w form a boolean interval of size 2^(ascents of w)."""
    n = table.rank
    pop = popcount_table(n)
    sizes = np.int64(1) << (
        2 * n - pop[table.des_left].astype(np.int64) - pop[table.des_right]
    )
    return int(sizes.sum())


class TwoSidedComplex:
    """All faces of the two-sided complex of a finite Coxeter group."""

    def __init__(self, table: GroupTable, faces: list[Face]):
        self.table = table
        self.faces = faces
        self.face_set = frozenset(faces)
        self._min_cache: dict[Face, int] = {}

    @classmethod
    def build(
        cls, table: GroupTable, face_budget: int = DEFAULT_FACE_BUDGET
    ) -> "TwoSidedComplex":
        """Enumerate the intervals [R_w, F_w] over all w; their disjoint
        union is the whole complex."""
        n = table.rank
        full = table.full_mask
        asc_l = full - table.des_left  # complement within the full mask
        asc_r = full - table.des_right
        total = face_count(table)
        if total > face_budget:
            raise CapacityError(
                f"complex of {table.system.canonical_name} has {total} faces, "
                f"over the budget of {face_budget}"
            )
        faces = []
        for w in range(table.order):
            al, ar = int(asc_l[w]), int(asc_r[w])
            for gens_l in submasks(al):
                for gens_r in submasks(ar):
                    faces.append(Face(gens_l, w, gens_r))
        assert len(faces) == total
        return cls(table, faces)

    @property
    def rank(self) -> int:
        return self.table.rank

    def face_rank(self, face: Face) -> int:
        return face_rank(self.rank, face)

    def facets(self) -> list[Face]:
        return [facet(w) for w in range(self.table.order)]

    def faces_of_element(self, w: int) -> list[Face]:
        """The interval [R_w, F_w]: every face represented by w."""
        bottom = restriction(self.table, w)
        return [
            Face(gens_l, w, gens_r)
            for gens_l in submasks(bottom.left)
            for gens_r in submasks(bottom.right)
        ]

    def minimal_rep(self, gens_l: int, w: int, gens_r: int) -> int:
        key = Face(gens_l, w, gens_r)
        cached = self._min_cache.get(key)
        if cached is None:
            cached = minimal_rep(self.table, gens_l, w, gens_r)
            if len(self._min_cache) < 1 << 22:
                self._min_cache[key] = cached
        return cached

    def leq(self, low: Face, high: Face) -> bool:
        """Face order: reverse containment of index sets and cosets."""
        if low.left & high.left != high.left or low.right & high.right != high.right:
            return False
        return self.minimal_rep(low.left, high.w, low.right) == low.w

    def lower_interval(self, face: Face) -> list[Face]:
        """All faces below ``face`` (inclusive); boolean of size 2^rank."""
        full = self.table.full_mask
        out = []
        for extra_l in submasks(full ^ face.left):
            gens_l = face.left | extra_l
            for extra_r in submasks(full ^ face.right):
                gens_r = face.right | extra_r
                out.append(
                    Face(gens_l, self.minimal_rep(gens_l, face.w, gens_r), gens_r)
                )
        return out

    def down_covers(self, face: Face) -> list[Face]:
        """The faces covered by ``face``: one per index addable to I or J."""
        full = self.table.full_mask
        out = []
        for s in range(self.rank):
            bit = 1 << s
            if not face.left & bit:
                gens_l = face.left | bit
                out.append(Face(gens_l, self.minimal_rep(gens_l, face.w, face.right), face.right))
        for s in range(self.rank):
            bit = 1 << s
            if not face.right & bit:
                gens_r = face.right | bit
                out.append(Face(face.left, self.minimal_rep(face.left, face.w, gens_r), gens_r))
        return out

    def vertices_below(self, face: Face) -> list[Face]:
        """The rank-1 faces below ``face``; all have representative e."""
        full = self.table.full_mask
        out = []
        for s in range(self.rank):
            bit = 1 << s
            if not face.left & bit:
                out.append(Face(full ^ bit, 0, full))
        for s in range(self.rank):
            bit = 1 << s
            if not face.right & bit:
                out.append(Face(full, 0, full ^ bit))
        return out

    def faces_of_rank(self, r: int) -> list[Face]:
        return [f for f in self.faces if self.face_rank(f) == r]


# ---------------------------------------------------------------------------
# Structural verification


def verify_boolean(
    cx: TwoSidedComplex, faces=None, check_pairs: bool | None = None
) -> bool:
    """Lower intervals are boolean: 2^rank distinct faces below each face,
    and (with ``check_pairs``) ordered exactly like pairs of supersets."""
    if faces is None:
        faces = cx.faces
    if check_pairs is None:
        check_pairs = cx.rank <= 3
    for face in faces:
        r = cx.face_rank(face)
        lower = cx.lower_interval(face)
        if len(lower) != 1 << r or len(set(lower)) != len(lower):
            return False
        if not all(cx.leq(g, face) for g in lower):
            return False
        if check_pairs:
            for g1 in lower:
                for g2 in lower:
                    expected = (
                        g1.left & g2.left == g2.left
                        and g1.right & g2.right == g2.right
                    )
                    if cx.leq(g1, g2) != expected:
                        return False
    return True


def verify_balanced(cx: TwoSidedComplex, faces=None) -> bool:
    """Every face has distinctly colored vertices whose colors union to
    (S-I, S-J)."""
    if faces is None:
        faces = cx.faces
    n = cx.rank
    for face in faces:
        verts = cx.vertices_below(face)
        if len(verts) != cx.face_rank(face):
            return False
        colors = [face_color(n, v) for v in verts]
        if len(set(colors)) != len(colors):
            return False
        acc_l, acc_r = 0, 0
        for col_l, col_r in colors:
            acc_l |= col_l
            acc_r |= col_r
        if (acc_l, acc_r) != face_color(n, face):
            return False
    return True


def verify_partition(cx: TwoSidedComplex) -> bool:
    """The by-element enumeration agrees with a by-(I, J) re-enumeration,
    so the intervals [R_w, F_w] are disjoint and cover everything."""
    table = cx.table
    if len(cx.face_set) != len(cx.faces):
        return False
    if not all(is_minimal_rep(table, f.left, f.w, f.right) for f in cx.faces):
        return False
    des_l = table.des_left.astype(np.int64)
    des_r = table.des_right.astype(np.int64)
    recount = 0
    for gens_l in range(table.full_mask + 1):
        ok_l = (des_l & gens_l) == 0
        for gens_r in range(table.full_mask + 1):
            reps = np.flatnonzero(ok_l & ((des_r & gens_r) == 0))
            recount += len(reps)
            for u in reps:
                if Face(gens_l, int(u), gens_r) not in cx.face_set:
                    return False
    return recount == len(cx.faces)


def verify_weak_order_monotone(cx: TwoSidedComplex, faces=None) -> bool:
    """Comparable faces have weak-order comparable representatives."""
    if faces is None:
        faces = cx.faces
    table = cx.table
    reach = two_sided_down_reach(table)
    for high in faces:
        for low in cx.lower_interval(high):
            if not reach[high.w] >> low.w & 1:
                return False
    return True


def verify_facet_count(cx: TwoSidedComplex) -> bool:
    """Top-dimensional faces are in bijection with the group."""
    top = cx.faces_of_rank(2 * cx.rank)
    return len(top) == cx.table.order and all(
        f.left == 0 and f.right == 0 for f in top
    )


# ---------------------------------------------------------------------------
# Topology: shelling, thinness, pseudomanifold, Euler characteristic


@dataclass
class ShellingReport:
    ok: bool
    first_mismatch: int | None  # 1-indexed facet position, or None
    first_impure: int | None
    facets_checked: int

    def __bool__(self) -> bool:
        return self.ok


def verify_shelling(cx: TwoSidedComplex, order: list[int]) -> ShellingReport:
    """Face-level shelling check along the given facet order.

    At each position k the boundary of the new facet is intersected with the
    union of all earlier boundaries; the result must equal the union of the
    closed lower intervals under the descent-type walls of the facet.  The
    report also records where the intersection first fails to be pure of
    codimension one (or empty with predecessors present), which is the raw
    shelling condition.
    """
    table = cx.table
    if sorted(order) != list(range(table.order)):
        raise ValueError("order must be a permutation of all facet representatives")
    codim1_rank = 2 * cx.rank - 1
    prior: set[Face] = set()
    first_mismatch = None
    first_impure = None
    for k, w in enumerate(order, start=1):
        boundary = set(cx.lower_interval(facet(w)))
        boundary.discard(facet(w))
        got = boundary & prior
        expected: set[Face] = set()
        des_l, des_r = int(table.des_left[w]), int(table.des_right[w])
        for s in range(cx.rank):
            if des_l >> s & 1:
                wall = Face(1 << s, int(table.left_mult[w, s]), 0)
                expected.update(cx.lower_interval(wall))
            if des_r >> s & 1:
                wall = Face(0, int(table.right_mult[w, s]), 1 << s)
                expected.update(cx.lower_interval(wall))
        if got != expected and first_mismatch is None:
            first_mismatch = k
        if k > 1 and first_impure is None:
            impure = not got
            if not impure:
                for f in got:
                    if cx.face_rank(f) == codim1_rank:
                        continue
                    if not any(g != f and cx.leq(f, g) for g in got):
                        impure = True
                        break
            if impure:
                first_impure = k
        prior |= boundary
    return ShellingReport(
        ok=first_mismatch is None,
        first_mismatch=first_mismatch,
        first_impure=first_impure,
        facets_checked=len(order),
    )


def verify_thin(cx: TwoSidedComplex) -> bool:
    """Every rank-2 interval of the face poset has exactly four elements.

    Together with :func:`verify_pseudomanifold` (the role of the intervals
    ending at a virtual maximum above all facets) this gives thinness of the
    complex with a top element adjoined.
    """
    for face in cx.faces:
        if cx.face_rank(face) < 2:
            continue
        counts = Counter()
        for mid in cx.down_covers(face):
            counts.update(cx.down_covers(mid))
        if any(v != 2 for v in counts.values()):
            return False
    return True


def verify_pseudomanifold(cx: TwoSidedComplex) -> bool:
    """Every codimension-one face lies in exactly two facets."""
    counts = Counter()
    for w in range(cx.table.order):
        counts.update(codim_one_of_facet(cx.table, w))
    if any(v != 2 for v in counts.values()):
        return False
    return set(counts) == set(cx.faces_of_rank(2 * cx.rank - 1))


def euler_characteristic(cx: TwoSidedComplex) -> int:
    """Alternating sum of face counts by dimension, empty face excluded."""
    total = 0
    for face in cx.faces:
        r = cx.face_rank(face)
        if r >= 1:
            total += -1 if r % 2 == 0 else 1  # dimension r - 1
    return total


# ---------------------------------------------------------------------------
# The classical Coxeter complex inside


def sigma_ideal(cx: TwoSidedComplex) -> list[Face]:
    """The upper order ideal above (0, e, S): all faces with empty left set.

    This sub-poset is a copy of the classical Coxeter complex.
    """
    return [f for f in cx.faces if f.left == 0]


def classical_coxeter_complex(table: GroupTable) -> list[frozenset[int]]:
    """The Coxeter complex as explicit left cosets w W_K, every K."""
    out = []
    for gens in range(table.full_mask + 1):
        seen = np.zeros(table.order, dtype=bool)
        for w in range(table.order):
            if seen[w]:
                continue
            coset = frozenset(double_coset(table, 0, w, gens))
            for x in coset:
                seen[x] = True
            out.append(coset)
    return out


def verify_sigma_embedding(
    cx: TwoSidedComplex, sample_pairs: int | None = None, seed: int = 0
) -> bool:
    """The ideal above (0, e, S) is order-isomorphic to the classical
    complex built independently from left cosets under reverse inclusion."""
    table = cx.table
    ideal = sigma_ideal(cx)
    bottom = Face(0, 0, table.full_mask)
    if not all(cx.leq(bottom, f) for f in ideal[: min(len(ideal), 50)]):
        return False
    cosets = {}
    for f in ideal:
        cosets[f] = frozenset(double_coset(table, 0, f.w, f.right))
    classical = classical_coxeter_complex(table)
    if len(classical) != len(ideal):
        return False
    if len(set(cosets.values())) != len(ideal) or set(cosets.values()) != set(
        classical
    ):
        return False
    if sample_pairs is None:
        pairs = [(f, g) for f in ideal for g in ideal]
    else:
        rng = random.Random(seed)
        pairs = [
            (rng.choice(ideal), rng.choice(ideal)) for _ in range(sample_pairs)
        ]
    for f, g in pairs:
        if cx.leq(f, g) != (cosets[f] >= cosets[g]):
            return False
    return True


# ---------------------------------------------------------------------------
# DOT export


def _mask_str(mask: int) -> str:
    if not mask:
        return "-"
    return "".join(str(s + 1) for s in range(mask.bit_length()) if mask >> s & 1)


def _word_str(table: GroupTable, w: int) -> str:
    if w == 0:
        return "e"
    return "".join(f"s{s + 1}" for s in word(table, w))


def face_label(table: GroupTable, face: Face) -> str:
    return f"({_mask_str(face.left)}|{_word_str(table, face.w)}|{_mask_str(face.right)})"


def hasse_dot(
    cx: TwoSidedComplex,
    min_rank: int = 0,
    max_rank: int | None = None,
    faces: list[Face] | None = None,
) -> str:
    """Hasse diagram of the face poset (or a rank range, or an upward-closed
    subset such as the classical-complex ideal) in DOT format.

    One node per face, one edge per cover, deterministic ordering.
    """
    if max_rank is None:
        max_rank = 2 * cx.rank
    if faces is None:
        faces = cx.faces
    chosen = [
        f
        for f in sorted(faces, key=lambda f: (cx.face_rank(f), f.left, f.right, f.w))
        if min_rank <= cx.face_rank(f) <= max_rank
    ]
    index = {f: i for i, f in enumerate(chosen)}
    lines = ["digraph hasse {", "  rankdir=BT;"]
    for f, i in index.items():
        lines.append(f'  n{i} [label="{face_label(cx.table, f)}"];')
    for f in chosen:
        for g in cx.down_covers(f):
            if g in index:
                lines.append(f"  n{index[g]} -> n{index[f]};")
    lines.append("}")
    return "\n".join(lines)
