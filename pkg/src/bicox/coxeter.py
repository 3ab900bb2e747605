"""Finite Coxeter groups as fully enumerated multiplication tables.

A Coxeter system (W, S) is encoded by its Coxeter matrix m with m(s,s) = 1
and m(s,t) = m(t,s) >= 2 (the value 0 stands for an infinite bond).  A system
is accepted only if every connected component of its diagram matches one of
the finite types A_n, B_n, D_n, E6, E7, E8, F4, H3, H4 or I2(m); anything
else raises :class:`NotFiniteError`.

Accepted groups are enumerated by breadth-first search of the left Cayley
graph.  Elements receive dense ids in discovery order, so ids are weakly
sorted by length and id 0 is the identity.  The finished
:class:`GroupTable` stores, per element: length, left and right
multiplication by each generator, the inverse, and both descent sets as
bitmasks over the generator indices.  All downstream code works from this
table alone and never sees the representation used during the search.

During the search an element w is identified by the tuple of images of the
simple roots under w, computed in an exact model of the reflection
representation: integer root coordinates for the crystallographic types,
coordinates over Z[phi] (phi the golden ratio) for H3 and H4, and a signed
rotation model of the 2m-gon for the remaining dihedral groups.  Left
multiplication by a generator then only permutes root indices, which keeps
the search loop cheap.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field

import numpy as np

from .errors import CapacityError, InternalCheckError, NotFiniteError

DEFAULT_BUDGET = 10**7

_E_ORDERS = {6: 51840, 7: 2903040, 8: 696729600}
_E_ROOTS = {6: 72, 7: 126, 8: 240}


@dataclass(frozen=True)
class TypeLabel:
    """An irreducible finite type: family letter, rank, and bond for I2(m)."""

    family: str
    rank: int
    bond: int | None = None

    def __str__(self) -> str:
        if self.family == "I2":
            return f"I2({self.bond})"
        return f"{self.family}{self.rank}"

    @property
    def order(self) -> int:
        """Group order of this irreducible type."""
        if self.family == "A":
            return math.factorial(self.rank + 1)
        if self.family == "B":
            return 2**self.rank * math.factorial(self.rank)
        if self.family == "D":
            return 2 ** (self.rank - 1) * math.factorial(self.rank)
        if self.family == "E":
            return _E_ORDERS[self.rank]
        if self.family == "F":
            return 1152
        if self.family == "H":
            return 120 if self.rank == 3 else 14400
        if self.family == "I2":
            return 2 * self.bond
        raise ValueError(f"unknown family {self.family!r}")

    @property
    def root_count(self) -> int | None:
        """Number of roots of the exact root model, or None for the
        dihedral rotation model."""
        if self.family == "A":
            return self.rank * (self.rank + 1)
        if self.family == "B":
            return 2 * self.rank**2
        if self.family == "D":
            return 2 * self.rank * (self.rank - 1)
        if self.family == "E":
            return _E_ROOTS[self.rank]
        if self.family == "F":
            return 48
        if self.family == "H":
            return 30 if self.rank == 3 else 120
        if self.family == "I2":
            return 12 if self.bond == 6 else None
        raise ValueError(f"unknown family {self.family!r}")


@dataclass(frozen=True)
class Component:
    """One irreducible factor with its generators in canonical (Bourbaki)
    diagram order: ``vertices[k]`` is the global index of node k+1."""

    label: TypeLabel
    vertices: tuple[int, ...]


class CoxeterMatrix:
    """Symmetric matrix of bond orders m(s,t); 0 encodes an infinite bond."""

    def __init__(self, entries):
        rows = tuple(tuple(int(x) for x in row) for row in entries)
        n = len(rows)
        if n == 0 or any(len(row) != n for row in rows):
            raise ValueError("Coxeter matrix must be square and nonempty")
        for i in range(n):
            if rows[i][i] != 1:
                raise ValueError(f"m({i},{i}) must be 1")
            for j in range(i + 1, n):
                if rows[i][j] != rows[j][i]:
                    raise ValueError(f"matrix not symmetric at ({i},{j})")
                if rows[i][j] == 1 or rows[i][j] < 0:
                    raise ValueError(f"m({i},{j}) must be 0 or >= 2")
        self.rank = n
        self.entries = rows

    def __eq__(self, other) -> bool:
        return isinstance(other, CoxeterMatrix) and self.entries == other.entries

    def __hash__(self) -> int:
        return hash(self.entries)

    def __repr__(self) -> str:
        return f"CoxeterMatrix({list(map(list, self.entries))})"


@dataclass(frozen=True)
class CoxeterSystem:
    """A Coxeter matrix together with its finite-type decomposition."""

    matrix: CoxeterMatrix
    components: tuple[Component, ...]

    @property
    def rank(self) -> int:
        return self.matrix.rank

    @property
    def order(self) -> int:
        result = 1
        for comp in self.components:
            result *= comp.label.order
        return result

    @property
    def canonical_name(self) -> str:
        return "x".join(str(c.label) for c in self.components)

    def is_irreducible(self, family: str | None = None) -> bool:
        if len(self.components) != 1:
            return False
        return family is None or self.components[0].label.family == family


# ---------------------------------------------------------------------------
# Classification


def classify(matrix: CoxeterMatrix) -> CoxeterSystem:
    """Decompose ``matrix`` into irreducible finite types.

    Raises :class:`NotFiniteError` naming the offending diagram component if
    any component is affine or indefinite.
    """
    n = matrix.rank
    m = matrix.entries
    seen = [False] * n
    components = []
    for start in range(n):
        if seen[start]:
            continue
        comp = []
        stack = [start]
        seen[start] = True
        while stack:
            v = stack.pop()
            comp.append(v)
            for u in range(n):
                if not seen[u] and m[v][u] != 2:
                    seen[u] = True
                    stack.append(u)
        components.append(_classify_component(m, sorted(comp)))
    components.sort(key=lambda c: c.vertices)
    return CoxeterSystem(matrix=matrix, components=tuple(components))


def _classify_component(m, verts: list[int]) -> Component:
    def fail(why: str):
        raise NotFiniteError(
            f"component {verts} is not of finite type: {why}", tuple(verts)
        )

    k = len(verts)
    for i, u in enumerate(verts):
        for v in verts[i + 1 :]:
            if m[u][v] == 0:
                fail(f"infinite bond between {u} and {v}")
    if k == 1:
        return Component(TypeLabel("A", 1), (verts[0],))
    if k == 2:
        u, v = verts
        bond = m[u][v]
        if bond == 3:
            return Component(TypeLabel("A", 2), (u, v))
        if bond == 4:
            return Component(TypeLabel("B", 2), (u, v))
        return Component(TypeLabel("I2", 2, bond), (u, v))

    edges = [
        (u, v)
        for i, u in enumerate(verts)
        for v in verts[i + 1 :]
        if m[u][v] >= 3
    ]
    if any(m[u][v] >= 6 for u, v in edges):
        fail("bond of order >= 6 in a component of rank >= 3")
    if len(edges) != k - 1:
        fail("diagram contains a cycle")
    adj = {v: [] for v in verts}
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    degrees = {v: len(adj[v]) for v in verts}
    if max(degrees.values()) > 3:
        fail("diagram vertex of degree > 3")
    branch_points = [v for v in verts if degrees[v] == 3]
    if len(branch_points) > 1:
        fail("more than one branch point")

    if branch_points:
        if any(m[u][v] != 3 for u, v in edges):
            fail("branched diagram with a bond of order > 3")
        b = branch_points[0]
        arms = []
        for start in adj[b]:
            arm = [start]
            prev = b
            while degrees[arm[-1]] == 2:
                nxt = next(x for x in adj[arm[-1]] if x != prev)
                prev = arm[-1]
                arm.append(nxt)
            arms.append(arm)
        arms.sort(key=lambda a: (len(a), a[0]))
        lengths = tuple(len(a) for a in arms)
        if lengths[0] == 1 and lengths[1] == 1:
            leaves = sorted([arms[0][0], arms[1][0]])
            chain = list(reversed(arms[2])) + [b]
            return Component(TypeLabel("D", k), tuple(chain + leaves))
        if lengths == (1, 2, 2) and k == 6:
            label = TypeLabel("E", 6)
        elif lengths == (1, 2, 3) and k == 7:
            label = TypeLabel("E", 7)
        elif lengths == (1, 2, 4) and k == 8:
            label = TypeLabel("E", 8)
        else:
            fail(f"branched diagram with arm lengths {lengths}")
        short, mid, long_arm = arms
        # Bourbaki: node 2 is the short arm, 1-3 the middle arm, 4 the branch.
        order = [mid[1], short[0], mid[0], b] + long_arm
        return Component(label, tuple(order))

    ends = [v for v in verts if degrees[v] == 1]
    path = [min(ends)]
    prev = None
    while len(path) < k:
        nxt = next(x for x in adj[path[-1]] if x != prev)
        prev = path[-1]
        path.append(nxt)
    labels = [m[path[i]][path[i + 1]] for i in range(k - 1)]
    special = [(i, lab) for i, lab in enumerate(labels) if lab != 3]
    if not special:
        return Component(TypeLabel("A", k), tuple(path))
    if len(special) > 1:
        fail("path diagram with more than one bond of order > 3")
    pos, bond = special[0]
    if bond == 4:
        if k == 4 and pos == 1:
            return Component(TypeLabel("F", 4), tuple(path))
        if pos == k - 2:
            return Component(TypeLabel("B", k), tuple(path))
        if pos == 0:
            return Component(TypeLabel("B", k), tuple(reversed(path)))
        fail("interior bond of order 4")
    if bond == 5:
        if k in (3, 4) and pos == 0:
            return Component(TypeLabel("H", k), tuple(path))
        if k in (3, 4) and pos == k - 2:
            return Component(TypeLabel("H", k), tuple(reversed(path)))
        fail("bond of order 5 outside H3/H4")
    raise AssertionError("unreachable")


# ---------------------------------------------------------------------------
# Standard matrices and type-spec parsing


def standard_matrix(label: TypeLabel) -> CoxeterMatrix:
    """The Coxeter matrix of ``label`` in Bourbaki numbering."""
    n = label.rank
    edges: list[tuple[int, int, int]] = []
    if label.family in ("A", "B", "H", "F"):
        for i in range(n - 1):
            edges.append((i, i + 1, 3))
        if label.family == "B":
            edges[-1] = (n - 2, n - 1, 4)
        elif label.family == "H":
            edges[0] = (0, 1, 5)
        elif label.family == "F":
            edges[1] = (1, 2, 4)
    elif label.family == "D":
        for i in range(n - 3):
            edges.append((i, i + 1, 3))
        edges.append((n - 3, n - 2, 3))
        edges.append((n - 3, n - 1, 3))
    elif label.family == "E":
        edges = [(0, 2, 3), (1, 3, 3), (2, 3, 3), (3, 4, 3), (4, 5, 3)]
        for i in range(6, n):
            edges.append((i - 1, i, 3))
    elif label.family == "I2":
        edges = [(0, 1, label.bond)]
    else:
        raise ValueError(f"unknown family {label.family!r}")
    rows = [[1 if i == j else 2 for j in range(n)] for i in range(n)]
    for u, v, bond in edges:
        rows[u][v] = rows[v][u] = bond
    return CoxeterMatrix(rows)


_TYPE_RE = re.compile(r"^([ABDEFH])(\d+)(~?)$|^I2\((\d+)\)(~?)$|^(G)(2)(~?)$")

_RANK_RANGE = {
    "A": (1, None),
    "B": (2, None),
    "D": (4, None),
    "E": (6, 8),
    "F": (4, 4),
    "H": (3, 4),
}


def parse_type_spec(spec: str) -> CoxeterMatrix:
    """Parse a type string like ``"A3"``, ``"B4xA1"``, or ``"I2(7)"``.

    An ``~`` suffix on an A-family factor builds its affine extension (so
    e.g. ``"A1~"`` classifies as not finite).  ``"G2"`` is accepted as an
    alias for ``"I2(6)"``.
    """
    blocks = []
    for part in spec.replace(" ", "").split("x"):
        match = _TYPE_RE.match(part)
        if not match:
            raise ValueError(f"cannot parse type spec {part!r}")
        if match.group(4) is not None:
            bond, affine = int(match.group(4)), match.group(5)
            if bond < 2:
                raise ValueError(f"I2 bond must be >= 2 in {part!r}")
            if affine:
                raise ValueError(f"affine suffix not supported for {part!r}")
            blocks.append(standard_matrix(TypeLabel("I2", 2, bond)).entries)
            continue
        if match.group(6) is not None:
            if match.group(8):
                raise ValueError(f"affine suffix not supported for {part!r}")
            blocks.append(standard_matrix(TypeLabel("I2", 2, 6)).entries)
            continue
        family, rank, affine = match.group(1), int(match.group(2)), match.group(3)
        lo, hi = _RANK_RANGE[family]
        if rank < lo or (hi is not None and rank > hi):
            raise ValueError(f"rank {rank} out of range for family {family}")
        if affine:
            if family != "A":
                raise ValueError(f"affine suffix only supported for A-family, got {part!r}")
            blocks.append(_affine_a_entries(rank))
            continue
        blocks.append(standard_matrix(TypeLabel(family, rank)).entries)
    total = sum(len(b) for b in blocks)
    rows = [[1 if i == j else 2 for j in range(total)] for i in range(total)]
    offset = 0
    for block in blocks:
        k = len(block)
        for i in range(k):
            for j in range(k):
                rows[offset + i][offset + j] = block[i][j]
        offset += k
    return CoxeterMatrix(rows)


def _affine_a_entries(rank: int):
    if rank == 1:
        return ((1, 0), (0, 1))
    k = rank + 1
    rows = [[1 if i == j else 2 for j in range(k)] for i in range(k)]
    for i in range(k):
        j = (i + 1) % k
        rows[i][j] = rows[j][i] = 3
    return tuple(tuple(r) for r in rows)


def classify_spec(spec: str) -> CoxeterSystem:
    """Parse and classify a type string in one step."""
    return classify(parse_type_spec(spec))


# ---------------------------------------------------------------------------
# Exact reflection actions used during enumeration


def _integer_root_action(cartan: list[list[int]]):
    """Root permutations for an integer generalized Cartan matrix."""
    n = len(cartan)

    def reflect(i, vec):
        delta = sum(cartan[i][j] * vec[j] for j in range(n))
        out = list(vec)
        out[i] -= delta
        return tuple(out)

    return _close_roots(n, reflect)


_GOLDEN = {2: (0, 0), 3: (-1, 0), 5: (0, -1)}  # -2cos(pi/m) as a + b*phi


def _golden_root_action(bonds: list[list[int]]):
    """Root permutations over Z[phi] for diagrams with bonds in {2,3,5}."""
    n = len(bonds)
    form = [
        [(2, 0) if i == j else _GOLDEN[bonds[i][j]] for j in range(n)]
        for i in range(n)
    ]

    def reflect(i, vec):
        da, db = 0, 0
        for j in range(n):
            ka, kb = form[i][j]
            va, vb = vec[j]
            da += ka * va + kb * vb
            db += ka * vb + kb * va + kb * vb  # phi^2 = phi + 1
        out = list(vec)
        out[i] = (vec[i][0] - da, vec[i][1] - db)
        return tuple(out)

    zero, one = (0, 0), (1, 0)
    simple = [tuple(one if j == i else zero for j in range(n)) for i in range(n)]
    return _close_roots(n, reflect, simple)


def _close_roots(n, reflect, simple=None):
    if simple is None:
        simple = [tuple(1 if j == i else 0 for j in range(n)) for i in range(n)]
    index = {}
    roots = []
    for vec in simple:
        index[vec] = len(roots)
        roots.append(vec)
    frontier = list(simple)
    while frontier:
        new = []
        for vec in frontier:
            for i in range(n):
                img = reflect(i, vec)
                if img not in index:
                    index[img] = len(roots)
                    roots.append(img)
                    new.append(img)
        frontier = new
    sigma = [[index[reflect(i, vec)] for vec in roots] for i in range(n)]
    identity = tuple(index[vec] for vec in simple)
    return identity, sigma, len(roots)


def _cartan_from_bonds(bonds: list[list[int]]) -> list[list[int]]:
    """An integer Cartan matrix realizing the given crystallographic bonds.

    For asymmetric bonds (4 and 6) the shorter-root side is put on the lower
    index; the two orientations give dual root systems with the same group.
    """
    pair = {2: 0, 3: -1, 4: -2, 6: -3}
    n = len(bonds)
    cartan = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
    for i in range(n):
        for j in range(n):
            if i == j or bonds[i][j] == 2:
                continue
            cartan[i][j] = pair[bonds[i][j]] if i < j else -1
    return cartan


class _DihedralAction:
    """Left action of I2(m) on the 2m-gon: elements x -> sign*x + c."""

    def __init__(self, bond: int):
        self.two_m = 2 * bond
        self.identity = (1, 0)
        self.gens = [(-1, 0), (-1, 2 % self.two_m)]

    def apply(self, s, key):
        sign, offset = self.gens[s]
        return (sign * key[0], (sign * key[1] + offset) % self.two_m)


class _RootAction:
    def __init__(self, identity, sigma):
        self.identity = identity
        self.sigma = sigma

    def apply(self, s, key):
        sig = self.sigma[s]
        return tuple(sig[x] for x in key)


class _ProductAction:
    """Componentwise action; keys are tuples of per-component keys."""

    def __init__(self, actions, slot_of_gen):
        self.actions = actions
        self.slot_of_gen = slot_of_gen
        self.identity = tuple(a.identity for a in actions)

    def apply(self, s, key):
        slot, local = self.slot_of_gen[s]
        sub = self.actions[slot].apply(local, key[slot])
        return key[:slot] + (sub,) + key[slot + 1 :]


def _component_action(label: TypeLabel, bonds: list[list[int]]):
    if label.family == "H":
        identity, sigma, count = _golden_root_action(bonds)
    elif label.family == "I2" and label.bond != 6:
        return _DihedralAction(label.bond)
    else:
        identity, sigma, count = _integer_root_action(_cartan_from_bonds(bonds))
    expected = label.root_count
    if expected is not None and count != expected:
        raise InternalCheckError(
            f"{label}: root closure produced {count} roots, expected {expected}"
        )
    return _RootAction(identity, sigma)


def _make_action(system: CoxeterSystem):
    m = system.matrix.entries
    actions = []
    slot_of_gen: dict[int, tuple[int, int]] = {}
    for slot, comp in enumerate(system.components):
        verts = comp.vertices
        bonds = [[m[u][v] for v in verts] for u in verts]
        actions.append(_component_action(comp.label, bonds))
        for local, v in enumerate(verts):
            slot_of_gen[v] = (slot, local)
    if len(actions) == 1:
        return actions[0]
    return _ProductAction(actions, slot_of_gen)


# ---------------------------------------------------------------------------
# The group table


@dataclass
class GroupTable:
    """Immutable enumeration of a finite Coxeter group.

    Multiplication tables are id-valued: ``left_mult[w, s]`` is s*w and
    ``right_mult[w, s]`` is w*s.  Descent sets are bitmasks over generator
    indices.  The table is safe for concurrent readers.
    """

    system: CoxeterSystem
    order: int
    length: np.ndarray
    left_mult: np.ndarray
    right_mult: np.ndarray
    inverse: np.ndarray
    des_left: np.ndarray
    des_right: np.ndarray
    longest: int
    _words: dict = field(default_factory=dict, repr=False)

    @property
    def rank(self) -> int:
        return self.system.rank

    @property
    def full_mask(self) -> int:
        return (1 << self.rank) - 1

    def generator_id(self, s: int) -> int:
        """Element id of the generator with index s."""
        return int(self.left_mult[0, s])

    def __repr__(self) -> str:
        return f"GroupTable({self.system.canonical_name}, order={self.order})"


def build_group(system: CoxeterSystem, budget: int = DEFAULT_BUDGET) -> GroupTable:
    """Enumerate the group of ``system`` into a :class:`GroupTable`.

    Raises :class:`CapacityError` when the classified order exceeds
    ``budget`` (default 10**7 elements).
    """
    order = system.order
    if order > budget:
        raise CapacityError(
            f"{system.canonical_name} has {order} elements, over the budget of {budget}"
        )
    n = system.rank
    action = _make_action(system)

    length = np.zeros(order, dtype=np.int16)
    left = np.zeros((order, n), dtype=np.int32)
    parent = np.zeros(order, dtype=np.int32)
    parent_gen = np.zeros(order, dtype=np.int8)

    ids: dict = {action.identity: 0}
    keys = [action.identity]
    apply = action.apply
    get = ids.get
    w = 0
    while w < len(keys):
        key = keys[w]
        next_len = length[w] + 1
        for s in range(n):
            nk = apply(s, key)
            j = get(nk)
            if j is None:
                j = len(keys)
                if j >= order:
                    raise InternalCheckError(
                        f"BFS closure exceeds classified order {order}"
                    )
                ids[nk] = j
                keys.append(nk)
                length[j] = next_len
                parent[j] = w
                parent_gen[j] = s
            left[w, s] = j
        w += 1
    if len(keys) != order:
        raise InternalCheckError(
            f"BFS closure found {len(keys)} elements, classified order is {order}"
        )
    del ids, keys

    right = np.zeros((order, n), dtype=np.int32)
    inverse = np.zeros(order, dtype=np.int32)
    right[0] = left[0]
    for v in range(1, order):
        p = parent[v]
        t = parent_gen[v]
        right[v] = left[right[p], t]
        inverse[v] = right[inverse[p], t]

    bits = (1 << np.arange(n, dtype=np.int64)).astype(np.uint16)
    des_left = ((length[left] < length[:, None]) * bits).sum(axis=1).astype(np.uint16)
    des_right = ((length[right] < length[:, None]) * bits).sum(axis=1).astype(np.uint16)

    max_len = int(length.max())
    top = np.flatnonzero(length == max_len)
    if len(top) != 1:
        raise InternalCheckError("longest element is not unique")
    longest = int(top[0])

    table = GroupTable(
        system=system,
        order=order,
        length=length,
        left_mult=left,
        right_mult=right,
        inverse=inverse,
        des_left=des_left,
        des_right=des_right,
        longest=longest,
    )
    _validate(table)
    return table


def _validate(table: GroupTable) -> None:
    ar = np.arange(table.order)
    for s in range(table.rank):
        if not np.array_equal(table.left_mult[table.left_mult[:, s], s], ar):
            raise InternalCheckError(f"left generator {s} is not an involution")
        if not np.array_equal(table.right_mult[table.right_mult[:, s], s], ar):
            raise InternalCheckError(f"right generator {s} is not an involution")
    jumps = np.abs(table.length[table.right_mult] - table.length[:, None])
    if not np.all(jumps == 1):
        raise InternalCheckError("a generator changed length by something other than 1")
    if not np.array_equal(table.des_left, table.des_right[table.inverse]):
        raise InternalCheckError("left descents disagree with inverse right descents")
    if int(table.des_right[table.longest]) != table.full_mask:
        raise InternalCheckError("longest element is missing a right descent")


# ---------------------------------------------------------------------------
# Queries on a built table


def descents_right(table: GroupTable, w: int) -> int:
    """Bitmask of generators s with l(ws) < l(w)."""
    return int(table.des_right[w])


def descents_left(table: GroupTable, w: int) -> int:
    """Bitmask of generators s with l(sw) < l(w)."""
    return int(table.des_left[w])


def leq_two_sided(table: GroupTable, u: int, v: int) -> bool:
    """Whether u <= v in the two-sided weak order.

    Decided by searching downward from v through left and right descent
    steps, pruned at the length of u.
    """
    if u == v:
        return True
    lu = int(table.length[u])
    lv = int(table.length[v])
    if lv <= lu:
        return False
    frontier = {v}
    seen = {v}
    length = table.length
    left, right = table.left_mult, table.right_mult
    des_l, des_r = table.des_left, table.des_right
    while frontier:
        nxt = set()
        for x in frontier:
            for table_side, mask in ((left, int(des_l[x])), (right, int(des_r[x]))):
                while mask:
                    s = (mask & -mask).bit_length() - 1
                    mask &= mask - 1
                    y = int(table_side[x, s])
                    if y == u:
                        return True
                    if int(length[y]) > lu and y not in seen:
                        seen.add(y)
                        nxt.add(y)
        frontier = nxt
    return False


def length_order(table: GroupTable) -> list[int]:
    """All element ids sorted by length, ties broken by id.

    Since every cover of the two-sided weak order raises length by one, any
    such ordering is a linear extension of that order.
    """
    return sorted(range(table.order), key=lambda w: (int(table.length[w]), w))


def word(table: GroupTable, w: int) -> tuple[int, ...]:
    """A reduced word for w (generator indices, leftmost letter first)."""
    cached = table._words.get(w)
    if cached is not None:
        return cached
    letters = []
    x = w
    while x:
        mask = int(table.des_left[x])
        s = (mask & -mask).bit_length() - 1
        letters.append(s)
        x = int(table.left_mult[x, s])
    result = tuple(letters)
    if len(table._words) < 1 << 16:
        table._words[w] = result
    return result


def mult(table: GroupTable, u: int, v: int) -> int:
    """The product u*v, computed through a reduced word for u."""
    x = v
    for s in reversed(word(table, u)):
        x = int(table.left_mult[x, s])
    return x


def two_sided_down_reach(table: GroupTable, limit: int = 20000) -> list[int]:
    """For each v, the bitmask of all u with u <= v in two-sided weak order.

    Intended for small groups (order <= ``limit``); used as an exact oracle
    for :func:`leq_two_sided` and for order-theoretic verification sweeps.
    """
    if table.order > limit:
        raise CapacityError(f"down-reach bitmasks limited to order <= {limit}")
    reach = [0] * table.order
    for v in range(table.order):  # ids are length-sorted, covers point down
        acc = 1 << v
        for side, mask in (
            (table.left_mult, int(table.des_left[v])),
            (table.right_mult, int(table.des_right[v])),
        ):
            while mask:
                s = (mask & -mask).bit_length() - 1
                mask &= mask - 1
                acc |= reach[int(side[v, s])]
        reach[v] = acc
    return reach


def popcount_table(n: int) -> np.ndarray:
    """Lookup array of popcounts for all n-bit masks."""
    masks = np.arange(1 << n, dtype=np.uint32)
    counts = np.zeros(1 << n, dtype=np.uint8)
    while masks.any():
        counts += (masks & 1).astype(np.uint8)
        masks >>= 1
    return counts
