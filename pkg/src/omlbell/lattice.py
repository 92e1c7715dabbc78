"""Finite orthomodular lattices: representation, builders, validation.

A lattice is stored densely: a boolean order matrix, an orthocomplement
permutation and meet/join tables indexed by element ids.  Builders always
validate their output; `validate_oml` can also be pointed at hand-made raw
tables and reports every axiom failure with a witness.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .errors import ConstructionError, DiagramError, SizeCapError
from .report import ValidationReport

#: Default cap on element count; axiom checks are O(n^2)/O(n^3) exhaustive.
ELEMENT_CAP = 512

#: Guard for exhaustive atom-subset enumeration.
_DECOMPOSITION_ATOM_CAP = 16


@dataclass(frozen=True)
class Oml:
    """A finite orthomodular lattice as dense relation tables.

    Instances produced by the builders in this module are guaranteed valid.
    Raw instances can be assembled directly for testing `validate_oml`.
    """

    labels: tuple[str, ...]
    leq: tuple[tuple[bool, ...], ...]
    ortho: tuple[int, ...]
    meet: tuple[tuple[int, ...], ...]
    join: tuple[tuple[int, ...], ...]
    bottom: int
    top: int
    atoms: tuple[int, ...]
    blocks: tuple[frozenset[int], ...] = field(default=(), compare=False)

    @property
    def size(self) -> int:
        return len(self.labels)

    def elements(self) -> range:
        return range(len(self.labels))

    def index_of(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise KeyError(f"no element labeled {label!r}") from None

    def __repr__(self) -> str:
        return f"Oml({self.size} elements: {', '.join(self.labels)})"


@dataclass(frozen=True)
class GreechieDiagram:
    """Atoms-and-blocks encoding of a finite OML built from Boolean blocks."""

    atom_count: int
    blocks: tuple[tuple[int, ...], ...]

    def check(self) -> None:
        if self.atom_count < 1:
            raise DiagramError("diagram needs at least one atom")
        seen = set()
        for blk in self.blocks:
            if len(blk) < 2:
                raise DiagramError(f"block {blk} has fewer than 2 atoms")
            if len(set(blk)) != len(blk):
                raise DiagramError(f"block {blk} repeats an atom")
            for a in blk:
                if not 0 <= a < self.atom_count:
                    raise DiagramError(f"atom index {a} out of range")
                seen.add(a)
        for i, j in itertools.combinations(range(len(self.blocks)), 2):
            shared = set(self.blocks[i]) & set(self.blocks[j])
            if len(shared) >= 2:
                raise DiagramError(
                    f"blocks {self.blocks[i]} and {self.blocks[j]} share "
                    f"{len(shared)} atoms"
                )
        missing = set(range(self.atom_count)) - seen
        if missing:
            raise DiagramError(f"atoms {sorted(missing)} appear in no block")


# ---------------------------------------------------------------------------
# relational helpers


def is_orthogonal(oml: Oml, a: int, b: int) -> bool:
    """a is orthogonal to b iff a <= b'."""
    return oml.leq[a][oml.ortho[b]]


def is_compatible(oml: Oml, a: int, b: int) -> bool:
    """a is compatible with b iff a = (a /\\ b) \\/ (a /\\ b')."""
    left = oml.meet[a][b]
    right = oml.meet[a][oml.ortho[b]]
    return oml.join[left][right] == a


def atoms_below(oml: Oml, a: int) -> list[int]:
    return [x for x in oml.atoms if oml.leq[x][a]]


def orthogonal_atom_decomposition(oml: Oml, a: int) -> list[frozenset[int]]:
    """All sets of pairwise-orthogonal atoms whose join is `a`.

    The bottom element decomposes as the empty set only.
    """
    below = atoms_below(oml, a)
    if len(below) > _DECOMPOSITION_ATOM_CAP:
        raise SizeCapError(
            f"{len(below)} atoms below element {a}; exhaustive enumeration capped "
            f"at {_DECOMPOSITION_ATOM_CAP}"
        )
    out = []
    for r in range(len(below) + 1):
        for combo in itertools.combinations(below, r):
            if any(
                not is_orthogonal(oml, x, y)
                for x, y in itertools.combinations(combo, 2)
            ):
                continue
            j = oml.bottom
            for x in combo:
                j = oml.join[j][x]
            if j == a:
                out.append(frozenset(combo))
    return out


def greedy_orthogonal_decomposition(oml: Oml, a: int) -> list[int] | None:
    """One orthogonal-atom decomposition of `a` via the orthomodular peel-off.

    Peels the first atom x <= a and recurses on x' /\\ a.  Returns None when
    the peel-off gets stuck (only possible on invalid candidate tables).
    """
    parts = []
    current = a
    while current != oml.bottom:
        x = next((x for x in oml.atoms if oml.leq[x][current]), None)
        if x is None:
            return None
        rest = oml.meet[oml.ortho[x]][current]
        if rest == current:
            return None
        parts.append(x)
        current = rest
    j = oml.bottom
    for x in parts:
        j = oml.join[j][x]
    return parts if j == a else None


# ---------------------------------------------------------------------------
# validation


def validate_oml(oml: Oml) -> ValidationReport:
    """Exhaustive axiom check of a candidate lattice; failures carry witnesses."""
    rep = ValidationReport()
    n = oml.size
    idx = range(n)

    if (
        len(oml.leq) != n
        or any(len(row) != n for row in oml.leq)
        or len(oml.ortho) != n
        or len(oml.meet) != n
        or len(oml.join) != n
    ):
        rep.add("table-shape", (n,))
        return rep

    leq = oml.leq
    for a in idx:
        if not leq[a][a]:
            rep.add("order-reflexive", (a,))
    for a in idx:
        for b in idx:
            if a != b and leq[a][b] and leq[b][a]:
                rep.add("order-antisymmetric", (a, b))
            if leq[a][b]:
                for c in idx:
                    if leq[b][c] and not leq[a][c]:
                        rep.add("order-transitive", (a, b, c))
    for a in idx:
        if not leq[oml.bottom][a]:
            rep.add("bottom-least", (a,))
        if not leq[a][oml.top]:
            rep.add("top-greatest", (a,))
    if rep.failures:
        # meet/join semantics are meaningless over a broken order
        return rep

    for a in idx:
        for b in idx:
            m = oml.meet[a][b]
            if not (leq[m][a] and leq[m][b]) or any(
                leq[x][a] and leq[x][b] and not leq[x][m] for x in idx
            ):
                rep.add("meet-glb", (a, b))
            j = oml.join[a][b]
            if not (leq[a][j] and leq[b][j]) or any(
                leq[a][x] and leq[b][x] and not leq[j][x] for x in idx
            ):
                rep.add("join-lub", (a, b))

    for a in idx:
        if oml.ortho[oml.ortho[a]] != a:
            rep.add("ortho-involution", (a,))
    for a in idx:
        for b in idx:
            if leq[a][b] and not leq[oml.ortho[b]][oml.ortho[a]]:
                rep.add("ortho-order-reversing", (a, b))
    for a in idx:
        if oml.join[a][oml.ortho[a]] != oml.top:
            rep.add("ortho-complement-join", (a,))
    for a in idx:
        for b in idx:
            if leq[a][b]:
                if oml.join[a][oml.meet[oml.ortho[a]][b]] != b:
                    rep.add("orthomodular-law", (a, b))

    if not rep.failures:
        for a in idx:
            if greedy_orthogonal_decomposition(oml, a) is None:
                rep.add("atomistic", (a,))
    return rep


# ---------------------------------------------------------------------------
# assembly from an order relation


def _tables_from_leq(
    leq: list[list[bool]],
) -> tuple[list[list[int]], list[list[int]]]:
    """Derive meet/join tables as unique glb/lub; raises if either is missing."""
    n = len(leq)
    idx = range(n)
    meet = [[0] * n for _ in idx]
    join = [[0] * n for _ in idx]
    for a in idx:
        for b in idx:
            lowers = [x for x in idx if leq[x][a] and leq[x][b]]
            glb = [x for x in lowers if all(leq[y][x] for y in lowers)]
            if len(glb) != 1:
                raise ConstructionError(f"no unique meet for elements ({a}, {b})")
            meet[a][b] = glb[0]
            uppers = [x for x in idx if leq[a][x] and leq[b][x]]
            lub = [x for x in uppers if all(leq[x][y] for y in uppers)]
            if len(lub) != 1:
                raise ConstructionError(f"no unique join for elements ({a}, {b})")
            join[a][b] = lub[0]
    return meet, join


def _compute_blocks(oml: Oml) -> tuple[frozenset[int], ...]:
    """Maximal pairwise-compatible subsets (Boolean blocks).

    Exhaustive maximal-clique search on the compatibility graph for small
    lattices, greedy closure otherwise (blocks are reporting-only).
    """
    n = oml.size
    compat = [
        {
            b
            for b in oml.elements()
            if b != a and is_compatible(oml, a, b) and is_compatible(oml, b, a)
        }
        for a in oml.elements()
    ]
    blocks: list[frozenset[int]] = []
    if n <= 64:
        # Bron-Kerbosch without pivoting; fine at this scale.
        def expand(r: set[int], p: set[int], x: set[int]) -> None:
            if not p and not x:
                blocks.append(frozenset(r))
                return
            for v in sorted(p):
                expand(r | {v}, p & compat[v], x & compat[v])
                p = p - {v}
                x = x | {v}

        expand(set(), set(oml.elements()), set())
    else:
        for seed in oml.elements():
            blk = {seed}
            for v in oml.elements():
                if all(v in compat[u] for u in blk):
                    blk.add(v)
            blocks.append(frozenset(blk))
    uniq = sorted(set(blocks), key=lambda s: (len(s), sorted(s)))
    return tuple(b for b in uniq if not any(b < other for other in uniq))


def assemble_oml(
    labels: list[str],
    leq: list[list[bool]],
    ortho: list[int],
    atoms: list[int] | None = None,
    validate: bool = True,
) -> Oml:
    """Build an Oml from an order relation and orthocomplement; validates."""
    n = len(labels)
    if n > ELEMENT_CAP:
        raise SizeCapError(f"{n} elements exceeds cap {ELEMENT_CAP}")
    idx = range(n)
    bottoms = [a for a in idx if all(leq[a][b] for b in idx)]
    tops = [a for a in idx if all(leq[b][a] for b in idx)]
    if len(bottoms) != 1 or len(tops) != 1:
        raise ConstructionError("order relation lacks a unique bottom/top")
    bottom, top = bottoms[0], tops[0]
    meet, join = _tables_from_leq(leq)
    if atoms is None:
        atoms = [
            a
            for a in idx
            if a != bottom
            and all(not (leq[x][a] and x not in (a, bottom)) for x in idx)
        ]
    oml = Oml(
        labels=tuple(labels),
        leq=tuple(tuple(row) for row in leq),
        ortho=tuple(ortho),
        meet=tuple(tuple(row) for row in meet),
        join=tuple(tuple(row) for row in join),
        bottom=bottom,
        top=top,
        atoms=tuple(atoms),
    )
    if validate:
        rep = validate_oml(oml)
        if not rep.valid:
            raise ConstructionError(
                f"constructed lattice is not an OML: {rep.summary()}", report=rep
            )
    blocks = _compute_blocks(oml)
    return Oml(
        labels=oml.labels,
        leq=oml.leq,
        ortho=oml.ortho,
        meet=oml.meet,
        join=oml.join,
        bottom=bottom,
        top=top,
        atoms=oml.atoms,
        blocks=blocks,
    )


# ---------------------------------------------------------------------------
# builders


def build_boolean(atom_count: int) -> Oml:
    """Power-set lattice on `atom_count` atoms (2^atom_count elements)."""
    if atom_count < 1:
        raise ValueError("atom_count must be >= 1")
    if 2**atom_count > ELEMENT_CAP:
        raise SizeCapError(
            f"2^{atom_count} elements exceeds cap {ELEMENT_CAP}"
        )
    subsets = sorted(
        (frozenset(c) for r in range(atom_count + 1)
         for c in itertools.combinations(range(atom_count), r)),
        key=lambda s: (len(s), sorted(s)),
    )
    full = frozenset(range(atom_count))

    def label(s: frozenset[int]) -> str:
        if not s:
            return "0"
        if s == full:
            return "1"
        return "+".join(f"a{i + 1}" for i in sorted(s))

    labels = [label(s) for s in subsets]
    pos = {s: i for i, s in enumerate(subsets)}
    leq = [[a <= b for b in subsets] for a in subsets]
    ortho = [pos[full - s] for s in subsets]
    atoms = [pos[frozenset({i})] for i in range(atom_count)]
    return assemble_oml(labels, leq, ortho, atoms=atoms)


def _rank(leq: tuple[tuple[bool, ...], ...], bottom: int, a: int) -> int:
    """Longest-chain height of element a above bottom."""
    n = len(leq)
    below = [x for x in range(n) if leq[x][a] and x != a]
    if not below:
        return 0
    return 1 + max(_rank(leq, bottom, x) for x in below)


def build_horizontal_sum(parts: list[Oml]) -> Oml:
    """Identify all bottoms and all tops; keep everything else disjoint."""
    if not parts:
        raise ValueError("horizontal sum needs at least one part")
    for k, part in enumerate(parts):
        rep = validate_oml(part)
        if not rep.valid:
            raise ConstructionError(
                f"part {k} is not a valid OML: {rep.summary()}", report=rep
            )

    # proper elements: (part index, local id), atoms first in part order
    proper: list[tuple[int, int]] = []
    for k, part in enumerate(parts):
        proper.extend((k, a) for a in part.atoms)
    rest: list[tuple[int, tuple[int, int]]] = []
    for k, part in enumerate(parts):
        for e in part.elements():
            if e in (part.bottom, part.top) or e in part.atoms:
                continue
            rest.append((_rank(part.leq, part.bottom, e), (k, e)))
    proper.extend(pe for _, pe in sorted(rest, key=lambda t: (t[0], parts[t[1][0]].labels[t[1][1]])))

    n = len(proper) + 2
    if n > ELEMENT_CAP:
        raise SizeCapError(f"{n} elements exceeds cap {ELEMENT_CAP}")
    bottom, top = 0, n - 1
    index = {pe: i + 1 for i, pe in enumerate(proper)}

    raw_labels = ["0"] + [parts[k].labels[e] for k, e in proper] + ["1"]
    if len(set(raw_labels)) != len(raw_labels):
        raw_labels = (
            ["0"] + [f"p{k + 1}.{parts[k].labels[e]}" for k, e in proper] + ["1"]
        )
    leq = [[False] * n for _ in range(n)]
    for i in range(n):
        leq[i][i] = True
        leq[bottom][i] = True
        leq[i][top] = True
    for (k1, e1), i in index.items():
        for (k2, e2), j in index.items():
            if k1 == k2 and parts[k1].leq[e1][e2]:
                leq[i][j] = True
    ortho = [0] * n
    ortho[bottom], ortho[top] = top, bottom
    for (k, e), i in index.items():
        ortho[i] = index[(k, parts[k].ortho[e])]
    atoms = [index[(k, a)] for k, part in enumerate(parts) for a in part.atoms]
    return assemble_oml(raw_labels, leq, ortho, atoms=atoms)


def build_mo(n: int) -> Oml:
    """MO(n): horizontal sum of n copies of 2^2, with atoms a1, a1', ..."""
    if n < 1:
        raise ValueError("n must be >= 1")
    parts = []
    for i in range(n):
        part = build_boolean(2)
        relabeled = Oml(
            labels=("0", f"a{i + 1}", f"a{i + 1}'", "1"),
            leq=part.leq,
            ortho=part.ortho,
            meet=part.meet,
            join=part.join,
            bottom=part.bottom,
            top=part.top,
            atoms=part.atoms,
            blocks=part.blocks,
        )
        parts.append(relabeled)
    return build_horizontal_sum(parts)


def build_from_greechie(diagram: GreechieDiagram) -> Oml:
    """Paste one Boolean block per diagram block, identifying shared atoms
    and forced complements; the result must pass the full axiom check."""
    diagram.check()
    blocks = diagram.blocks

    # Elements are equivalence classes of (block, proper nonempty atom subset).
    # Blocks share at most one atom, so the identifications are: shared
    # singletons, and relative complements of a shared atom across its blocks.
    nodes: list[tuple[int, frozenset[int]]] = []
    for bi, blk in enumerate(blocks):
        bset = frozenset(blk)
        for r in range(1, len(blk)):
            for combo in itertools.combinations(sorted(bset), r):
                nodes.append((bi, frozenset(combo)))
    node_pos = {nd: i for i, nd in enumerate(nodes)}

    parent = list(range(len(nodes)))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    def union(i: int, j: int) -> None:
        ri, rj = find(i), find(j)
        if ri != rj:
            parent[max(ri, rj)] = min(ri, rj)

    for bi, bj in itertools.combinations(range(len(blocks)), 2):
        shared = set(blocks[bi]) & set(blocks[bj])
        for a in shared:
            sing = frozenset({a})
            union(node_pos[(bi, sing)], node_pos[(bj, sing)])
            ci = frozenset(blocks[bi]) - sing
            cj = frozenset(blocks[bj]) - sing
            union(node_pos[(bi, ci)], node_pos[(bj, cj)])

    classes: dict[int, list[tuple[int, frozenset[int]]]] = {}
    for i, nd in enumerate(nodes):
        classes.setdefault(find(i), []).append(nd)
    class_list = list(classes.values())

    def class_atoms(cls: list[tuple[int, frozenset[int]]]) -> frozenset[int]:
        return min((s for _, s in cls), key=lambda s: (len(s), sorted(s)))

    def class_label(cls: list[tuple[int, frozenset[int]]]) -> str:
        return "+".join(f"a{i + 1}" for i in sorted(class_atoms(cls)))

    # canonical ordering: bottom, atoms in diagram order, rest by (size, label)
    atom_classes: list[list[tuple[int, frozenset[int]]]] = []
    seen_roots = set()
    for a in range(diagram.atom_count):
        bi = next(i for i, blk in enumerate(blocks) if a in blk)
        root = find(node_pos[(bi, frozenset({a}))])
        if root not in seen_roots:
            seen_roots.add(root)
            atom_classes.append(classes[root])
    other = [
        cls
        for cls in class_list
        if find(node_pos[cls[0]]) not in seen_roots
    ]
    other.sort(key=lambda cls: (len(class_atoms(cls)), class_label(cls)))
    ordered = atom_classes + other

    n = len(ordered) + 2
    if n > ELEMENT_CAP:
        raise SizeCapError(f"{n} elements exceeds cap {ELEMENT_CAP}")
    bottom, top = 0, n - 1
    labels = ["0"] + [class_label(cls) for cls in ordered] + ["1"]
    root_of = {find(node_pos[cls[0]]): i + 1 for i, cls in enumerate(ordered)}

    def eid(bi: int, s: frozenset[int]) -> int:
        return root_of[find(node_pos[(bi, s)])]

    leq = [[False] * n for _ in range(n)]
    for i in range(n):
        leq[i][i] = True
        leq[bottom][i] = True
        leq[i][top] = True
    for i, cls_i in enumerate(ordered):
        for j, cls_j in enumerate(ordered):
            # subset inclusion inside a common block
            for bi, s in cls_i:
                for bj, t in cls_j:
                    if bi == bj and s <= t:
                        leq[i + 1][j + 1] = True
    # transitive closure (identifications can chain through shared atoms)
    changed = True
    while changed:
        changed = False
        for a in range(n):
            for b in range(n):
                if leq[a][b]:
                    for c in range(n):
                        if leq[b][c] and not leq[a][c]:
                            leq[a][c] = True
                            changed = True

    ortho = [0] * n
    ortho[bottom], ortho[top] = top, bottom
    for i, cls in enumerate(ordered):
        bi, s = cls[0]
        comp = eid(bi, frozenset(blocks[bi]) - s)
        for bj, t in cls[1:]:
            if eid(bj, frozenset(blocks[bj]) - t) != comp:
                raise ConstructionError(
                    f"orthocomplement ill-defined on pasted element {labels[i + 1]}"
                )
        ortho[i + 1] = comp

    atoms = [root_of[r] for r in (find(node_pos[cls[0]]) for cls in atom_classes)]
    return assemble_oml(labels, leq, ortho, atoms=atoms)
