"""Transition monoids: Green's relations, kernel, DS membership,
semilattice-of-Archimedean decomposition, and nilpotency indices.

Transformations compose left to right: the product ``s * t`` acts as
``q -> t[s[q]]``, matching word concatenation ``q . (uv) = (q . u) . v``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .core import Dfa, Word
from .errors import CapExceeded, DecompositionError, NotInDS

MONOID_CAP = 200_000


@dataclass(frozen=True)
class Transformation:
    """One monoid element: its image tuple and a length-minimal,
    lexicographically least witness word."""

    image: tuple[int, ...]
    witness: Word


def _compose(s: Sequence[int], t: Sequence[int]) -> tuple[int, ...]:
    return tuple(t[x] for x in s)


class TransitionMonoid:
    """The monoid of word actions of a DFA, enumerated breadth first.

    Element 0 is the identity.  ``elements[i]`` is the image tuple of
    element ``i`` and ``witnesses[i]`` its minimal witness word.
    ``right_cayley[i][a]`` is the index of ``elements[i]`` followed by
    letter ``a``; ``left_cayley[a][i]`` of letter ``a`` followed by
    ``elements[i]``.  Instances are immutable after construction apart
    from internal memo tables.
    """

    def __init__(
        self,
        dfa: Dfa,
        elements: tuple[tuple[int, ...], ...],
        witnesses: tuple[Word, ...],
        right_cayley: tuple[tuple[int, ...], ...],
        left_cayley: tuple[tuple[int, ...], ...],
        generator_of: tuple[int, ...],
    ):
        self.dfa = dfa
        self.elements = elements
        self.witnesses = witnesses
        self.right_cayley = right_cayley
        self.left_cayley = left_cayley
        self.generator_of = generator_of
        self.index = {img: i for i, img in enumerate(elements)}
        self._reach: list[int] | None = None
        self._powers: list[int] | None = None

    def __len__(self) -> int:
        return len(self.elements)

    def mul(self, i: int, j: int) -> int:
        return self.index[_compose(self.elements[i], self.elements[j])]

    def transformation(self, i: int) -> Transformation:
        return Transformation(self.elements[i], self.witnesses[i])

    def is_constant(self, i: int) -> bool:
        img = self.elements[i]
        return all(x == img[0] for x in img)

    # -- divisibility ------------------------------------------------------

    def reach_masks(self) -> list[int]:
        """Per element ``u``, a bit mask of the principal two-sided ideal
        ``S^1 u S^1`` (reachability in the combined Cayley graph)."""
        if self._reach is None:
            size = len(self.elements)
            succ: list[list[int]] = [[] for _ in range(size)]
            for i in range(size):
                row = self.right_cayley[i]
                for a in range(len(self.generator_of)):
                    succ[i].append(row[a])
                    succ[i].append(self.left_cayley[a][i])
            comp_of, comps = _tarjan_scc(succ)
            comp_bits = []
            for members in comps:
                bits = 0
                for v in members:
                    bits |= 1 << v
                comp_bits.append(bits)
            closure = [0] * len(comps)
            # Tarjan emits components in reverse topological order
            # (successors first), so one pass suffices.
            for ci, members in enumerate(comps):
                acc = comp_bits[ci]
                for v in members:
                    for t in succ[v]:
                        acc |= closure[comp_of[t]]
                closure[ci] = acc
            self._reach = [closure[comp_of[i]] for i in range(size)]
        return self._reach

    def power_masks(self) -> list[int]:
        """Per element, a bit mask of all its positive powers."""
        if self._powers is None:
            masks = []
            for i in range(len(self.elements)):
                seen = 0
                x = i
                while not (seen >> x) & 1:
                    seen |= 1 << x
                    x = self.mul(x, i)
                masks.append(seen)
            self._powers = masks
        return self._powers


def enumerate_monoid(dfa: Dfa, cap: int = MONOID_CAP) -> TransitionMonoid:
    """Breadth-first closure of the letter actions from the identity.

    Raises :class:`CapExceeded` as soon as more than ``cap`` distinct
    elements appear.
    """
    k = dfa.k
    letters = [tuple(dfa.delta[q][a] for q in range(dfa.n)) for a in range(k)]
    identity = tuple(range(dfa.n))
    elements: list[tuple[int, ...]] = [identity]
    witnesses: list[Word] = [()]
    index = {identity: 0}
    right: list[list[int]] = []
    head = 0
    while head < len(elements):
        cur = elements[head]
        row = []
        for a in range(k):
            nxt = _compose(cur, letters[a])
            at = index.get(nxt)
            if at is None:
                at = len(elements)
                if at > cap:
                    raise CapExceeded(
                        "monoid",
                        f"transition monoid exceeds {cap} elements; raise the cap (at most n^n)",
                    )
                index[nxt] = at
                elements.append(nxt)
                witnesses.append(witnesses[head] + (a,))
            row.append(at)
        right.append(row)
        head += 1
    left = tuple(
        tuple(index[_compose(letters[a], e)] for e in elements) for a in range(k)
    )
    generator_of = tuple(index[letters[a]] for a in range(k))
    return TransitionMonoid(
        dfa=dfa,
        elements=tuple(elements),
        witnesses=tuple(witnesses),
        right_cayley=tuple(tuple(r) for r in right),
        left_cayley=left,
        generator_of=generator_of,
    )


def _tarjan_scc(succ: list[list[int]]) -> tuple[list[int], list[list[int]]]:
    """Iterative Tarjan.  Returns (component id per vertex, components in
    reverse topological order of the condensation)."""
    n = len(succ)
    index_of = [-1] * n
    low = [0] * n
    on_stack = [False] * n
    comp_of = [-1] * n
    stack: list[int] = []
    comps: list[list[int]] = []
    counter = 0
    for root in range(n):
        if index_of[root] != -1:
            continue
        work = [(root, 0)]
        while work:
            v, pi = work[-1]
            if pi == 0:
                index_of[v] = low[v] = counter
                counter += 1
                stack.append(v)
                on_stack[v] = True
            advanced = False
            for next_pi in range(pi, len(succ[v])):
                w = succ[v][next_pi]
                if index_of[w] == -1:
                    work[-1] = (v, next_pi + 1)
                    work.append((w, 0))
                    advanced = True
                    break
                if on_stack[w]:
                    low[v] = min(low[v], index_of[w])
            if advanced:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])
            if low[v] == index_of[v]:
                members = []
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp_of[w] = len(comps)
                    members.append(w)
                    if w == v:
                        break
                comps.append(sorted(members))
    return comp_of, comps


def _canonical_classes(comp_of: list[int]) -> tuple[tuple[int, ...], tuple[tuple[int, ...], ...]]:
    """Renumber classes by their smallest member, returning
    (class id per element, members per class)."""
    groups: dict[int, list[int]] = {}
    for v, c in enumerate(comp_of):
        groups.setdefault(c, []).append(v)
    ordered = sorted(groups.values(), key=lambda ms: ms[0])
    out = [0] * len(comp_of)
    for cid, members in enumerate(ordered):
        for v in members:
            out[v] = cid
    return tuple(out), tuple(tuple(ms) for ms in ordered)


@dataclass(frozen=True)
class GreenClasses:
    """R-, L- and D-classes of a transition monoid.

    Class ids are assigned by each class's smallest element index.
    ``regular[d]`` says whether D-class ``d`` contains a regular element
    (then all its elements are regular).
    """

    r_class: tuple[int, ...]
    l_class: tuple[int, ...]
    d_class: tuple[int, ...]
    r_members: tuple[tuple[int, ...], ...]
    l_members: tuple[tuple[int, ...], ...]
    d_members: tuple[tuple[int, ...], ...]
    regular: tuple[bool, ...]
    idempotents: frozenset[int]


def green_classes(monoid: TransitionMonoid) -> GreenClasses:
    """Green's relations via SCCs of the one-sided Cayley graphs.

    Elements are R-related iff mutually reachable by right multiplication,
    L-related iff by left multiplication; D is the join of the two
    partitions.  Regularity is decided by exhaustive search for ``s`` with
    ``a s a = a``.
    """
    size = len(monoid)
    k = len(monoid.generator_of)
    right_succ = [list(monoid.right_cayley[i]) for i in range(size)]
    left_succ = [[monoid.left_cayley[a][i] for a in range(k)] for i in range(size)]
    r_of, _ = _tarjan_scc(right_succ)
    l_of, _ = _tarjan_scc(left_succ)
    r_class, r_members = _canonical_classes(r_of)
    l_class, l_members = _canonical_classes(l_of)

    parent = list(range(size))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x: int, y: int) -> None:
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[max(rx, ry)] = min(rx, ry)

    for members in r_members + l_members:
        for v in members[1:]:
            union(members[0], v)
    d_class, d_members = _canonical_classes([find(v) for v in range(size)])

    regular_elem = []
    for a in range(size):
        found = False
        for s in range(size):
            if monoid.mul(monoid.mul(a, s), a) == a:
                found = True
                break
        regular_elem.append(found)
    regular = tuple(any(regular_elem[v] for v in members) for members in d_members)
    idempotents = frozenset(i for i in range(size) if monoid.mul(i, i) == i)
    return GreenClasses(
        r_class=r_class,
        l_class=l_class,
        d_class=d_class,
        r_members=r_members,
        l_members=l_members,
        d_members=d_members,
        regular=regular,
        idempotents=idempotents,
    )


def kernel(monoid: TransitionMonoid) -> frozenset[int]:
    """The minimal two-sided ideal: elements whose principal two-sided
    ideal contains no smaller one.  Computed as the unique sink component
    of the combined left/right Cayley graph."""
    size = len(monoid)
    k = len(monoid.generator_of)
    succ = [
        list(monoid.right_cayley[i]) + [monoid.left_cayley[a][i] for a in range(k)]
        for i in range(size)
    ]
    comp_of, comps = _tarjan_scc(succ)
    sinks = []
    for ci, members in enumerate(comps):
        if all(comp_of[t] == ci for v in members for t in succ[v]):
            sinks.append(ci)
    if len(sinks) != 1:  # pragma: no cover - impossible for a monoid
        raise DecompositionError(f"expected one sink ideal, found {len(sinks)}")
    return frozenset(comps[sinks[0]])


def is_ds(monoid: TransitionMonoid, classes: GreenClasses | None = None) -> bool:
    """True iff every regular D-class is closed under multiplication."""
    gc = classes or green_classes(monoid)
    for d, members in enumerate(gc.d_members):
        if not gc.regular[d]:
            continue
        member_set = set(members)
        for x in members:
            for y in members:
                if monoid.mul(x, y) not in member_set:
                    return False
    return True


def is_commutative(monoid: TransitionMonoid) -> bool:
    """True iff the generators (hence all elements) pairwise commute."""
    gens = monoid.generator_of
    return all(
        monoid.mul(g, h) == monoid.mul(h, g) for g in gens for h in gens
    )


def generators_commute(dfa: Dfa) -> bool:
    """Commutativity of the transition monoid, decided directly from the
    letter transformations without enumerating the monoid."""
    letters = [tuple(dfa.delta[q][a] for q in range(dfa.n)) for a in range(dfa.k)]
    return all(
        _compose(letters[i], letters[j]) == _compose(letters[j], letters[i])
        for i in range(dfa.k)
        for j in range(i + 1, dfa.k)
    )


@dataclass(frozen=True)
class SemilatticeDecomposition:
    """Partition of a DS monoid into Archimedean components.

    ``component_of[i]`` is the component id of element ``i``; ids are
    ordered by each component's smallest element index.  ``order`` holds
    the pairs ``(x, y)`` with ``x <= y`` in the component semilattice
    (``x <= y`` iff the product of their members lands in ``x``), and
    ``minimal_component`` is the least component, which contains the
    monoid kernel.
    """

    component_of: tuple[int, ...]
    members: tuple[tuple[int, ...], ...]
    order: frozenset[tuple[int, int]]
    minimal_component: int
    kernel: frozenset[int]

    def component_members(self, cid: int) -> tuple[int, ...]:
        return self.members[cid]


def archimedean_decomposition(monoid: TransitionMonoid) -> SemilatticeDecomposition:
    """Partition a DS transition monoid by mutual division.

    Elements ``a`` and ``b`` share a component iff some power of each lies
    in the principal two-sided ideal of the other.  The result is
    post-verified: the classes must be closed under multiplication, the
    quotient must be a meet-semilattice, and the kernel must sit inside the
    least component; any failure raises :class:`DecompositionError`.
    Raises :class:`NotInDS` when the monoid is not in DS.
    """
    gc = green_classes(monoid)
    if not is_ds(monoid, gc):
        raise NotInDS("transition monoid has a regular D-class that is not a subsemigroup")
    size = len(monoid)
    reach = monoid.reach_masks()
    powers = monoid.power_masks()

    parent = list(range(size))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a in range(size):
        for b in range(a + 1, size):
            if powers[a] & reach[b] and powers[b] & reach[a]:
                ra, rb = find(a), find(b)
                if ra != rb:
                    parent[max(ra, rb)] = min(ra, rb)
    component_of, members = _canonical_classes([find(v) for v in range(size)])

    # mutual division must hold within every class (S1)
    for ms in members:
        for a in ms:
            for b in ms:
                if not (powers[a] & reach[b] and powers[b] & reach[a]):
                    raise DecompositionError("component not mutually dividing")

    ncomp = len(members)
    meet = [[-1] * ncomp for _ in range(ncomp)]
    for x in range(size):
        cx = component_of[x]
        for y in range(size):
            cy = component_of[y]
            c = component_of[monoid.mul(x, y)]
            if meet[cx][cy] == -1:
                meet[cx][cy] = c
            elif meet[cx][cy] != c:
                raise DecompositionError("component products are not well defined")
    for i in range(ncomp):
        if meet[i][i] != i:
            raise DecompositionError("component not closed under multiplication")
        for j in range(ncomp):
            if meet[i][j] != meet[j][i]:
                raise DecompositionError("component meet not commutative")
            for l in range(ncomp):
                if meet[meet[i][j]][l] != meet[i][meet[j][l]]:
                    raise DecompositionError("component meet not associative")

    order = frozenset(
        (i, j) for i in range(ncomp) for j in range(ncomp) if meet[i][j] == i
    )
    minimal = 0
    for i in range(1, ncomp):
        minimal = meet[minimal][i]
    if any(meet[minimal][j] != minimal for j in range(ncomp)):
        raise DecompositionError("no least component")
    ker = kernel(monoid)
    if not ker <= set(members[minimal]):
        raise DecompositionError("kernel escapes the least component")
    return SemilatticeDecomposition(
        component_of=component_of,
        members=members,
        order=order,
        minimal_component=minimal,
        kernel=ker,
    )


def subsemigroup_kernel(monoid: TransitionMonoid, members: Iterable[int]) -> frozenset[int]:
    """Minimal ideal of the subsemigroup spanned by ``members``.

    Uses the product of all members (which lies in every ideal) and its
    principal two-sided ideal within the subsemigroup.
    """
    ms = list(members)
    if not ms:
        raise ValueError("empty subsemigroup")
    member_set = set(ms)
    p = ms[0]
    for x in ms[1:]:
        p = monoid.mul(p, x)
    if p not in member_set:
        raise DecompositionError("set is not closed under multiplication")
    ker = {p}
    for c in ms:
        ker.add(monoid.mul(c, p))
        ker.add(monoid.mul(p, c))
        for d in ms:
            ker.add(monoid.mul(monoid.mul(c, p), d))
    if not ker <= member_set:  # pragma: no cover - closure guarantees this
        raise DecompositionError("ideal escapes the subsemigroup")
    return frozenset(ker)


def nilpotency_index(monoid: TransitionMonoid, members: Iterable[int]) -> int:
    """Least ``i`` such that every product of ``i`` factors from the
    component lands in the component's own kernel.

    Computed by level sets: ``P_1`` is the component and ``P_{i+1} = P_i *
    component`` until containment in the kernel holds.
    """
    ms = tuple(members)
    ker = subsemigroup_kernel(monoid, ms)
    level = frozenset(ms)
    index = 1
    while not level <= ker:
        level = frozenset(monoid.mul(x, y) for x in level for y in ms)
        index += 1
        if index > len(ms) + 1:  # pragma: no cover - Archimedean bound
            raise DecompositionError("level sets do not reach the kernel")
    return index


def monoid_report(
    monoid: TransitionMonoid,
    classes: GreenClasses | None = None,
) -> dict:
    """JSON-ready summary: size, generator map, D-class summary, kernel
    size, DS verdict and, inside DS, the decomposition shape."""
    gc = classes or green_classes(monoid)
    ds = is_ds(monoid, gc)
    report = {
        "schema": "syncgames.monoid/1",
        "size": len(monoid),
        "generators": {
            sym: monoid.generator_of[a] for a, sym in enumerate(monoid.dfa.alphabet)
        },
        "d_classes": [
            {"id": d, "size": len(ms), "regular": gc.regular[d]}
            for d, ms in enumerate(gc.d_members)
        ],
        "kernel_size": len(kernel(monoid)),
        "ds": ds,
    }
    if ds:
        decomp = archimedean_decomposition(monoid)
        report["decomposition"] = {
            "component_sizes": [len(ms) for ms in decomp.members],
            "order": sorted(decomp.order),
            "minimal_component": decomp.minimal_component,
        }
    else:
        report["decomposition"] = None
    return report
