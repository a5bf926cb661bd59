"""Filtering for a single alldifferent constraint.

Four filters of decreasing strength are provided, all taking a sequence of
integer domains and returning the filtered domains, or ``None`` when the
constraint is infeasible:

* ``regin_filter``: hyperarc consistency from a maximum matching of the
  variable/value graph, keeping exactly the edges that lie in some matching
  covering every variable.
* ``leconte_range_filter``: range consistency via Hall sets.
* ``puget_bounds_filter``: bounds consistency via Hall intervals.
* ``naive_filter``: singleton elimination only.

``oracle_filter`` recomputes the first three by exhaustive search over
injective assignments and is meant for cross-checking.
"""

from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence, Union

Domains = list[frozenset[int]]


class ScaleExceeded(ValueError):
    pass


@dataclass(frozen=True)
class AlldiffInstance:
    domains: tuple[frozenset[int], ...]
    variables: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        if not self.domains:
            raise ValueError("an alldifferent instance needs at least one variable")
        if not self.variables:
            object.__setattr__(self, "variables",
                               tuple(f"x{i + 1}" for i in range(len(self.domains))))
        if len(self.variables) != len(self.domains):
            raise ValueError("variables and domains must have equal length")

    @classmethod
    def of(cls, *domains: Iterable[int]) -> "AlldiffInstance":
        return cls(tuple(frozenset(d) for d in domains))


InstanceLike = Union[AlldiffInstance, Sequence[Iterable[int]]]


def _domains(inst: InstanceLike) -> Domains:
    if isinstance(inst, AlldiffInstance):
        return list(inst.domains)
    return [frozenset(d) for d in inst]


# -- value graph and matching -----------------------------------------------

@dataclass(frozen=True)
class ValueGraph:
    left: tuple[int, ...]
    right: tuple[int, ...]
    adjacency: tuple[tuple[int, ...], ...]

    @classmethod
    def from_domains(cls, domains: Sequence[Iterable[int]]) -> "ValueGraph":
        adj = tuple(tuple(sorted(d)) for d in domains)
        right = tuple(sorted({v for d in adj for v in d}))
        return cls(tuple(range(len(adj))), right, adj)

    @property
    def edges(self) -> list[tuple[int, int]]:
        return [(x, v) for x in self.left for v in self.adjacency[x]]


@dataclass
class Matching:
    pairs: dict[int, int] = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.pairs)

    @property
    def covered(self) -> set[int]:
        return set(self.pairs)

    def covers(self, variables: Iterable[int]) -> bool:
        return all(x in self.pairs for x in variables)


def maximum_matching(g: ValueGraph) -> Matching:
    """Hopcroft-Karp: BFS layering from free variables, then disjoint DFS augmentations."""
    adj = g.adjacency
    mate_x: dict[int, int] = {}
    mate_v: dict[int, int] = {}
    inf = len(g.left) + 1

    while True:
        dist: dict[int, int] = {}
        queue: deque[int] = deque()
        for x in g.left:
            if x not in mate_x:
                dist[x] = 0
                queue.append(x)
        limit = inf
        while queue:
            x = queue.popleft()
            if dist[x] >= limit:
                continue
            for v in adj[x]:
                y = mate_v.get(v)
                if y is None:
                    limit = min(limit, dist[x] + 1)
                elif y not in dist:
                    dist[y] = dist[x] + 1
                    queue.append(y)
        if limit == inf:
            break

        def augment(x: int) -> bool:
            for v in adj[x]:
                y = mate_v.get(v)
                if (y is None and dist[x] + 1 == limit) or (
                        y is not None and dist.get(y) == dist[x] + 1 and augment(y)):
                    mate_x[x] = v
                    mate_v[v] = x
                    return True
            dist[x] = inf
            return False

        grew = False
        for x in g.left:
            if x not in mate_x and augment(x):
                grew = True
        if not grew:
            break
    return Matching(dict(sorted(mate_x.items())))


def _strongly_connected(nodes: Sequence, succ: dict) -> dict:
    """Iterative Tarjan; maps each node to a component id."""
    index: dict = {}
    low: dict = {}
    comp: dict = {}
    stack: list = []
    on_stack: set = set()
    counter = 0
    ncomp = 0
    for root in nodes:
        if root in index:
            continue
        work = [(root, iter(succ.get(root, ())))]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack.add(root)
        while work:
            node, it = work[-1]
            advanced = False
            for nxt in it:
                if nxt not in index:
                    index[nxt] = low[nxt] = counter
                    counter += 1
                    stack.append(nxt)
                    on_stack.add(nxt)
                    work.append((nxt, iter(succ.get(nxt, ()))))
                    advanced = True
                    break
                if nxt in on_stack:
                    low[node] = min(low[node], index[nxt])
            if advanced:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[node])
            if low[node] == index[node]:
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    comp[w] = ncomp
                    if w == node:
                        break
                ncomp += 1
    return comp


def regin_filter(inst: InstanceLike) -> Domains | None:
    domains = _domains(inst)
    g = ValueGraph.from_domains(domains)
    m = maximum_matching(g)
    if len(m) < len(domains):
        return None
    # Nodes are ("x", i) and ("v", value).  Matched edges point variable -> value,
    # the others value -> variable, so directed paths are alternating paths.
    succ: dict = {}
    for x, vals in enumerate(g.adjacency):
        for v in vals:
            if m.pairs[x] == v:
                succ.setdefault(("x", x), []).append(("v", v))
            else:
                succ.setdefault(("v", v), []).append(("x", x))
    matched_values = set(m.pairs.values())
    reach = {("v", v) for v in g.right if v not in matched_values}
    queue = deque(reach)
    while queue:
        node = queue.popleft()
        for nxt in succ.get(node, ()):
            if nxt not in reach:
                reach.add(nxt)
                queue.append(nxt)
    nodes = [("x", x) for x in g.left] + [("v", v) for v in g.right]
    comp = _strongly_connected(nodes, succ)
    out = []
    for x, vals in enumerate(g.adjacency):
        keep = set()
        for v in vals:
            if (m.pairs[x] == v or ("v", v) in reach
                    or comp[("v", v)] == comp[("x", x)]):
                keep.add(v)
        out.append(frozenset(keep))
    return out


# -- Hall intervals and Hall sets --------------------------------------------

@dataclass(frozen=True)
class HallInterval:
    lo: int
    hi: int
    members: frozenset[int]

    @property
    def width(self) -> int:
        return self.hi - self.lo + 1

    @property
    def is_hall(self) -> bool:
        return self.width == len(self.members)


@dataclass(frozen=True)
class HallSet:
    members: frozenset[int]
    lo: int
    hi: int

    @property
    def is_hall(self) -> bool:
        return len(self.members) == self.hi - self.lo + 1


def candidate_intervals(domains: Sequence[frozenset[int]]) -> list[HallInterval]:
    """Intervals whose ends are some domain's min and some domain's max.

    Every Hall interval (and every overloaded interval) shrinks to one of
    these without losing members, so checking them is enough.
    """
    lows = sorted({min(d) for d in domains})
    highs = sorted({max(d) for d in domains})
    hull = [(min(d), max(d)) for d in domains]
    out = []
    for a in lows:
        for b in highs:
            if b < a:
                continue
            members = frozenset(i for i, (lo, hi) in enumerate(hull) if a <= lo and hi <= b)
            out.append(HallInterval(a, b, members))
    return out


def hall_set_of(domains: Sequence[frozenset[int]], members: Iterable[int]) -> HallSet:
    members = frozenset(members)
    union = set().union(*(domains[i] for i in members))
    return HallSet(members, min(union), max(union))


def _hall_fixpoint(domains: Domains, trim_bounds_only: bool) -> Domains | None:
    if any(not d for d in domains):
        return None
    changed = True
    while changed:
        changed = False
        for iv in candidate_intervals(domains):
            if len(iv.members) > iv.width:
                return None
            if not iv.is_hall:
                continue
            for i, d in enumerate(domains):
                if i in iv.members:
                    continue
                if trim_bounds_only:
                    vals = sorted(d)
                    a, b = 0, len(vals)
                    while a < b and iv.lo <= vals[a] <= iv.hi:
                        a += 1
                    while b > a and iv.lo <= vals[b - 1] <= iv.hi:
                        b -= 1
                    nd = frozenset(vals[a:b])
                else:
                    nd = frozenset(v for v in d if not iv.lo <= v <= iv.hi)
                if nd != d:
                    if not nd:
                        return None
                    domains[i] = nd
                    changed = True
            if changed:
                break  # hulls moved; rebuild the candidate list
    return domains


def puget_bounds_filter(inst: InstanceLike) -> Domains | None:
    """Bounds consistency: push every domain's min and max out of each Hall interval."""
    return _hall_fixpoint(_domains(inst), trim_bounds_only=True)


def leconte_range_filter(inst: InstanceLike) -> Domains | None:
    """Range consistency: remove a Hall set's whole interval from the other domains."""
    return _hall_fixpoint(_domains(inst), trim_bounds_only=False)


def naive_filter(inst: InstanceLike) -> Domains | None:
    domains = _domains(inst)
    if any(not d for d in domains):
        return None
    done: set[int] = set()
    while True:
        fresh = [i for i, d in enumerate(domains) if len(d) == 1 and i not in done]
        if not fresh:
            return domains
        for i in fresh:
            done.add(i)
            (v,) = domains[i]
            for j, d in enumerate(domains):
                if j != i and v in d:
                    domains[j] = d - {v}
                    if not domains[j]:
                        return None


# -- brute-force oracle ------------------------------------------------------

class Level(enum.Enum):
    HYPERARC = "hyperarc"
    RANGE = "range"
    BOUNDS = "bounds"


ORACLE_LIMIT = 10


def _supported(relaxed: Sequence[Iterable[int]]) -> set[tuple[int, int]]:
    """Every (variable, value) pair used by some injective assignment.

    Exhaustive over assignments, grouped by the set of values already used:
    a forward sweep collects reachable used-sets per variable, a backward
    sweep which of them can still be completed.
    """
    k = len(relaxed)
    vals = sorted({v for d in relaxed for v in d})
    pos = {v: i for i, v in enumerate(vals)}
    masks = [[(v, 1 << pos[v]) for v in sorted(d)] for d in relaxed]
    forward: list[set[int]] = [{0}]
    for i in range(k):
        nxt = set()
        for used in forward[i]:
            for _, b in masks[i]:
                if not used & b:
                    nxt.add(used | b)
        forward.append(nxt)
    completable: list[set[int]] = [set() for _ in range(k + 1)]
    completable[k] = set(forward[k])
    for i in range(k - 1, -1, -1):
        for used in forward[i]:
            if any(not used & b and used | b in completable[i + 1] for _, b in masks[i]):
                completable[i].add(used)
    out = set()
    for i in range(k):
        for used in completable[i]:
            for v, b in masks[i]:
                if not used & b and used | b in completable[i + 1]:
                    out.add((i, v))
    return out


def _hull(d: frozenset[int]) -> range:
    return range(min(d), max(d) + 1)


def oracle_filter(inst: InstanceLike, level: Level = Level.HYPERARC) -> Domains | None:
    """Definitional filtering by enumeration; ``None`` when nothing survives.

    HYPERARC keeps values used by some solution over the real domains.  RANGE
    and BOUNDS let the other variables range over their interval hulls; RANGE
    tests every value, BOUNDS only peels unsupported minima and maxima.  Both
    iterate because hulls shrink as values go.
    """
    domains = _domains(inst)
    if len(domains) > ORACLE_LIMIT or len(set().union(*domains)) > ORACLE_LIMIT:
        raise ScaleExceeded(f"oracle limited to {ORACLE_LIMIT} variables and values")
    if any(not d for d in domains):
        return None
    if level is Level.HYPERARC:
        ok = _supported(domains)
        out = [frozenset(v for v in d if (i, v) in ok) for i, d in enumerate(domains)]
        return None if any(not d for d in out) else out
    while True:
        ok = _supported([_hull(d) for d in domains])
        out = []
        for i, d in enumerate(domains):
            if level is Level.RANGE:
                nd = frozenset(v for v in d if (i, v) in ok)
            else:
                vals = sorted(d)
                while vals and (i, vals[0]) not in ok:
                    vals.pop(0)
                while vals and (i, vals[-1]) not in ok:
                    vals.pop()
                nd = frozenset(vals)
            if not nd:
                return None
            out.append(nd)
        if out == domains:
            return out
        domains = out
