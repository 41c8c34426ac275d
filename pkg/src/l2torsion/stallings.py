"""Stallings core graphs of finitely generated subgroups of free groups.

Besides rank and membership, the module decides compressedness by
enumerating the folded quotients of a core graph: every overgroup of ``H``
contains an algebraic extension of ``H``, and the algebraic extensions are
realized by identifying vertices of the core graph of ``H`` and folding.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence

from .freegroup import FreeHom, Word

DEFAULT_VERTEX_CAP = 12

Edge = tuple[int, int, int]  # (source, label, target)


class VertexCapExceeded(RuntimeError):
    pass


class _Folder:
    def __init__(self, n: int):
        self.parent = list(range(n))
        self.out: list[dict[int, int]] = [{} for _ in range(n)]
        self.inn: list[dict[int, int]] = [{} for _ in range(n)]
        self.pending: list[tuple[int, int]] = []

    def new_vertex(self) -> int:
        self.parent.append(len(self.parent))
        self.out.append({})
        self.inn.append({})
        return len(self.parent) - 1

    def find(self, v: int) -> int:
        root = v
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[v] != root:
            self.parent[v], v = root, self.parent[v]
        return root

    def add_edge(self, u: int, lab: int, v: int) -> None:
        u, v = self.find(u), self.find(v)
        t = self.out[u].get(lab)
        if t is None:
            self.out[u][lab] = v
        elif self.find(t) != v:
            self.pending.append((t, v))
        s = self.inn[v].get(lab)
        if s is None:
            self.inn[v][lab] = u
        elif self.find(s) != u:
            self.pending.append((s, u))

    def merge(self, a: int, b: int) -> None:
        self.pending.append((a, b))
        while self.pending:
            a, b = self.pending.pop()
            a, b = self.find(a), self.find(b)
            if a == b:
                continue
            if b < a:
                a, b = b, a
            self.parent[b] = a
            out_b, inn_b = self.out[b], self.inn[b]
            self.out[b], self.inn[b] = {}, {}
            for lab, t in out_b.items():
                self.add_edge(a, lab, t)
            for lab, s in inn_b.items():
                self.add_edge(s, lab, a)

    def edges(self) -> set[Edge]:
        out = set()
        for u in range(len(self.parent)):
            if self.find(u) != u:
                continue
            for lab, t in self.out[u].items():
                out.add((u, lab, self.find(t)))
        return out


@dataclass(frozen=True)
class CoreGraph:
    """Folded, trimmed, base-pointed labeled graph; base vertex is 0.

    Vertices are numbered in the canonical breadth-first order from the
    base, so two graphs are isomorphic as labeled pointed graphs exactly
    when they compare equal.
    """

    vertices: int
    edges: tuple[Edge, ...]
    ambient_rank: int

    @property
    def base(self) -> int:
        return 0

    def out_map(self) -> list[dict[int, int]]:
        out: list[dict[int, int]] = [{} for _ in range(self.vertices)]
        for u, lab, v in self.edges:
            out[u][lab] = v
        return out

    def in_map(self) -> list[dict[int, int]]:
        inn: list[dict[int, int]] = [{} for _ in range(self.vertices)]
        for u, lab, v in self.edges:
            inn[v][lab] = u
        return inn

    def rank(self) -> int:
        return len(self.edges) - self.vertices + 1

    def is_folded(self) -> bool:
        seen_out, seen_in = set(), set()
        for u, lab, v in self.edges:
            if (u, lab) in seen_out or (v, lab) in seen_in:
                return False
            seen_out.add((u, lab))
            seen_in.add((v, lab))
        return True

    def to_json(self) -> dict:
        return {
            "vertices": self.vertices,
            "base": 0,
            "ambient_rank": self.ambient_rank,
            "edges": [{"from": u, "to": v, "label": lab} for u, lab, v in self.edges],
        }

    @classmethod
    def from_json(cls, data: dict) -> CoreGraph:
        edges = [(int(e["from"]), int(e["label"]), int(e["to"])) for e in data["edges"]]
        n = int(data["vertices"])
        base = int(data.get("base", 0))
        rank = int(data.get("ambient_rank", max((e[1] for e in edges), default=0)))
        return _finish(n, edges, rank, base)


def _finish(n: int, edges: Iterable[Edge], rank: int, base: int = 0, trim: bool = True) -> CoreGraph:
    edges = set(edges)
    alive = set(range(n))
    if trim:
        changed = True
        while changed:
            changed = False
            deg = {v: 0 for v in alive}
            for u, _, v in edges:
                deg[u] += 1
                deg[v] += 1
            for v in list(alive):
                if v != base and deg[v] <= 1:
                    alive.discard(v)
                    edges = {e for e in edges if e[0] != v and e[2] != v}
                    changed = True
    out: dict[int, dict[int, int]] = {v: {} for v in alive}
    inn: dict[int, dict[int, int]] = {v: {} for v in alive}
    for u, lab, v in edges:
        out[u][lab] = v
        inn[v][lab] = u
    order = [base]
    index = {base: 0}
    queue = deque([base])
    while queue:
        v = queue.popleft()
        for lab in range(1, rank + 1):
            for nb in (out[v].get(lab), inn[v].get(lab)):
                if nb is not None and nb not in index:
                    index[nb] = len(order)
                    order.append(nb)
                    queue.append(nb)
    relabeled = tuple(sorted((index[u], lab, index[v]) for u, lab, v in edges if u in index))
    return CoreGraph(len(order), relabeled, rank)


def build_core(words: Sequence[Word], rank: int) -> CoreGraph:
    """Wedge of loops reading ``words`` at the base, folded and trimmed."""
    f = _Folder(1)
    for w in words:
        if w.rank != rank:
            raise ValueError(f"word {w} not of rank {rank}")
        letters = list(w.letters())
        if not letters:
            continue
        cur = 0
        for k, (g, s) in enumerate(letters):
            nxt = 0 if k == len(letters) - 1 else f.new_vertex()
            if s > 0:
                f.add_edge(cur, g, nxt)
            else:
                f.add_edge(nxt, g, cur)
            cur = nxt
        f.merge(0, 0)
    return _fold_result(f, rank)


def _fold_result(f: _Folder, rank: int) -> CoreGraph:
    f.merge(0, 0)
    reps = sorted({f.find(v) for v in range(len(f.parent))})
    remap = {v: i for i, v in enumerate(reps)}
    edges = [(remap[u], lab, remap[v]) for u, lab, v in f.edges()]
    return _finish(len(reps), edges, rank, remap[f.find(0)])


def identify(g: CoreGraph, u: int, v: int) -> CoreGraph:
    """Identify two vertices of ``g`` and fold."""
    f = _Folder(g.vertices)
    for a, lab, b in g.edges:
        f.add_edge(a, lab, b)
    f.merge(u, v)
    return _fold_result(f, g.ambient_rank)


def rank(g: CoreGraph) -> int:
    return g.rank()


def membership(w: Word, g: CoreGraph) -> bool:
    out, inn = g.out_map(), g.in_map()
    cur = 0
    for lab, s in w.letters():
        nxt = out[cur].get(lab) if s > 0 else inn[cur].get(lab)
        if nxt is None:
            return False
        cur = nxt
    return cur == 0


def image_core(phi: FreeHom) -> CoreGraph:
    return build_core(list(phi.images), phi.codomain_rank)


def is_injective(phi: FreeHom) -> bool:
    # a free group of rank n is Hopfian, so F_n -> H onto a rank-n subgroup is an isomorphism
    return image_core(phi).rank() == phi.domain_rank


def algebraic_quotients(
    g: CoreGraph, cap: int = DEFAULT_VERTEX_CAP, stop_below_rank: int | None = None
) -> list[CoreGraph]:
    """All folded quotients of ``g`` up to labeled isomorphism, ``g`` included.

    With ``stop_below_rank`` set, enumeration stops as soon as a quotient of
    smaller rank appears (it is returned last).
    """
    if g.vertices > cap:
        raise VertexCapExceeded(f"{g.vertices} vertices exceeds cap {cap}")
    seen = {g}
    order = [g]
    queue = deque([g])
    while queue:
        h = queue.popleft()
        for u in range(h.vertices):
            for v in range(u + 1, h.vertices):
                q = identify(h, u, v)
                if q in seen:
                    continue
                seen.add(q)
                order.append(q)
                if stop_below_rank is not None and q.rank() < stop_below_rank:
                    return order
                queue.append(q)
    return order


def is_compressed(g: CoreGraph | FreeHom, cap: int = DEFAULT_VERTEX_CAP) -> bool:
    """No subgroup containing ``⟨g⟩`` has smaller rank.  Raises ``VertexCapExceeded``."""
    if isinstance(g, FreeHom):
        g = image_core(g)
    r = g.rank()
    if r <= 1:
        return True
    quotients = algebraic_quotients(g, cap, stop_below_rank=r)
    return all(q.rank() >= r for q in quotients)


def decide_weak_iso(phi: FreeHom, cap: int = DEFAULT_VERTEX_CAP) -> bool | None:
    """Exact decision whether the Fox Jacobian of ``phi`` is a weak isomorphism.

    ``None`` means the vertex cap was exceeded.
    """
    if not phi.is_square():
        return False
    core = image_core(phi)
    if core.rank() != phi.domain_rank:
        return False
    try:
        return is_compressed(core, cap)
    except VertexCapExceeded:
        return None


def is_isomorphism(phi: FreeHom) -> bool:
    if not phi.is_square() or not is_injective(phi):
        return False
    core = image_core(phi)
    return all(
        membership(Word.generator(phi.codomain_rank, j), core)
        for j in range(1, phi.codomain_rank + 1)
    )


def rose(rank: int) -> CoreGraph:
    return CoreGraph(1, tuple((0, lab, 0) for lab in range(1, rank + 1)), rank)
