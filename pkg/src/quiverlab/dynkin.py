"""Simply laced Dynkin diagrams and tree quivers.

Vertex numbering convention, fixed once for the whole package:

* type A_n: the path 1 - 2 - ... - n;
* type D_n: the path 1 - ... - (n-1) plus the extra edge (n-2, n);
* type E_n: the path 1 - ... - (n-1) plus the extra edge (3, n).

The default orientation points every edge from its smaller to its larger
endpoint.  A custom orientation may flip any subset of edges; the underlying
diagram is always the one above.
"""
from __future__ import annotations

import dataclasses
import functools
import json
import re

import numpy as np

from .errors import GuardError

_RANK_RANGE = {"A": (1, 8), "D": (4, 8), "E": (6, 8)}

# classical Coxeter numbers per type
_COXETER = {
    "A": lambda n: n + 1,
    "D": lambda n: 2 * n - 2,
    "E": lambda n: {6: 12, 7: 18, 8: 30}[n],
}


@dataclasses.dataclass(frozen=True, order=True)
class DynkinType:
    letter: str
    rank: int

    def __post_init__(self):
        if self.letter not in _RANK_RANGE:
            raise GuardError(f"unknown diagram letter {self.letter!r}; expected one of A, D, E")
        lo, hi = _RANK_RANGE[self.letter]
        if not lo <= self.rank <= hi:
            raise GuardError(
                f"rank {self.rank} out of the supported range "
                f"{self.letter}{lo}..{self.letter}{hi}"
            )

    @staticmethod
    def parse(spec: "DynkinType | str") -> "DynkinType":
        if isinstance(spec, DynkinType):
            return spec
        m = re.fullmatch(r"\s*([ADEade])\s*(\d+)\s*", str(spec))
        if not m:
            raise GuardError(f"cannot parse Dynkin type from {spec!r} (expected e.g. 'A3')")
        return DynkinType(m.group(1).upper(), int(m.group(2)))

    def __str__(self) -> str:
        return f"{self.letter}{self.rank}"

    @property
    def vertices(self) -> tuple[int, ...]:
        return tuple(range(1, self.rank + 1))

    @property
    def edges(self) -> tuple[tuple[int, int], ...]:
        n = self.rank
        if self.letter == "A":
            return tuple((i, i + 1) for i in range(1, n))
        if self.letter == "D":
            return tuple((i, i + 1) for i in range(1, n - 1)) + ((n - 2, n),)
        return tuple((i, i + 1) for i in range(1, n - 1)) + ((3, n),)

    def cartan_matrix(self) -> np.ndarray:
        n = self.rank
        c = 2 * np.eye(n, dtype=np.int64)
        for i, j in self.edges:
            c[i - 1, j - 1] = -1
            c[j - 1, i - 1] = -1
        return c

    def positive_root_count(self) -> int:
        n = self.rank
        if self.letter == "A":
            return n * (n + 1) // 2
        if self.letter == "D":
            return n * (n - 1)
        return {6: 36, 7: 63, 8: 120}[n]


def coxeter_number(dtype: DynkinType | str) -> int:
    dtype = DynkinType.parse(dtype)
    return _COXETER[dtype.letter](dtype.rank)


def _vertex_involution(dtype: DynkinType) -> dict[int, int]:
    """The diagram involution pairing each projective with an injective.

    Nontrivial exactly for A_n (reversal), D_n with n odd (fork swap) and E6
    (arm swap); the identity otherwise.
    """
    n = dtype.rank
    ident = {v: v for v in dtype.vertices}
    if dtype.letter == "A":
        return {v: n + 1 - v for v in dtype.vertices}
    if dtype.letter == "D":
        if n % 2 == 1:
            ident[n - 1], ident[n] = n, n - 1
        return ident
    if n == 6:
        ident.update({1: 5, 5: 1, 2: 4, 4: 2})
    return ident


@dataclasses.dataclass(frozen=True, order=True)
class Quiver:
    """A tree quiver: an orientation of a simply laced Dynkin diagram."""

    dtype: DynkinType
    arrows: tuple[tuple[int, int], ...]  # (source, target), sorted

    @property
    def vertices(self) -> tuple[int, ...]:
        return self.dtype.vertices

    @property
    def rank(self) -> int:
        return self.dtype.rank

    def arrows_from(self, v: int) -> tuple[tuple[int, int], ...]:
        return tuple(a for a in self.arrows if a[0] == v)

    def arrows_into(self, v: int) -> tuple[tuple[int, int], ...]:
        return tuple(a for a in self.arrows if a[1] == v)

    def sources(self) -> tuple[int, ...]:
        return tuple(v for v in self.vertices if not self.arrows_into(v))

    def sinks(self) -> tuple[int, ...]:
        return tuple(v for v in self.vertices if not self.arrows_from(v))

    @functools.cache
    def topological_order(self) -> tuple[int, ...]:
        """Vertices ordered so every arrow goes from earlier to later."""
        order: list[int] = []
        seen: set[int] = set()
        pending = sorted(self.vertices)
        while pending:
            progressed = False
            for v in list(pending):
                if all(u in seen for u, _ in self.arrows_into(v)):
                    order.append(v)
                    seen.add(v)
                    pending.remove(v)
                    progressed = True
            if not progressed:  # pragma: no cover - impossible on a tree
                raise GuardError("orientation contains a cycle")
        return tuple(order)

    @functools.cache
    def path_vertices(self, u: int, w: int) -> tuple[int, ...] | None:
        """The vertex sequence of the directed path u -> ... -> w, or None.

        Trees carry at most one directed path between any two vertices, so
        this determines every nonzero composite of arrows.
        """
        if u == w:
            return (u,)
        for _, x in self.arrows_from(u):
            rest = self.path_vertices(x, w)
            if rest is not None:
                return (u,) + rest
        return None

    def has_path(self, u: int, w: int) -> bool:
        return self.path_vertices(u, w) is not None

    def path_count_matrix(self) -> np.ndarray:
        n = self.rank
        m = np.zeros((n, n), dtype=np.int64)
        for u in self.vertices:
            for w in self.vertices:
                if self.has_path(u, w):
                    m[u - 1, w - 1] = 1
        return m

    def opposite(self) -> "Quiver":
        return Quiver(self.dtype, tuple(sorted((j, i) for i, j in self.arrows)))

    def __str__(self) -> str:
        arr = " ".join(f"{i}->{j}" for i, j in self.arrows)
        return f"{self.dtype}[{arr}]"


def _parse_arrows(spec) -> list[tuple[int, int]]:
    if isinstance(spec, str):
        out = []
        for tok in spec.replace(",", " ").split():
            m = re.fullmatch(r"(\d+)\s*->\s*(\d+)", tok)
            if not m:
                raise GuardError(f"cannot parse arrow {tok!r} (expected e.g. '1->2')")
            out.append((int(m.group(1)), int(m.group(2))))
        return out
    return [(int(i), int(j)) for i, j in spec]


def build_quiver(dtype: DynkinType | str, arrows=None) -> Quiver:
    """Build a tree quiver of the given type.

    `arrows` may be omitted (every edge oriented small -> large), an iterable
    of (source, target) pairs, or a string like "1->2 3->2".  Each underlying
    diagram edge must appear exactly once, in one of its two orientations.
    """
    dtype = DynkinType.parse(dtype)
    edges = dtype.edges
    if arrows is None:
        chosen = list(edges)
    else:
        chosen = _parse_arrows(arrows)
        need = {frozenset(e) for e in edges}
        got = [frozenset(a) for a in chosen]
        if len(chosen) != len(edges) or set(got) != need or len(set(got)) != len(got):
            raise GuardError(
                f"orientation {chosen} does not cover each edge of {dtype} exactly once"
            )
        for i, j in chosen:
            if i == j:
                raise GuardError("loops are not allowed")
    return Quiver(dtype, tuple(sorted(chosen)))


def nakayama_involution(q: Quiver | DynkinType | str) -> dict[int, int]:
    """The vertex involution i -> i* matching projectives with injectives.

    Depends only on the diagram, not on the orientation.
    """
    if isinstance(q, Quiver):
        dtype = q.dtype
    else:
        dtype = DynkinType.parse(q)
    return _vertex_involution(dtype)


def positive_roots(dtype: DynkinType | str) -> list[np.ndarray]:
    """All positive roots, generated by reflection closure from the simples."""
    dtype = DynkinType.parse(dtype)
    cartan = dtype.cartan_matrix()
    n = dtype.rank
    seen: dict[bytes, np.ndarray] = {}
    frontier = [np.eye(n, dtype=np.int64)[i] for i in range(n)]
    for r in frontier:
        seen[r.tobytes()] = r
    while frontier:
        nxt = []
        for r in frontier:
            for i in range(n):
                refl = r - int(r @ cartan[:, i]) * np.eye(n, dtype=np.int64)[i]
                if (refl >= 0).all() and refl.tobytes() not in seen:
                    seen[refl.tobytes()] = refl
                    nxt.append(refl)
        frontier = nxt
    return sorted(seen.values(), key=lambda r: (int(r.sum()), r.tolist()))


# ---------------------------------------------------------------------------
# serialization


def quiver_to_json(q: Quiver) -> dict:
    return {
        "type": str(q.dtype),
        "vertices": list(q.vertices),
        "arrows": [list(a) for a in q.arrows],
    }


def quiver_from_json(data: dict) -> Quiver:
    return build_quiver(data["type"], [tuple(a) for a in data["arrows"]])


def quiver_to_text(q: Quiver) -> str:
    """Round-trippable text form: a `type` header, then one arrow per line."""
    lines = [f"type {q.dtype.letter} {q.dtype.rank}"]
    lines.extend(f"{i} -> {j}" for i, j in q.arrows)
    return "\n".join(lines) + "\n"


def quiver_from_text(text: str) -> Quiver:
    dtype = None
    arrows = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("type"):
            parts = line.split()
            if len(parts) != 3:
                raise GuardError(f"bad type header {line!r} (expected 'type A 3')")
            dtype = DynkinType.parse(parts[1] + parts[2])
            continue
        m = re.fullmatch(r"(\d+)\s*->\s*(\d+)", line)
        if not m:
            raise GuardError(f"cannot parse quiver line {line!r}")
        arrows.append((int(m.group(1)), int(m.group(2))))
    if dtype is None:
        raise GuardError("quiver text is missing its 'type' header")
    return build_quiver(dtype, arrows or None)


def quiver_to_dot(q: Quiver) -> str:
    lines = ["digraph quiver {"]
    lines.append('  label="%s";' % q.dtype)
    for v in q.vertices:
        shape = "box" if not q.arrows_from(v) else "circle"
        lines.append(f'  v{v} [label="{v}", shape={shape}];')
    for i, j in q.arrows:
        lines.append(f"  v{i} -> v{j};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def format_quiver_text(q: Quiver) -> str:
    rows = [f"type:     {q.dtype}"]
    rows.append("arrows:   " + " ".join(f"{i}->{j}" for i, j in q.arrows))
    rows.append("sources:  " + " ".join(map(str, q.sources())))
    rows.append("sinks:    " + " ".join(map(str, q.sinks())))
    rows.append(f"coxeter:  {coxeter_number(q.dtype)}")
    inv = nakayama_involution(q)
    rows.append("star:     " + " ".join(f"{v}->{inv[v]}" for v in q.vertices))
    return "\n".join(rows) + "\n"


def _json_dumps(data) -> str:
    return json.dumps(data, indent=2, sort_keys=True) + "\n"
