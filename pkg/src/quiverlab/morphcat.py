"""The morphism category of projectives over a tree quiver.

Objects are maps between sums of projectives.  Indecomposables come in
three families: minimal presentations of modules (including the trivial
presentations 0 -> P of the projectives themselves), the identity objects
P -> P, and the kill objects P -> 0.  The category carries an AR structure
whose translation quiver is knitted here, together with the three
embeddings of the projectives (one per family), the two term-extraction
functors, the cone, and the label-level action of the power functor
(inverse-translate conjugate) with its half-integer bookkeeping objects.
"""
from __future__ import annotations

import dataclasses
import functools
from collections import Counter

import numpy as np

from . import _kernels as K
from . import complexes as cx
from . import reps, stalks
from .dynkin import Quiver, nakayama_involution
from .errors import GuardError, InternalCheckError
from .reps import IndecLabel
from .stalks import DerivedLabel, e_exponent


@dataclasses.dataclass(frozen=True, order=True)
class MprLabel:
    """Indecomposable of the morphism category.

    kind "mod": the minimal presentation of tauinv^power P_vertex;
    kind "dzero": the identity object at vertex; kind "done": the kill
    object at vertex (power is 0 for the latter two).
    """

    quiver: Quiver
    kind: str
    vertex: int
    power: int = 0

    def __post_init__(self):
        if self.kind not in ("mod", "dzero", "done"):
            raise GuardError(f"unknown morphism-object kind {self.kind!r}")
        if self.kind != "mod" and self.power != 0:
            raise GuardError("identity and kill objects carry no power")

    def __str__(self) -> str:
        if self.kind == "mod":
            return f"M({IndecLabel(self.quiver, self.vertex, self.power)})"
        return ("Z(%d)" if self.kind == "dzero" else "E(%d)") % self.vertex

    def module_label(self) -> IndecLabel:
        if self.kind != "mod":
            raise GuardError(f"{self} does not present a module")
        return IndecLabel(self.quiver, self.vertex, self.power)


class MprObject:
    """A morphism between sums of projectives, in scalar path coordinates."""

    def __init__(self, quiver: Quiver, p1, p0, mat):
        self.quiver = quiver
        self.p1 = tuple(int(v) for v in p1)
        self.p0 = tuple(int(v) for v in p0)
        self.mat = K.reduce_mod(np.asarray(mat, dtype=np.int64).reshape(len(self.p0), len(self.p1)))
        mask = cx._hom_mask(quiver, self.p1, self.p0)
        if np.any(self.mat[~mask]):
            raise InternalCheckError("presentation matrix has entries outside hom spaces")

    def as_pcpx(self) -> cx.PCpx:
        return cx.PCpx(self.quiver, {-1: self.p1, 0: self.p0}, {-1: self.mat}).validate()

    def dim_pair(self) -> tuple[tuple[int, ...], tuple[int, ...]]:
        def dims(labels):
            out = np.zeros(self.quiver.rank, dtype=np.int64)
            for v in labels:
                out += np.array(reps.projective_rep(self.quiver, v).dim_vector())
            return tuple(int(x) for x in out)

        return dims(self.p1), dims(self.p0)

    def __repr__(self) -> str:
        return f"MprObject({list(self.p1)} -> {list(self.p0)})"


# ---------------------------------------------------------------------------
# labels, windows, numbering


def _star(q: Quiver) -> dict[int, int]:
    return nakayama_involution(q)


def window(q: Quiver, i: int, k: int) -> MprLabel:
    """Slot (i, k) of the knitting plan: presentations inside the orbit,
    the kill object of the involuted vertex at the far edge."""
    e = e_exponent(q, i)
    if not 0 <= k <= e:
        raise InternalCheckError(f"slot ({i}, {k}) outside the window of vertex {i}")
    if k < e:
        return MprLabel(q, "mod", i, k)
    return MprLabel(q, "done", _star(q)[i])


def _slot(label: MprLabel) -> tuple[int, int]:
    q = label.quiver
    if label.kind == "mod":
        return label.vertex, label.power
    if label.kind == "done":
        i = _star(q)[label.vertex]
        return i, e_exponent(q, i)
    raise InternalCheckError("identity objects have no slot")


@functools.cache
def _simple_coords(q: Quiver) -> dict[int, tuple[int, int]]:
    """Orbit coordinates (j, k) of each simple module S_i."""
    out = {}
    for i in q.vertices:
        lab = reps.label_by_dim_vector(q, reps.simple_rep(q, i).dim_vector())
        out[i] = (lab.vertex, lab.power)
    return out


def _number_key(label: MprLabel) -> tuple[int, int]:
    q = label.quiver
    if label.kind == "dzero":
        j, k = _simple_coords(q)[label.vertex]
        return (2 * k + 1, j)
    i, k = _slot(label)
    return (2 * k, i)


@functools.cache
def mpr_indecomposables(q: Quiver) -> tuple[MprLabel, ...]:
    """All indecomposables, in the canonical numbering order (1-based ids
    are positions in this tuple plus one)."""
    labels = []
    for i in q.vertices:
        for k in range(e_exponent(q, i)):
            labels.append(MprLabel(q, "mod", i, k))
        labels.append(MprLabel(q, "dzero", i))
        labels.append(MprLabel(q, "done", i))
    expected = q.dtype.positive_root_count() + 2 * q.rank
    if len(labels) != expected:
        raise InternalCheckError("morphism-category label count is off")
    return tuple(sorted(labels, key=_number_key))


def mpr_number(q: Quiver) -> dict[MprLabel, int]:
    return {lab: i + 1 for i, lab in enumerate(mpr_indecomposables(q))}


def label_by_number(q: Quiver, n: int) -> MprLabel:
    labels = mpr_indecomposables(q)
    if not 1 <= n <= len(labels):
        raise GuardError(f"object number {n} out of range 1..{len(labels)}")
    return labels[n - 1]


# ---------------------------------------------------------------------------
# presentations, functors


def presentation(x) -> MprObject:
    """The object behind a label: minimal presentation for the module
    family, identity and kill maps for the other two."""
    if isinstance(x, MprObject):
        return x
    if not isinstance(x, MprLabel):
        raise InternalCheckError(f"cannot interpret {x!r} as a morphism-category object")
    q = x.quiver
    if x.kind == "dzero":
        return MprObject(q, (x.vertex,), (x.vertex,), [[1]])
    if x.kind == "done":
        return MprObject(q, (x.vertex,), (), np.zeros((0, 1)))
    labels1, labels0, scal = reps.min_presentation(reps.indec_rep(x.module_label()))
    return MprObject(q, tuple(labels1), tuple(labels0), scal)


def functor_D(i: int, p) -> MprLabel:
    """The three embeddings of projectives: i=-1 the module family,
    i=0 the identity family, i=1 the kill family."""
    if isinstance(p, IndecLabel):
        if p.power != 0:
            raise GuardError("the embeddings are defined on projective labels")
        q, v = p.quiver, p.vertex
    else:
        raise GuardError("pass a projective label (vertex, power 0)")
    if i == -1:
        return MprLabel(q, "mod", v, 0)
    if i == 0:
        return MprLabel(q, "dzero", v)
    if i == 1:
        return MprLabel(q, "done", v)
    raise GuardError(f"embedding index must be -1, 0 or 1, got {i}")


def functor_C(i: int, x) -> tuple[int, ...]:
    """Term extraction: i=0 the target term, i=1 the source term, as a
    multiset of projective vertex labels."""
    obj = presentation(x)
    if i == 0:
        return obj.p0
    if i == 1:
        return obj.p1
    raise GuardError(f"term index must be 0 or 1, got {i}")


def cone(x) -> list[DerivedLabel]:
    """Class of the two-term complex behind the object, split into stalk
    summands of the derived category."""
    obj = presentation(x)
    return cx.split_complex(obj.as_pcpx())


def hom_dim_mpr(x, y) -> int:
    """Dimension of the space of commuting squares between two objects."""
    X, Y = presentation(x), presentation(y)
    q = X.quiver
    mask1 = cx._hom_mask(q, X.p1, Y.p1)
    mask0 = cx._hom_mask(q, X.p0, Y.p0)
    vars1 = [(r, c) for r in range(len(Y.p1)) for c in range(len(X.p1)) if mask1[r, c]]
    vars0 = [(r, c) for r in range(len(Y.p0)) for c in range(len(X.p0)) if mask0[r, c]]
    nvar = len(vars1) + len(vars0)
    rows = []
    for a in range(len(Y.p0)):
        for b in range(len(X.p1)):
            row = np.zeros(nvar, dtype=np.int64)
            # (Y.mat @ f1)[a, b] - (f0 @ X.mat)[a, b] = 0
            for k, (r, c) in enumerate(vars1):
                if r_ := (Y.mat[a, r] if c == b else 0):
                    row[k] += r_
            for k, (r, c) in enumerate(vars0):
                if r == a:
                    row[len(vars1) + k] -= X.mat[c, b]
            rows.append(row % K.P)
    if not rows:
        return nvar
    return K.nullspace(np.array(rows, dtype=np.int64)).shape[1]


# ---------------------------------------------------------------------------
# the AR structure


@dataclasses.dataclass(frozen=True)
class Mesh:
    target: int       # id of the translated vertex V
    tau_target: int   # id of tau V
    middles: tuple[int, ...]


@dataclasses.dataclass(frozen=True)
class MprARQuiver:
    quiver: Quiver
    vertices: tuple[MprLabel, ...]
    arrows: tuple[tuple[int, int], ...]          # 1-based ids
    tau_pairs: tuple[tuple[int, int], ...]       # (x, tau x)
    meshes: tuple[Mesh, ...]

    def label(self, n: int) -> MprLabel:
        return self.vertices[n - 1]

    def to_json(self) -> dict:
        def lab(l: MprLabel):
            d = {"kind": l.kind, "vertex": l.vertex}
            if l.kind == "mod":
                d["power"] = l.power
            return d

        return {
            "type": str(self.quiver.dtype),
            "vertices": [{"id": i + 1, **lab(l)} for i, l in enumerate(self.vertices)],
            "arrows": [list(a) for a in self.arrows],
            "tau": [list(t) for t in self.tau_pairs],
            "meshes": [
                {"target": m.target, "tau_target": m.tau_target, "middles": list(m.middles)}
                for m in self.meshes
            ],
        }

    def to_dot(self) -> str:
        lines = ["digraph mpr {", "  rankdir=LR;"]
        for i, l in enumerate(self.vertices):
            lines.append(f'  n{i + 1} [label="{i + 1}: {l}"];')
        for a, b in self.arrows:
            lines.append(f"  n{a} -> n{b};")
        for a, b in self.tau_pairs:
            lines.append(f"  n{a} -> n{b} [style=dashed, constraint=false];")
        lines.append("}")
        return "\n".join(lines) + "\n"


@functools.cache
def mpr_ar_quiver(q: Quiver) -> MprARQuiver:
    """Knit the translation quiver: one mesh per translated vertex, with
    middle terms given by the neighbouring slots plus the identity object
    of a simple when the translate sits at its orbit position."""
    labels = mpr_indecomposables(q)
    num = {lab: i + 1 for i, lab in enumerate(labels)}
    dz_at: dict[tuple[int, int], MprLabel] = {}
    for m in q.vertices:
        dz_at[_simple_coords(q)[m]] = MprLabel(q, "dzero", m)
    arrows: set[tuple[int, int]] = set()
    tau_pairs: list[tuple[int, int]] = []
    meshes: list[Mesh] = []
    for i in q.vertices:
        for k in range(1, e_exponent(q, i) + 1):
            V = window(q, i, k)
            tV = window(q, i, k - 1)
            tau_pairs.append((num[V], num[tV]))
            middles: list[MprLabel] = []
            for (j, _) in q.arrows_into(i):
                if k <= e_exponent(q, j):
                    middles.append(window(q, j, k))
            for (_, j) in q.arrows_from(i):
                if k - 1 <= e_exponent(q, j):
                    middles.append(window(q, j, k - 1))
            if (i, k - 1) in dz_at:
                middles.append(dz_at[(i, k - 1)])
            mids = tuple(sorted(num[m] for m in middles))
            for m in mids:
                arrows.add((num[tV], m))
                arrows.add((m, num[V]))
            meshes.append(Mesh(num[V], num[tV], mids))
    # mesh additivity of presentation dimension pairs
    for mesh in meshes:
        tgt = presentation(labels[mesh.target - 1]).dim_pair()
        src = presentation(labels[mesh.tau_target - 1]).dim_pair()
        mid = [presentation(labels[m - 1]).dim_pair() for m in mesh.middles]
        for part in (0, 1):
            total = np.sum([np.array(m[part]) for m in mid], axis=0) if mid else np.zeros(q.rank)
            if not np.array_equal(np.array(tgt[part]) + np.array(src[part]), total):
                raise InternalCheckError("mesh fails dimension additivity")
    return MprARQuiver(
        q,
        labels,
        tuple(sorted(arrows)),
        tuple(sorted(tau_pairs)),
        tuple(sorted(meshes, key=lambda m: m.target)),
    )


def tau_mpr(x: MprLabel) -> MprLabel | None:
    """AR translate on labels: slides down the window, vanishing on the
    projective slice; identity objects are projective-injective."""
    if x.kind == "dzero":
        return None
    i, k = _slot(x)
    if k == 0:
        return None
    return window(x.quiver, i, k - 1)


# ---------------------------------------------------------------------------
# the power functor on labels


@dataclasses.dataclass(frozen=True)
class MprQuotientLabel:
    """State of the power-functor walk: family lineage, orbit position and
    accumulated suspension, taken in the quotient by the identity family."""

    quiver: Quiver
    family: str  # "mod" | "dzero" | "done"
    vertex: int
    power: int
    shift: int

    def __str__(self) -> str:
        tag = {"mod": "M", "dzero": "Z", "done": "E"}[self.family]
        base = f"{tag}({self.vertex},{self.power})"
        return base if self.shift == 0 else f"S^{self.shift}{base}"

    def label(self) -> MprLabel:
        if self.shift != 0 or (self.family != "mod" and self.power != 0):
            raise GuardError(f"{self} is not an honest indecomposable label")
        if self.family == "mod":
            return MprLabel(self.quiver, "mod", self.vertex, self.power)
        return MprLabel(self.quiver, self.family, self.vertex)


def f_power_label(x, p: int) -> MprQuotientLabel:
    """Iterate the power functor p times on a label, in the quotient by the
    identity family.  The module lineage crosses into the kill lineage at
    the window edge without picking up a suspension; the other two lineages
    wrap within themselves, suspending once per full window."""
    if isinstance(x, MprLabel):
        state = MprQuotientLabel(x.quiver, x.kind, x.vertex, x.power, 0)
    elif isinstance(x, MprQuotientLabel):
        state = x
    else:
        raise GuardError(f"cannot walk {x!r}")
    if p < 0:
        raise GuardError("the power functor walk runs forward only")
    q = state.quiver
    star = _star(q)
    fam, v, k, s = state.family, state.vertex, state.power, state.shift
    for _ in range(p):
        if fam == "mod":
            if k + 1 < e_exponent(q, v):
                k += 1
            else:
                fam, v, k = "done", star[v], 0
        else:
            if k + 1 < e_exponent(q, v):
                k += 1
            else:
                v, k, s = star[v], 0, s + 1
    return MprQuotientLabel(q, fam, v, k, s)


def f_presentation(x: MprLabel) -> tuple[tuple[MprLabel, ...], tuple[MprLabel, ...]]:
    """Presentation of the power-functor image of a label by objects of the
    two projective families: a pair (source summands, target summands).

    For the identity and kill families the functor acts termwise through
    the derived inverse translate of the underlying projective.  For the
    module family the target is the window successor and the source
    collects identity objects accounting for the mismatch between the
    successor's source term and the translated source term.
    """
    q = x.quiver
    F = cx.tau_inv_functor(q)
    if x.kind in ("dzero", "done"):
        mk = "dzero" if x.kind == "dzero" else "done"
        u1 = tuple(MprLabel(q, mk, v) for v in F.S[x.vertex])
        u0 = tuple(MprLabel(q, mk, v) for v in F.W[x.vertex])
        return u1, u0
    i, k = _slot(x)
    succ = window(q, i, k + 1)
    x1 = functor_C(1, x)
    pres_m1 = Counter(s for u in x1 for s in F.S[u])
    pres_0 = Counter(w for u in x1 for w in F.W[u])
    diff = Counter(functor_C(1, succ))
    diff.subtract(pres_0)
    if any(c < 0 for c in diff.values()):
        raise InternalCheckError("successor source term does not dominate the translated one")
    v_counts = pres_m1 + diff
    u1 = tuple(MprLabel(q, "dzero", v) for v in sorted(v_counts.elements()))
    return u1, (succ,)
