"""Graded hom spaces over the boundary category of the orbit construction.

Objects are images of modules under the three embeddings.  Two routes are
provided: a case-map route (thm1/thm2) that reduces everything to orbit
sums of derived homs between stalks, and an evolution route (gamma) that
computes the orbit sum honestly, as totalized hom complexes over the
tensor algebra of the two-object line with the quiver, with the target
slots transported along the derived inverse translate step by step.
The two routes agree on embedded projectives; the case-map route is the
fast one and the evolution route is the oracle.
"""
from __future__ import annotations

import dataclasses
import json

import numpy as np

from . import _kernels as K
from . import complexes as cx
from . import morphcat as mp
from .dynkin import Quiver, coxeter_number
from .errors import GuardError, InternalCheckError
from .reps import IndecLabel
from .stalks import GradedDim, pi2_hom

DEFAULT_FLOOR = -3
_EMBED = (-1, 0, 1)


def _as_module_label(q: Quiver, x) -> IndecLabel:
    if isinstance(x, IndecLabel):
        return x
    from . import reps

    if isinstance(x, reps.Rep):
        return reps.label_by_dim_vector(q, x.dim_vector())
    raise GuardError(f"expected a module label, got {x!r}")


# ---------------------------------------------------------------------------
# the case-map route


def thm1_hom(i: int, x, j: int, y, min_degree: int = DEFAULT_FLOOR) -> GradedDim:
    """Graded hom from the i-embedded x to the j-embedded y."""
    if i not in _EMBED or j not in _EMBED:
        raise GuardError("embedding indices must lie in {-1, 0, 1}")
    if (i, j) in ((-1, 1), (0, -1), (1, 0)):
        return GradedDim({})
    if (i, j) == (1, -1):
        raw = pi2_hom(x, y, min_degree=min_degree - 1)
        return raw.shift(1).truncate_le0().truncate_min(min_degree)
    return pi2_hom(x, y, min_degree=min_degree)


def _pi2_over_labels(x, labels, q: Quiver, min_degree: int) -> GradedDim:
    total = GradedDim({})
    for lab in labels:
        if isinstance(lab, int):
            lab = IndecLabel(q, lab, 0)
        total = total.add(pi2_hom(x, lab, min_degree=min_degree))
    return total.truncate_min(min_degree)


def thm2_hom(i: int, x, Y, min_degree: int = DEFAULT_FLOOR) -> GradedDim:
    """Graded hom from the i-embedded x to a morphism-category object Y,
    through the term-extraction functors and the cone."""
    if i not in _EMBED:
        raise GuardError("embedding index must lie in {-1, 0, 1}")
    obj = mp.presentation(Y)
    q = obj.quiver
    if i == -1:
        return _pi2_over_labels(x, mp.functor_C(0, obj), q, min_degree)
    if i == 0:
        return _pi2_over_labels(x, mp.functor_C(1, obj), q, min_degree)
    raw = _pi2_over_labels(x, mp.cone(obj), q, min_degree - 1)
    return raw.shift(1).truncate_le0().truncate_min(min_degree)


# ---------------------------------------------------------------------------
# hom complexes and two-column totalization


def _hom_bases(A: cx.PCpx, B: cx.PCpx):
    """Basis (a-degree, target slot, source slot) of each graded piece of
    the hom complex, with its differential matrices."""
    q = A.quiver
    bases: dict[int, list[tuple[int, int, int]]] = {}
    if A.is_zero() or B.is_zero():
        return bases, {}
    adeg, bdeg = A.degrees(), B.degrees()
    for d in range(min(bdeg) - max(adeg), max(bdeg) - min(adeg) + 1):
        basis = []
        for e in adeg:
            src, tgt = A.term(e), B.term(e + d)
            if not src or not tgt:
                continue
            mask = cx._hom_mask(q, src, tgt)
            basis.extend((e, r, c) for r in range(len(tgt)) for c in range(len(src)) if mask[r, c])
        if basis:
            bases[d] = basis
    diffs: dict[int, np.ndarray] = {}
    for d, basis in bases.items():
        tgt_basis = bases.get(d + 1, [])
        index = {b: i for i, b in enumerate(tgt_basis)}
        M = np.zeros((len(tgt_basis), len(basis)), dtype=np.int64)
        sgn = -1 if d % 2 == 0 else 1  # coefficient of f∘dA in D(f) = dB∘f - (-1)^d f∘dA
        for ci, (e, r, c) in enumerate(basis):
            dB = B.diff(e + d)
            for rp in range(dB.shape[0]):
                if dB[rp, r] % K.P:
                    M[index[(e, rp, c)], ci] += dB[rp, r]
            dA = A.diff(e - 1)
            if dA.size:
                for cp in range(dA.shape[1]):
                    if dA[c, cp] % K.P:
                        M[index[(e - 1, r, cp)], ci] += sgn * dA[c, cp]
        diffs[d] = K.reduce_mod(M)
    return bases, diffs


def _delta_matrix(b0, b1, b01, d, xmap: cx.ChainMap, nmap: cx.ChainMap) -> np.ndarray:
    """delta(f0, f1) = f0∘x - n∘f1, from Hom^d(X0,N0)⊕Hom^d(X1,N1) to Hom^d(X1,N0)."""
    src0, src1 = b0.get(d, []), b1.get(d, [])
    tgt = b01.get(d, [])
    index = {b: i for i, b in enumerate(tgt)}
    M = np.zeros((len(tgt), len(src0) + len(src1)), dtype=np.int64)
    for ci, (e, r, c) in enumerate(src0):
        xm = xmap.comp(e)
        if xm.size:
            for cp in range(xm.shape[1]):
                if xm[c, cp] % K.P:
                    M[index[(e, r, cp)], ci] += xm[c, cp]
    for ci, (e, r, c) in enumerate(src1):
        nm = nmap.comp(e + d)
        if nm.size:
            for rp in range(nm.shape[0]):
                if nm[rp, r] % K.P:
                    M[index[(e, rp, c)], len(src0) + ci] -= nm[rp, r]
    return K.reduce_mod(M)


def _two_column_dims(X0, X1, xmap, N0, N1, nmap) -> dict[int, int]:
    """Cohomology dims of Tot[Hom(X0,N0)⊕Hom(X1,N1) -> Hom(X1,N0)[+1]]."""
    b0, d0 = _hom_bases(X0, N0)
    b1, d1 = _hom_bases(X1, N1)
    b01, d01 = _hom_bases(X1, N0)
    degs = set(b0) | set(b1) | {d + 1 for d in b01}
    if not degs:
        return {}
    lo, hi = min(degs) - 1, max(degs) + 1

    def tot_dim(d):
        return len(b0.get(d, [])) + len(b1.get(d, [])) + len(b01.get(d - 1, []))

    def tot_diff(d):
        n_src0, n_src1 = len(b0.get(d, [])), len(b1.get(d, []))
        n_src01 = len(b01.get(d - 1, []))
        n_tgt0, n_tgt1 = len(b0.get(d + 1, [])), len(b1.get(d + 1, []))
        n_tgt01 = len(b01.get(d, []))
        M = np.zeros((n_tgt0 + n_tgt1 + n_tgt01, n_src0 + n_src1 + n_src01), dtype=np.int64)
        if d in d0 and d0[d].size:
            M[:n_tgt0, :n_src0] = d0[d]
        if d in d1 and d1[d].size:
            M[n_tgt0:n_tgt0 + n_tgt1, n_src0:n_src0 + n_src1] = d1[d]
        delta = _delta_matrix(b0, b1, b01, d, xmap, nmap)
        if delta.size:
            M[n_tgt0 + n_tgt1:, :n_src0 + n_src1] = delta
        if d - 1 in d01 and d01[d - 1].size:
            M[n_tgt0 + n_tgt1:, n_src0 + n_src1:] = -d01[d - 1]
        return K.reduce_mod(M)

    mats = {d: tot_diff(d) for d in range(lo, hi + 1)}
    for d in range(lo, hi):
        if mats[d].size and mats[d + 1].size:
            if np.any(K.matmul(mats[d + 1], mats[d])):
                raise InternalCheckError("totalization differential does not square to zero")
    out = {}
    for d in range(lo, hi + 1):
        n = tot_dim(d)
        if n == 0:
            continue
        r_out = K.rank(mats[d]) if mats[d].size else 0
        r_in = K.rank(mats[d - 1]) if mats.get(d - 1) is not None and mats[d - 1].size else 0
        h = n - r_out - r_in
        if h < 0:
            raise InternalCheckError("negative cohomology dimension in totalization")
        if h:
            out[d] = h
    return out


# ---------------------------------------------------------------------------
# the evolution route


def _embed_slots(j: int, C: cx.PCpx):
    """Slots (N0, N1, connecting map) of the j-embedded object with
    presentation complex C."""
    Z = cx.PCpx(C.quiver, {}, {})
    if j == -1:
        return C, Z, cx.ChainMap(Z, C, {})
    if j == 0:
        return C, C, cx.identity_map(C)
    if j == 1:
        return Z, C, cx.ChainMap(C, Z, {})
    raise GuardError("embedding index must lie in {-1, 0, 1}")


def gamma_hom(i: int, x, j: int, y, min_degree: int = DEFAULT_FLOOR) -> GradedDim:
    """Orbit-sum hom via slot evolution: at each power the target slots are
    transported along the derived inverse translate and reduced, and the
    totalized two-column hom complex contributes its cohomology."""
    xlab = x if isinstance(x, IndecLabel) else None
    q = xlab.quiver if xlab is not None else y.quiver
    xlab = _as_module_label(q, x)
    ylab = _as_module_label(q, y)
    CX = cx.min_presentation_pcpx(xlab)
    X0, X1, xmap = _embed_slots(i, CX)
    N0, N1, nmap = _embed_slots(j, cx.min_presentation_pcpx(ylab))
    T = cx.tau_inv_functor(q)
    h = coxeter_number(q.dtype)
    # One full orbit lap suffices: the h-th power of the evolution is the
    # double suspension, so later laps repeat the first one two degrees down.
    raw: list[dict[int, int]] = []
    for p in range(h + 1):
        raw.append(_two_column_dims(X0, X1, xmap, N0, N1, nmap))
        TN0, TN1 = T.apply(N0), T.apply(N1)
        Tn = T.apply_map(nmap, TN1, TN0)
        M0, _, p0 = cx.minimize(TN0)
        M1, i1, _ = cx.minimize(TN1)
        nmap = cx.compose_maps(p0, cx.compose_maps(Tn, i1))
        N0, N1 = M0, M1
    if raw[h] != {d - 2: n for d, n in raw[0].items()}:
        raise InternalCheckError("orbit evolution is not double-suspension periodic")
    total: dict[int, int] = {}
    for contrib in raw[:h]:
        if not contrib:
            continue
        s = 0
        while max(contrib) - 2 * s >= min_degree:
            for d, n in contrib.items():
                dd = d - 2 * s
                # each power's contribution enters truncated to degrees <= 0
                if min_degree <= dd <= 0:
                    total[dd] = total.get(dd, 0) + n
            s += 1
    return GradedDim(total).truncate_min(min_degree)


# ---------------------------------------------------------------------------
# the table


@dataclasses.dataclass(frozen=True)
class HomTable:
    quiver: Quiver
    keys: tuple[tuple[int, int], ...]  # (embedding index, vertex)
    grid: tuple[tuple[int, ...], ...]  # degree-zero dims, rows=source key

    def total(self) -> int:
        return sum(sum(row) for row in self.grid)

    def to_tsv(self) -> str:
        def name(k):
            return f"D{k[0]}P{k[1]}"

        lines = ["\t".join(["hom0"] + [name(k) for k in self.keys])]
        for key, row in zip(self.keys, self.grid):
            lines.append("\t".join([name(key)] + [str(v) for v in row]))
        return "\n".join(lines) + "\n"

    def to_json(self) -> dict:
        return {
            "type": str(self.quiver.dtype),
            "keys": [list(k) for k in self.keys],
            "grid": [list(r) for r in self.grid],
            "total": self.total(),
        }


def hom_table(q: Quiver, min_degree: int = DEFAULT_FLOOR) -> HomTable:
    """Degree-zero hom dimensions between all embedded projectives."""
    keys = tuple((i, v) for i in _EMBED for v in q.vertices)
    grid = []
    for (i, u) in keys:
        row = []
        for (j, v) in keys:
            g = thm1_hom(i, IndecLabel(q, u, 0), j, IndecLabel(q, v, 0), min_degree=min_degree)
            row.append(g[0])
        grid.append(tuple(row))
    return HomTable(q, keys, tuple(grid))


def export_hom_table(table: HomTable, fmt: str = "tsv") -> str:
    if fmt == "tsv":
        return table.to_tsv()
    if fmt == "json":
        return json.dumps(table.to_json(), indent=2) + "\n"
    raise GuardError(f"unknown table format {fmt!r}")
