"""Preprojective algebra, its triangular block extension, and the lift
between morphism-category labels and modules over the block algebra.

The preprojective algebra is built word by word over the doubled quiver,
with the mesh relations imposed degree by degree.  A seeded Frobenius
form supported on the socle yields the twist automorphism used in the
corner block of the 3x3 triangular algebra.  Labels of the morphism
category embed via base change along quiver-paths, and the partial
inverse splits an arbitrary block morphism into labelled summands plus
a universal two-term conflation witness for everything else.
"""
from __future__ import annotations

import dataclasses
import functools
import warnings

import numpy as np

from . import _kernels as K
from . import morphcat as mp
from .dynkin import Quiver, nakayama_involution
from .errors import GuardError, InternalCheckError
from .morphcat import MprLabel

_LIFTABLE = {"A1", "A2", "A3", "A4", "A5", "D4", "D5"}


# ---------------------------------------------------------------------------
# the preprojective algebra


class PreprojAlgebra:
    """Quotient of the doubled path algebra by the mesh relations, over the
    working prime field.  Elements are dense coefficient vectors over a
    fixed path-word basis; products read diagrammatically (x * y is the
    path x followed by the path y)."""

    def __init__(self, q: Quiver, seed: int = 0):
        if str(q.dtype) not in _LIFTABLE:
            raise GuardError(
                f"preprojective word basis only built for {sorted(_LIFTABLE)}, not {q.dtype}"
            )
        self.quiver = q
        self.star = nakayama_involution(q)
        # doubled arrows: even index = quiver arrow, odd = its reverse
        self.darrows: list[tuple[int, int]] = []
        for (i, j) in q.arrows:
            self.darrows.append((i, j))
            self.darrows.append((j, i))
        self._build_basis()
        self._build_mult()
        self._build_frobenius(seed)

    # -- construction -------------------------------------------------------

    def _paths(self, length: int):
        if length == 0:
            return [(v, ()) for v in self.quiver.vertices]
        out = []
        for (start, word) in self._paths(length - 1):
            end = self.darrows[word[-1]][1] if word else start
            for a, (s, _) in enumerate(self.darrows):
                if s == end:
                    out.append((start, word + (a,)))
        return out

    def _build_basis(self):
        q = self.quiver
        self.basis: list[tuple[int, tuple[int, ...]]] = []
        self.coords: dict[tuple[int, tuple[int, ...]], np.ndarray | None] = {}
        degree = 0
        per_degree: list[list[tuple[int, tuple[int, ...]]]] = []
        while True:
            words = self._paths(degree)
            if not words:
                break
            rel_rows = self._relation_rows(degree, words) if degree >= 2 else []
            keep = list(range(len(words)))
            red = np.eye(len(words), dtype=np.int64)
            if rel_rows:
                R = np.array(rel_rows, dtype=np.int64)
                rr, pivots = K.rref(R)
                piv = set(int(p) for p in pivots)
                keep = [i for i in range(len(words)) if i not in piv]
                # rref rows express each pivot word in non-pivot words
                red = np.eye(len(words), dtype=np.int64)
                for ri, p in enumerate(pivots):
                    row = rr[ri].copy()
                    row[p] = 0
                    if any(int(row[pp]) % K.P for pp in piv):
                        raise InternalCheckError("relation rref is not fully reduced")
                    red[int(p)] = (-row) % K.P
            if not keep:
                break
            base = len(self.basis)
            local = {}
            for slot, wi in enumerate(keep):
                self.basis.append(words[wi])
                local[wi] = base + slot
            for wi, w in enumerate(words):
                vec_local = red[wi]
                self.coords[w] = (vec_local, {k: local[k] for k in keep}, keep)
            per_degree.append([words[i] for i in keep])
            degree += 1
        self.dim = len(self.basis)
        self.max_degree = degree - 1
        # rebuild coords as global dense vectors
        dense = {}
        for w, (vec, localmap, keep) in self.coords.items():
            out = np.zeros(self.dim, dtype=np.int64)
            for k in keep:
                if vec[k] % K.P:
                    out[localmap[k]] = vec[k] % K.P
            dense[w] = out
        self.coords = dense
        self.word_degree = {w: len(w[1]) for w in self.coords}
        self.e_index = {v: self.basis.index((v, ())) for v in self.quiver.vertices}

    def _relation_rows(self, degree: int, words):
        index = {w: i for i, w in enumerate(words)}
        rows = []
        star_of = {}
        for k in range(0, len(self.darrows), 2):
            star_of[k] = k + 1
            star_of[k + 1] = k
        for plen in range(degree - 1):
            for (ps, pw) in self._paths(plen):
                pe = self.darrows[pw[-1]][1] if pw else ps
                # one relation per (prefix, suffix) pair: the relation at
                # vertex pe is the signed sum over doubled arrows a leaving
                # pe of a * a-star, with quiver arrows carrying +.
                for (ss, sw) in self._paths(degree - plen - 2):
                    if ss != pe:
                        continue
                    row = np.zeros(len(words), dtype=np.int64)
                    nonzero = False
                    for a, (s, _) in enumerate(self.darrows):
                        if s != pe:
                            continue
                        sign = 1 if a % 2 == 0 else -1
                        w = (ps, pw + (a, star_of[a]) + sw)
                        row[index[w]] += sign
                        nonzero = True
                    if nonzero:
                        rows.append(row % K.P)
        return rows

    def _build_mult(self):
        self.table = np.zeros((self.dim, self.dim, self.dim), dtype=np.int64)
        for i, (s1, w1) in enumerate(self.basis):
            e1 = self.darrows[w1[-1]][1] if w1 else s1
            for j, (s2, w2) in enumerate(self.basis):
                if s2 != e1:
                    continue
                if len(w1) + len(w2) > self.max_degree:
                    continue
                self.table[i, j] = self.coords[(s1, w1 + w2)]

    def _build_frobenius(self, seed: int):
        rng = np.random.default_rng(seed)
        for _ in range(64):
            f = np.zeros(self.dim, dtype=np.int64)
            for i, (s, w) in enumerate(self.basis):
                if len(w) == self.max_degree:
                    f[i] = int(rng.integers(1, K.P))
            gram = np.zeros((self.dim, self.dim), dtype=np.int64)
            for i in range(self.dim):
                gram[i] = K.reduce_mod(self.table[i] @ f)
            if K.rank(gram) == self.dim:
                break
        else:
            raise InternalCheckError("no nondegenerate socle-supported form found")
        self.frobenius = f
        theta = np.zeros((self.dim, self.dim), dtype=np.int64)
        for j in range(self.dim):
            rhs = K.reduce_mod(self.table[j] @ f)  # rhs_i = f(b_j b_i)
            sol = K.solve(gram, rhs)
            if sol is None:
                raise InternalCheckError("twist solve failed")
            theta[:, j] = sol
        self.theta = K.reduce_mod(theta)
        for v in self.quiver.vertices:
            img = self.theta[:, self.e_index[v]]
            want = np.zeros(self.dim, dtype=np.int64)
            want[self.e_index[self.star[v]]] = 1
            if not np.array_equal(img % K.P, want):
                raise InternalCheckError("twist does not permute the idempotents correctly")
        # multiplicativity spot check
        rng2 = np.random.default_rng(seed + 1)
        for _ in range(8):
            x = rng2.integers(0, K.P, self.dim)
            y = rng2.integers(0, K.P, self.dim)
            lhs = self.apply_theta(self.mult(x, y))
            rhs2 = self.mult(self.apply_theta(x), self.apply_theta(y))
            if not np.array_equal(lhs, rhs2):
                raise InternalCheckError("twist is not multiplicative")

    # -- arithmetic ---------------------------------------------------------

    def unit(self, v: int) -> np.ndarray:
        out = np.zeros(self.dim, dtype=np.int64)
        out[self.e_index[v]] = 1
        return out

    def mult(self, x, y) -> np.ndarray:
        x = K.reduce_mod(np.asarray(x, dtype=np.int64))
        y = K.reduce_mod(np.asarray(y, dtype=np.int64))
        left = K.reduce_mod(np.tensordot(x, self.table, axes=(0, 0)))
        return K.reduce_mod(y @ left)

    def apply_theta(self, x) -> np.ndarray:
        return K.reduce_mod(self.theta @ K.reduce_mod(np.asarray(x, dtype=np.int64)))

    def word_start(self, i: int) -> int:
        return self.basis[i][0]

    def word_end(self, i: int) -> int:
        s, w = self.basis[i]
        return self.darrows[w[-1]][1] if w else s

    @functools.cache
    def block_indices(self, i: int, j: int) -> tuple[int, ...]:
        """Basis indices of the path space from i to j."""
        return tuple(
            k for k in range(self.dim) if self.word_start(k) == i and self.word_end(k) == j
        )

    def module_indices(self, v: int) -> tuple[int, ...]:
        """Basis of the left projective at v: all paths ending at v."""
        return tuple(k for k in range(self.dim) if self.word_end(k) == v)

    def path_string(self, i: int) -> str:
        s, w = self.basis[i]
        seq = [s]
        for a in w:
            seq.append(self.darrows[a][1])
        return "-".join(str(v) for v in seq)

    def quiver_path_element(self, src: int, tgt: int) -> np.ndarray:
        """Image of the unique tree path src -> tgt under the embedding that
        uses only the unreversed arrows."""
        verts = self.quiver.path_vertices(src, tgt)
        if verts is None:
            raise GuardError(f"no path {src} -> {tgt}")
        out = self.unit(src)
        for a, b in zip(verts, verts[1:]):
            ai = 2 * list(self.quiver.arrows).index((a, b))
            word = (a, (ai,))
            out = self.mult(out, self.coords[word])
        return out


@functools.cache
def preprojective_algebra(q: Quiver, seed: int = 0) -> PreprojAlgebra:
    return PreprojAlgebra(q, seed)


# ---------------------------------------------------------------------------
# the triangular block algebra


class TQAlgebra:
    """Cyclic 3x3 block algebra with pattern
    [[L, 0, L'], [L, L, 0], [0, L, L]]: six copies of the loop algebra L
    arranged so that every product leaving the pattern vanishes.  The
    corner block L' is the twisted copy: passing through it is what makes
    the socle-to-top permutation pick up the vertex involution once per
    lap around the cycle, instead of closing up after three steps."""

    BLOCKS = ((0, 0), (0, 2), (1, 0), (1, 1), (2, 1), (2, 2))
    CORNER = (0, 2)

    def __init__(self, q: Quiver, seed: int = 0):
        self.algebra = preprojective_algebra(q, seed)
        self.quiver = q
        d = self.algebra.dim
        self.entry_dims = {b: d for b in self.BLOCKS}
        self.total_dim = 6 * d
        self.basis = [(b, k) for b in self.BLOCKS for k in range(d)]
        self.index = {bk: i for i, bk in enumerate(self.basis)}
        self._check_associativity(seed)

    def block_product(self, b1, x, b2, y):
        """Product of an element x in block b1 with y in block b2; returns
        (block, vector) or None when it is structurally zero."""
        if b1[1] != b2[0]:
            return None
        tgt = (b1[0], b2[1])
        if tgt not in self.BLOCKS:
            return None  # forced zero through a vanishing block
        return tgt, self.algebra.mult(x, y)

    def _check_associativity(self, seed):
        rng = np.random.default_rng(seed + 2)
        d = self.algebra.dim
        for b1 in self.BLOCKS:
            for b2 in self.BLOCKS:
                for b3 in self.BLOCKS:
                    x, y, z = (rng.integers(0, K.P, d) for _ in range(3))
                    xy = self.block_product(b1, x, b2, y)
                    left = self.block_product(*xy, b3, z) if xy else None
                    yz = self.block_product(b2, y, b3, z)
                    right = self.block_product(b1, x, *yz) if yz else None
                    lb = {left[0]: left[1]} if left is not None and np.any(left[1] % K.P) else {}
                    rb = {right[0]: right[1]} if right is not None and np.any(right[1] % K.P) else {}
                    if set(lb) != set(rb) or any(
                        not np.array_equal(lb[k] % K.P, rb[k] % K.P) for k in lb
                    ):
                        raise InternalCheckError(f"block product not associative at {b1}{b2}{b3}")

    def idempotents(self):
        return [(r, v) for r in range(3) for v in self.quiver.vertices]

    def projective_basis(self, r: int, v: int):
        """Basis of the left projective at the diagonal idempotent (r, v):
        pairs (block, algebra basis index)."""
        alg = self.algebra
        out = []
        for b in self.BLOCKS:
            if b[1] != r:
                continue
            out.extend((b, k) for k in alg.module_indices(v))
        return out

    def nakayama_permutation(self) -> dict[tuple[int, int], tuple[int, int]]:
        """Socle chase: each left projective has simple socle, whose weight
        is the image idempotent."""
        alg = self.algebra
        d = alg.dim
        perm = {}
        # radical generators: all off-diagonal block basis elements plus
        # diagonal radical elements
        rad_gens = []
        for b in self.BLOCKS:
            for k in range(d):
                if b[0] == b[1] and alg.word_degree[alg.basis[k]] == 0:
                    continue
                rad_gens.append((b, k))
        for (r, v) in self.idempotents():
            pbasis = self.projective_basis(r, v)
            pindex = {bk: i for i, bk in enumerate(pbasis)}
            n = len(pbasis)
            rows = []
            for (gb, gk) in rad_gens:
                gvec = np.zeros(d, dtype=np.int64)
                gvec[gk] = 1
                mat = np.zeros((n, n), dtype=np.int64)
                touched = False
                for ci, (b, k) in enumerate(pbasis):
                    xvec = np.zeros(d, dtype=np.int64)
                    xvec[k] = 1
                    prod = self.block_product(gb, gvec, b, xvec)
                    if prod is None:
                        continue
                    tb, tv = prod
                    for kk in np.nonzero(tv % K.P)[0]:
                        mat[pindex[(tb, int(kk))], ci] += tv[kk]
                        touched = True
                if touched:
                    rows.append(mat)
            stack = np.vstack(rows) if rows else np.zeros((0, n), dtype=np.int64)
            ns = K.nullspace(stack)
            if ns.shape[1] != 1:
                raise InternalCheckError(
                    f"left projective at {(r, v)} has socle dimension {ns.shape[1]}"
                )
            soc = ns[:, 0]
            weights = set()
            for i in np.nonzero(soc % K.P)[0]:
                b, k = pbasis[int(i)]
                weights.add((b[0], alg.word_start(k)))
            if len(weights) != 1:
                raise InternalCheckError("socle is not weight-homogeneous")
            perm[(r, v)] = weights.pop()
        return perm

    def nakayama_order(self) -> int:
        perm = self.nakayama_permutation()
        order = 1
        for start in perm:
            cur, n = perm[start], 1
            while cur != start:
                cur, n = perm[cur], n + 1
            order = order * n // np.gcd(order, n)
        return int(order)


def tq_algebra(q: Quiver, seed: int = 0) -> TQAlgebra:
    return TQAlgebra(q, seed)


# ---------------------------------------------------------------------------
# block morphisms over the preprojective algebra


class LambdaMorphism:
    """A map between sums of left projectives over the preprojective
    algebra, entries in path coordinates: entry[r][c] lies in the path
    space p1[c] -> p0[r] and acts by right multiplication."""

    def __init__(self, alg: PreprojAlgebra, p1, p0, entries):
        self.alg = alg
        self.p1 = tuple(int(v) for v in p1)
        self.p0 = tuple(int(v) for v in p0)
        ent = np.asarray(entries, dtype=np.int64)
        self.entries = K.reduce_mod(ent.reshape(len(self.p0), len(self.p1), alg.dim))
        for r in range(len(self.p0)):
            for c in range(len(self.p1)):
                vec = self.entries[r, c]
                ok = self.alg.block_indices(self.p1[c], self.p0[r])
                bad = [i for i in np.nonzero(vec % K.P)[0] if int(i) not in ok]
                if bad:
                    raise InternalCheckError("entry outside its path space")

    def source_dim(self) -> int:
        return sum(len(self.alg.module_indices(v)) for v in self.p1)

    def target_dim(self) -> int:
        return sum(len(self.alg.module_indices(v)) for v in self.p0)

    def underlying_matrix(self) -> np.ndarray:
        """The induced linear map on underlying spaces (source basis maps
        through right multiplication by the entries)."""
        alg = self.alg
        src = [(c, k) for c, v in enumerate(self.p1) for k in alg.module_indices(v)]
        tgt = [(r, k) for r, v in enumerate(self.p0) for k in alg.module_indices(v)]
        tindex = {t: i for i, t in enumerate(tgt)}
        M = np.zeros((len(tgt), len(src)), dtype=np.int64)
        for si, (c, k) in enumerate(src):
            zvec = np.zeros(alg.dim, dtype=np.int64)
            zvec[k] = 1
            for r in range(len(self.p0)):
                img = alg.mult(zvec, self.entries[r, c])
                for kk in np.nonzero(img % K.P)[0]:
                    M[tindex[(r, int(kk))], si] += img[kk]
        return K.reduce_mod(M)

    def __repr__(self) -> str:
        return f"LambdaMorphism({list(self.p1)} -> {list(self.p0)})"


def phi_image(label: MprLabel, seed: int = 0) -> LambdaMorphism:
    """Base change of the label's presentation along quiver paths."""
    obj = mp.presentation(label)
    alg = preprojective_algebra(label.quiver, seed)
    ent = np.zeros((len(obj.p0), len(obj.p1), alg.dim), dtype=np.int64)
    for r in range(len(obj.p0)):
        for c in range(len(obj.p1)):
            s = int(obj.mat[r, c]) % K.P
            if s:
                ent[r, c] = K.reduce_mod(s * alg.quiver_path_element(obj.p1[c], obj.p0[r]))
    return LambdaMorphism(alg, obj.p1, obj.p0, ent)


# -- hom pairs --------------------------------------------------------------


def _hom_pair_space(X: LambdaMorphism, Y: LambdaMorphism):
    """Basis of pairs (f1, f0) with f0 x = y f1, as flat coefficient
    vectors over the per-entry path spaces."""
    alg = X.alg
    slots1 = [
        (r, c, i)
        for r in range(len(Y.p1))
        for c in range(len(X.p1))
        for i in alg.block_indices(X.p1[c], Y.p1[r])
    ]
    slots0 = [
        (r, c, i)
        for r in range(len(Y.p0))
        for c in range(len(X.p0))
        for i in alg.block_indices(X.p0[c], Y.p0[r])
    ]
    nvar = len(slots1) + len(slots0)
    rows = []
    for r in range(len(Y.p0)):
        for c in range(len(X.p1)):
            eq = np.zeros((alg.dim, nvar), dtype=np.int64)
            for k, (rr, cc, i) in enumerate(slots0):
                if rr == r:
                    base = np.zeros(alg.dim, dtype=np.int64)
                    base[i] = 1
                    eq[:, len(slots1) + k] += alg.mult(X.entries[cc, c], base)
            for k, (rr, cc, i) in enumerate(slots1):
                if cc == c:
                    base = np.zeros(alg.dim, dtype=np.int64)
                    base[i] = 1
                    eq[:, k] -= alg.mult(base, Y.entries[r, rr])
            rows.append(eq)
    if rows:
        system = K.reduce_mod(np.vstack(rows))
        basis = K.nullspace(system)
    else:
        basis = np.eye(nvar, dtype=np.int64)
    return slots1, slots0, basis


def hom_pair_dim(X: LambdaMorphism, Y: LambdaMorphism) -> int:
    return _hom_pair_space(X, Y)[2].shape[1]


def _pair_matrices(X, Y, slots1, slots0, vec):
    alg = X.alg
    f1 = np.zeros((len(Y.p1), len(X.p1), alg.dim), dtype=np.int64)
    f0 = np.zeros((len(Y.p0), len(X.p0), alg.dim), dtype=np.int64)
    for k, (r, c, i) in enumerate(slots1):
        f1[r, c, i] = vec[k]
    for k, (r, c, i) in enumerate(slots0):
        f0[r, c, i] = vec[len(slots1) + k]
    m1 = LambdaMorphism(alg, X.p1, Y.p1, f1) if f1.size else None
    m0 = LambdaMorphism(alg, X.p0, Y.p0, f0) if f0.size else None
    return m1, m0


def _invertible(m: LambdaMorphism | None, n_src, n_tgt) -> bool:
    if m is None:
        return n_src == 0 and n_tgt == 0
    U = m.underlying_matrix()
    return U.shape[0] == U.shape[1] and K.rank(U) == U.shape[0]


def is_isomorphic(X: LambdaMorphism, Y: LambdaMorphism, seed: int = 0) -> bool:
    if sorted(X.p1) != sorted(Y.p1) or sorted(X.p0) != sorted(Y.p0):
        return False
    slots1, slots0, basis = _hom_pair_space(X, Y)
    if basis.shape[1] == 0:
        return len(X.p1) + len(X.p0) == 0
    rng = np.random.default_rng(seed)
    for _ in range(24):
        vec = K.reduce_mod(basis @ rng.integers(0, K.P, basis.shape[1]))
        f1, f0 = _pair_matrices(X, Y, slots1, slots0, vec)
        ok1 = _invertible(f1, len(X.p1), len(Y.p1)) if len(X.p1) or len(Y.p1) else True
        ok0 = _invertible(f0, len(X.p0), len(Y.p0)) if len(X.p0) or len(Y.p0) else True
        if ok1 and ok0:
            return True
    return False


# -- reduction, splitting, lifting ------------------------------------------


def _unit_component(alg: PreprojAlgebra, vec, v: int) -> int:
    return int(vec[alg.e_index[v]] % K.P)


def _local_inverse(alg: PreprojAlgebra, vec, v: int) -> np.ndarray:
    """Inverse of an element of the local endomorphism ring at v."""
    idx = list(alg.block_indices(v, v))
    A = np.zeros((len(idx), len(idx)), dtype=np.int64)
    for ci, i in enumerate(idx):
        base = np.zeros(alg.dim, dtype=np.int64)
        base[i] = 1
        prod = alg.mult(vec, base)
        for ri, j in enumerate(idx):
            A[ri, ci] = prod[j]
    rhs = np.zeros(len(idx), dtype=np.int64)
    rhs[idx.index(alg.e_index[v])] = 1
    sol = K.solve(A, rhs)
    if sol is None:
        raise InternalCheckError("local element is not invertible")
    out = np.zeros(alg.dim, dtype=np.int64)
    for ci, i in enumerate(idx):
        out[i] = sol[ci]
    if not np.array_equal(alg.mult(vec, out), alg.unit(v)):
        raise InternalCheckError("local inverse failed")
    return out


def strip_identity_summands(f: LambdaMorphism):
    """Split off all invertible-pivot summands; returns the reduced
    morphism and the vertices of the removed identity objects."""
    alg = f.alg
    p1, p0 = list(f.p1), list(f.p0)
    ent = f.entries.copy()
    stripped = []
    while True:
        pivot = None
        for r in range(len(p0)):
            for c in range(len(p1)):
                if p1[c] == p0[r] and _unit_component(alg, ent[r, c], p1[c]):
                    pivot = (r, c)
                    break
            if pivot:
                break
        if pivot is None:
            break
        r0, c0 = pivot
        v = p1[c0]
        minv = _local_inverse(alg, ent[r0, c0], v)
        # clear the pivot row via source column operations
        for c in range(len(p1)):
            if c == c0 or not np.any(ent[r0, c] % K.P):
                continue
            coef = alg.mult(ent[r0, c], minv)  # p1[c] -> v
            for r in range(len(p0)):
                ent[r, c] = K.reduce_mod(ent[r, c] - alg.mult(coef, ent[r, c0]))
        # clear the pivot column via target row operations
        for r in range(len(p0)):
            if r == r0 or not np.any(ent[r, c0] % K.P):
                continue
            coef = alg.mult(minv, ent[r, c0])  # v -> p0[r]
            for c in range(len(p1)):
                ent[r, c] = K.reduce_mod(ent[r, c] - alg.mult(ent[r0, c], coef))
        stripped.append(v)
        ent = np.delete(np.delete(ent, r0, axis=0), c0, axis=1)
        del p0[r0], p1[c0]
    return LambdaMorphism(alg, p1, p0, ent), tuple(sorted(stripped))


def _end_pair_algebra(X: LambdaMorphism):
    slots1, slots0, basis = _hom_pair_space(X, X)
    n = basis.shape[1]
    pairs = [_pair_matrices(X, X, slots1, slots0, basis[:, k]) for k in range(n)]
    mats = []
    d1, d0 = X.source_dim(), X.target_dim()
    for (f1, f0) in pairs:
        U1 = f1.underlying_matrix() if f1 is not None else np.zeros((d1, d1), dtype=np.int64)
        U0 = f0.underlying_matrix() if f0 is not None else np.zeros((d0, d0), dtype=np.int64)
        M = np.zeros((d1 + d0, d1 + d0), dtype=np.int64)
        M[:d1, :d1] = U1
        M[d1:, d1:] = U0
        mats.append(M)
    return mats


def _end_corank(X: LambdaMorphism) -> int:
    """Dimension of the semisimple quotient of the endomorphism ring: the
    trace form of the action kills exactly the radical (the working prime
    exceeds every dimension in sight)."""
    mats = _end_pair_algebra(X)
    n = len(mats)
    if n == 0:
        return 0
    G = np.zeros((n, n), dtype=np.int64)
    for a in range(n):
        for b in range(n):
            G[a, b] = int(np.trace(K.matmul(mats[a], mats[b])) % K.P)
    return K.rank(G)


def is_indecomposable(X: LambdaMorphism) -> bool:
    return _end_corank(X) == 1


def _split_projective_submodule(alg: PreprojAlgebra, labels, proj_mat):
    """Given an idempotent endomorphism of a sum of left projectives,
    realign its image as a sum of projectives: returns (new labels,
    generators as underlying vectors, inclusion basis)."""
    basis_slots = [(c, k) for c, v in enumerate(labels) for k in alg.module_indices(v)]
    img = K.rref(proj_mat.T)[0]
    img = img[np.any(img % K.P, axis=1)]
    W = img  # rows span the image
    if W.shape[0] == 0:
        return (), [], basis_slots
    # left action of radical generators on the ambient space
    def left_mult_matrix(z):
        M = np.zeros((len(basis_slots), len(basis_slots)), dtype=np.int64)
        for ci, (c, k) in enumerate(basis_slots):
            base = np.zeros(alg.dim, dtype=np.int64)
            base[k] = 1
            out = alg.mult(z, base)
            for kk in np.nonzero(out % K.P)[0]:
                M[basis_slots.index((c, int(kk))), ci] += out[kk]
        return K.reduce_mod(M)

    rad_elems = []
    for i in range(alg.dim):
        if alg.word_degree[alg.basis[i]] > 0:
            z = np.zeros(alg.dim, dtype=np.int64)
            z[i] = 1
            rad_elems.append(z)
    JW_rows = [K.matmul(W, left_mult_matrix(z).T) for z in rad_elems]
    JW = np.vstack(JW_rows) if JW_rows else np.zeros((0, W.shape[1]), dtype=np.int64)
    # generators: weight components of the image that are new modulo the
    # radical part (weight projections of a submodule stay inside it)
    gens = []
    new_labels = []
    current = JW.copy()
    for v in alg.quiver.vertices:
        wmask = np.array([alg.word_start(k) == v for (c, k) in basis_slots])
        proj = np.zeros_like(W)
        proj[:, wmask] = W[:, wmask]
        for row in proj:
            if not np.any(row % K.P) or K.row_space_contains(current, row):
                continue
            gens.append(row)
            new_labels.append(v)
            current = np.vstack([current, row.reshape(1, -1)])
    if K.rank(current) != K.rank(np.vstack([JW, W]) if JW.shape[0] else W):
        raise InternalCheckError("generators do not span the image submodule")
    return tuple(new_labels), gens, basis_slots


def _express_in_generators(alg, labels, gens, basis_slots, target_vec):
    """Solve target = sum_j z_j . gen_j with z_j in the left projective at
    labels[j]; returns the per-generator algebra coefficients."""
    cols = []
    keys = []
    for j, v in enumerate(labels):
        for k in alg.module_indices(v):
            z = np.zeros(alg.dim, dtype=np.int64)
            z[k] = 1
            vec = np.zeros(len(basis_slots), dtype=np.int64)
            base = gens[j]
            # z acting on the generator: left multiplication componentwise
            for ci, (c, kk) in enumerate(basis_slots):
                if base[ci] % K.P:
                    unit = np.zeros(alg.dim, dtype=np.int64)
                    unit[kk] = 1
                    out = alg.mult(z, unit) * base[ci]
                    for k2 in np.nonzero(out % K.P)[0]:
                        vec[basis_slots.index((c, int(k2)))] += out[k2]
            cols.append(K.reduce_mod(vec))
            keys.append((j, k))
    A = np.array(cols, dtype=np.int64).T if cols else np.zeros((len(basis_slots), 0), dtype=np.int64)
    sol = K.solve(A, K.reduce_mod(target_vec))
    if sol is None:
        raise InternalCheckError("target does not lie in the generated submodule")
    out = [np.zeros(alg.dim, dtype=np.int64) for _ in labels]
    for t, (j, k) in enumerate(keys):
        out[j][k] = sol[t]
    return out


def _charpoly_modp(M: np.ndarray) -> list[int]:
    """Characteristic polynomial coefficients (monic, highest first) over
    the working prime field, by Newton's identities on power-sum traces."""
    n = M.shape[0]
    s = [0] * (n + 1)
    Mk = np.eye(n, dtype=np.int64)
    for k in range(1, n + 1):
        Mk = K.matmul(Mk, M)
        s[k] = int(np.trace(Mk) % K.P)
    c = [1] + [0] * n
    for k in range(1, n + 1):
        acc = s[k]
        for i in range(1, k):
            acc += c[i] * s[k - i]
        c[k] = (-acc * K.inv_mod(k)) % K.P
    return c


def split_summands(X: LambdaMorphism, seed: int = 0) -> list[LambdaMorphism]:
    """Fitting decomposition via eigen-projectors of random endomorphism
    pairs, recursing until every piece has local endomorphism ring."""
    if len(X.p1) + len(X.p0) == 0:
        return []
    if is_indecomposable(X):
        return [X]
    import sympy

    slots1, slots0, basis = _hom_pair_space(X, X)
    rng = np.random.default_rng(seed)
    d1 = X.source_dim()
    x = sympy.Symbol("x")
    for trial in range(40):
        vec = K.reduce_mod(basis @ rng.integers(0, K.P, basis.shape[1]))
        f1, f0 = _pair_matrices(X, X, slots1, slots0, vec)
        U1 = f1.underlying_matrix() if f1 is not None else np.zeros((0, 0), dtype=np.int64)
        U0 = f0.underlying_matrix() if f0 is not None else np.zeros((0, 0), dtype=np.int64)
        M = np.zeros((U1.shape[0] + U0.shape[0],) * 2, dtype=np.int64)
        M[:U1.shape[0], :U1.shape[0]] = U1
        M[U1.shape[0]:, U1.shape[0]:] = U0
        poly = sympy.Poly(_charpoly_modp(M), x, modulus=K.P)
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")  # sympy sorts GF coefficients
            factors = sympy.factor_list(poly.as_expr(), modulus=K.P)[1]
        if len(factors) < 2:
            continue
        # idempotent projector onto the first primary component
        f_first, m_first = factors[0]
        g1 = sympy.Poly(f_first ** m_first, x, modulus=K.P)
        g2 = sympy.Poly(sympy.prod([f ** m for f, m in factors[1:]]), x, modulus=K.P)
        a, b, g = g1.gcdex(g2)
        if g.degree() != 0:
            raise InternalCheckError("primary factors are not coprime")
        # a*g1 + b*g2 = g (unit); projector = (b*g2/g)(M)
        proj_poly = (b * g2) * K.inv_mod(int(g.LC()) % K.P)
        coeffs = [int(cf) % K.P for cf in proj_poly.all_coeffs()]
        E = np.zeros_like(M)
        for cf in coeffs:
            E = K.reduce_mod(K.matmul(E, M))
            E[np.diag_indices_from(E)] = (E.diagonal() + cf) % K.P
        if not np.array_equal(K.matmul(E, E), E):
            continue
        if not np.any(E % K.P) or np.array_equal(E % K.P, np.eye(E.shape[0], dtype=np.int64) % K.P):
            continue
        pieces = []
        for proj in (E, (np.eye(E.shape[0], dtype=np.int64) - E) % K.P):
            piece = _restrict_to_image(X, proj[:d1, :d1], proj[d1:, d1:])
            pieces.extend(split_summands(piece, seed + trial + 1))
        if sum(p.source_dim() for p in pieces) != X.source_dim() or sum(
            p.target_dim() for p in pieces
        ) != X.target_dim():
            raise InternalCheckError("split lost dimensions")
        return pieces
    raise InternalCheckError("no splitting endomorphism found for a decomposable object")


def _restrict_to_image(X: LambdaMorphism, proj1, proj0) -> LambdaMorphism:
    alg = X.alg
    lab1, gens1, slots_src = _split_projective_submodule(alg, X.p1, proj1)
    lab0, gens0, slots_tgt = _split_projective_submodule(alg, X.p0, proj0)
    Umap = X.underlying_matrix()
    ent = np.zeros((len(lab0), len(lab1), alg.dim), dtype=np.int64)
    for c, g in enumerate(gens1):
        img = K.matmul(Umap, g.reshape(-1, 1)).ravel()
        if not np.any(img % K.P):
            continue
        coeffs = _express_in_generators(alg, lab0, gens0, slots_tgt, img)
        for r, z in enumerate(coeffs):
            ent[r, c] = z
    return LambdaMorphism(alg, lab1, lab0, ent)


@dataclasses.dataclass(frozen=True)
class Conflation:
    """Universal two-term witness: the object sits between the trivial
    presentations of its target summands and the kill objects of its
    source summands."""

    sub: tuple[MprLabel, ...]
    quot: tuple[MprLabel, ...]


@dataclasses.dataclass(frozen=True)
class HiggsLift:
    labels: tuple[MprLabel, ...]
    unresolved: tuple[Conflation, ...]


@functools.cache
def _phi_table(q: Quiver, seed: int = 0):
    return tuple((lab, phi_image(lab, seed)) for lab in mp.mpr_indecomposables(q))


_REP_FINITE = {"A1", "A2", "A3", "A4"}


def lift_morphism(f: LambdaMorphism, seed: int = 0) -> HiggsLift:
    """Partial inverse of the embedding: identity summands come back as
    identity-object labels, remaining indecomposable pieces are matched
    against the label table, and anything unmatched is witnessed by its
    universal conflation."""
    q = f.alg.quiver
    if str(q.dtype) not in _REP_FINITE:
        raise GuardError(
            f"lifting needs a representation-finite loop algebra "
            f"({sorted(_REP_FINITE)}), not {q.dtype}"
        )
    reduced, stripped = strip_identity_summands(f)
    labels = [MprLabel(q, "dzero", v) for v in stripped]
    unresolved = []
    for piece in split_summands(reduced, seed):
        match = None
        for lab, img in _phi_table(q, seed):
            if is_isomorphic(piece, img, seed):
                match = lab
                break
        if match is not None:
            labels.append(match)
        else:
            unresolved.append(
                Conflation(
                    sub=tuple(MprLabel(q, "mod", v, 0) for v in piece.p0),
                    quot=tuple(MprLabel(q, "done", v) for v in piece.p1),
                )
            )
    return HiggsLift(tuple(labels), tuple(unresolved))


def direct_sum(alg: PreprojAlgebra, pieces) -> LambdaMorphism:
    p1 = [v for m in pieces for v in m.p1]
    p0 = [v for m in pieces for v in m.p0]
    ent = np.zeros((len(p0), len(p1), alg.dim), dtype=np.int64)
    r_off = c_off = 0
    for m in pieces:
        nr, nc = len(m.p0), len(m.p1)
        ent[r_off : r_off + nr, c_off : c_off + nc] = m.entries
        r_off += nr
        c_off += nc
    return LambdaMorphism(alg, p1, p0, ent)


def realize_lift(q: Quiver, lift: HiggsLift, seed: int = 0) -> LambdaMorphism:
    """Image of a lifted object back in the morphism category: labelled
    summands map through the embedding, conflation witnesses through a
    generic (seeded) radical extension class of their two-term shape."""
    alg = preprojective_algebra(q, seed)
    rng = np.random.default_rng(seed + 7)
    pieces = [phi_image(lab, seed) for lab in lift.labels]
    for conf in lift.unresolved:
        p1 = tuple(lab.vertex for lab in conf.quot)
        p0 = tuple(lab.vertex for lab in conf.sub)
        ent = np.zeros((len(p0), len(p1), alg.dim), dtype=np.int64)
        for r in range(len(p0)):
            for c in range(len(p1)):
                for i in alg.block_indices(p1[c], p0[r]):
                    if alg.word_degree[alg.basis[i]] == 0:
                        continue  # stay inside the radical
                    ent[r, c, i] = int(rng.integers(1, K.P))
        pieces.append(LambdaMorphism(alg, p1, p0, ent))
    return direct_sum(alg, pieces)


# ---------------------------------------------------------------------------
# the rotation on frozen labels


def omega_action(label: MprLabel) -> MprLabel:
    """Rotation of the frozen labels: kill -> identity -> trivial
    presentation -> kill at the involuted vertex."""
    q = label.quiver
    if label.kind == "done":
        return MprLabel(q, "dzero", label.vertex)
    if label.kind == "dzero":
        return MprLabel(q, "mod", label.vertex, 0)
    if label.kind == "mod" and label.power == 0:
        return MprLabel(q, "done", nakayama_involution(q)[label.vertex])
    raise GuardError(f"{label} is not frozen; the rotation acts on frozen labels only")


def omega_orbit(label: MprLabel) -> list[MprLabel]:
    orbit = [label]
    cur = omega_action(label)
    while cur != label:
        orbit.append(cur)
        cur = omega_action(cur)
    return orbit


def omega_order(q: Quiver) -> int:
    order = 1
    for v in q.vertices:
        for kind in ("mod", "dzero", "done"):
            n = len(omega_orbit(MprLabel(q, kind, v)))
            order = order * n // np.gcd(order, n)
    return int(order)
