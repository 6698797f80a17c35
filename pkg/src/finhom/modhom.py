"""Right modules over an FDAlgebra: Hom/Ext, minimal resolutions and
coresolutions, syzygies, Loewy data, AR translates, endomorphism algebras
and per-module dimension profiles.

Modules are stored as vertex spaces (row-vector convention: elements are
rows, the action of an algebra element is right multiplication by its
matrix) plus one matrix per arrow generator of the algebra.
"""

import random

from .algcore import Arrow, FDAlgebra, opposite
from .errors import (
    DuplicateSummand,
    FinhomError,
    IsoIndeterminate,
    NotIndecomposable,
)
from .exactlin import CoordSpan, Echelon, ExactMatrix


class Infinite:
    """Marker for infinite dimension values (domdim of projective-injectives)."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "infinite"


INF = Infinite()


class Inconclusive:
    """Value not decided within the cap; carries the bound that was reached."""

    __slots__ = ("cap",)

    def __init__(self, cap):
        self.cap = cap

    def __repr__(self):
        return f"inconclusive(cap={self.cap})"

    def __eq__(self, other):
        return isinstance(other, Inconclusive) and self.cap == other.cap

    def __hash__(self):
        return hash(("inconclusive", self.cap))


def dim_ge(a, b):
    """a >= b where a, b are ints or INF (INF greater than everything)."""
    if a is INF:
        return True
    if b is INF:
        return False
    return a >= b


def op_algebra(alg):
    """Structural opposite, cached symmetrically."""
    got = alg.cache.get("op")
    if got is None:
        got = _structural_opposite(alg)
        alg.cache["op"] = got
        got.cache["op"] = alg
    return got


def _structural_opposite(alg):
    flipped = [(y, x) for (x, y) in alg.pairs]

    def mult_fn(i, j):
        return alg.mult(j, i)

    return FDAlgebra(
        alg.field,
        labels=list(alg.labels),
        pairs=flipped,
        vertex_labels=list(alg.vertex_labels),
        mult_fn=mult_fn,
        degrees=alg.degrees,
        check=False,
    )


class FDModule:
    """A right module: dims per vertex and one matrix per arrow generator."""

    __slots__ = ("alg", "dims", "act", "degrees", "cache")

    def __init__(self, alg, dims, act, degrees=None):
        self.alg = alg
        self.dims = list(dims)
        self.act = list(act)
        self.degrees = degrees  # optional list of per-vertex degree lists
        self.cache = {}
        arrows = alg.arrows()
        if len(self.act) != len(arrows):
            raise FinhomError("one action matrix per arrow required")
        for ar, m in zip(arrows, self.act):
            if (m.nrows, m.ncols) != (self.dims[ar.src], self.dims[ar.tgt]):
                raise FinhomError(f"action matrix shape mismatch for {ar.label}")

    # -- basics ----------------------------------------------------------------

    @property
    def total_dim(self):
        return sum(self.dims)

    def is_zero(self):
        return self.total_dim == 0

    def offsets(self):
        got = self.cache.get("offsets")
        if got is None:
            got = []
            acc = 0
            for d in self.dims:
                got.append(acc)
                acc += d
            self.cache["offsets"] = got
        return got

    @staticmethod
    def zero(alg):
        act = [ExactMatrix(alg.field, [], 0) for _ in alg.arrows()]
        return FDModule(alg, [0] * alg.nvert, act)

    def dim_vector(self):
        return tuple(self.dims)

    # -- path / element actions --------------------------------------------------

    def action_of_word(self, word, src):
        """Matrix of the path given by arrow indices `word` starting at vertex src."""
        F = self.alg.field
        arrows = self.alg.arrows()
        m = ExactMatrix.identity(F, self.dims[src])
        v = src
        for a in word:
            m = m.mul(self.act[a])
            v = arrows[a].tgt
        return m

    def action_of_basis(self, i):
        """Matrix of the basis element i of the algebra (cached)."""
        got = self.cache.get(("basact", i))
        if got is not None:
            return got
        F = self.alg.field
        (x, y) = self.alg.pairs[i]
        out = ExactMatrix.zeros(F, self.dims[x], self.dims[y])
        for coeff, word in _path_expressions(self.alg)[i]:
            m = self.action_of_word(word, x)
            out = out.add_(m.scale(coeff))
        self.cache[("basact", i)] = out
        return out

    def action_of_element(self, vec, x, y):
        """Matrix of an element vector supported in e_x A e_y."""
        F = self.alg.field
        out = ExactMatrix.zeros(F, self.dims[x], self.dims[y])
        for i, c in enumerate(vec):
            if c and self.alg.pairs[i] == (x, y):
                out = out.add_(self.action_of_basis(i).scale(c))
        return out

    # -- structure -----------------------------------------------------------------

    def radical_span(self):
        """Per-vertex echelons of M.rad (cached)."""
        got = self.cache.get("radspan")
        if got is None:
            F = self.alg.field
            got = [Echelon(F, d) for d in self.dims]
            for ar, m in zip(self.alg.arrows(), self.act):
                for row in m.rows:
                    got[ar.tgt].insert(row)
            self.cache["radspan"] = got
        return got

    def top_dims(self):
        rs = self.radical_span()
        return [d - e.dim for d, e in zip(self.dims, rs)]

    def radical_series(self):
        """List of per-vertex dimension vectors of M rad^k, k = 0, 1, ..."""
        F = self.alg.field
        series = [list(self.dims)]
        # spanning rows of current power, per vertex
        cur = {x: [r for r in ExactMatrix.identity(F, self.dims[x]).rows] for x in range(len(self.dims))}
        while True:
            nxt = {x: Echelon(F, self.dims[x]) for x in range(len(self.dims))}
            for ar, m in zip(self.alg.arrows(), self.act):
                for row in cur[ar.src]:
                    if any(row):
                        nxt[ar.tgt].insert(ExactMatrix(F, [row], self.dims[ar.src]).mul(m).rows[0])
            dims = [nxt[x].dim for x in range(len(self.dims))]
            series.append(dims)
            if sum(dims) == 0:
                break
            cur = {x: [r[:] for r in nxt[x].rows] for x in range(len(self.dims))}
        return series

    def loewy_length(self):
        series = self.radical_series()
        for k, dims in enumerate(series):
            if sum(dims) == 0:
                return k
        return len(series)

    def socle_dims(self):
        """Per-vertex dims of soc M = {m : m rad = 0}."""
        F = self.alg.field
        out = []
        for x in range(len(self.dims)):
            mats = [m for ar, m in zip(self.alg.arrows(), self.act) if ar.src == x]
            if not mats or self.dims[x] == 0:
                out.append(self.dims[x])
                continue
            cols = sum(m.ncols for m in mats)
            rows = []
            for i in range(self.dims[x]):
                row = []
                for m in mats:
                    row.extend(m.rows[i])
                rows.append(row)
            stacked = ExactMatrix(F, rows, cols)
            out.append(len(stacked.left_kernel_basis()))
        return out

    def radical_layers(self):
        """Multiset of simple labels per radical layer: list of vertex-dim lists."""
        series = self.radical_series()
        layers = []
        for k in range(len(series) - 1):
            layer = [a - b for a, b in zip(series[k], series[k + 1])]
            if sum(layer) == 0:
                break
            layers.append(layer)
        return layers

    def __repr__(self):
        return f"FDModule(dims={self.dims})"


def _path_expressions(alg):
    """Per basis element: expression as sum of coeff * arrow-words (cached).

    For presented algebras the basis is already a path basis; otherwise a
    length-lex scan expresses every basis element through the arrow lifts.
    """
    got = alg.cache.get("path_expr")
    if got is not None:
        return got
    F = alg.field
    arrows = alg.arrows()
    out = None
    if alg.presentation is not None and alg.gb is not None:
        out = []
        for p in alg.labels:
            out.append([(F.one, p.arrows)])
    else:
        import heapq

        arrows_from = {}
        for a_idx, ar in enumerate(arrows):
            arrows_from.setdefault(ar.src, []).append(a_idx)
        span = CoordSpan(F, alg.dim)
        words = []
        heap = []
        counter = 0
        for x in range(alg.nvert):
            heapq.heappush(heap, ((0, (), x), counter, (x, ()), alg.unit_vec(x)))
            counter += 1
        while heap and span.dim < alg.dim:
            _, _, (start, word), vec = heapq.heappop(heap)
            if span.insert(vec):
                words.append((start, word, vec))
                end = arrows[word[-1]].tgt if word else start
                for a_idx in arrows_from.get(end, []):
                    w = alg.multiply(vec, arrows[a_idx].vec)
                    if any(w):
                        nw = word + (a_idx,)
                        heapq.heappush(heap, ((len(nw), nw, start), counter, (start, nw), w))
                        counter += 1
        if span.dim != alg.dim:
            raise FinhomError("arrow lifts do not generate the algebra")
        out = []
        for i in range(alg.dim):
            coords = span.coords(alg.unit_vec(i))
            expr = [(c, words[t][1]) for t, c in enumerate(coords) if c]
            out.append(expr)
    alg.cache["path_expr"] = out
    return out


# -- standard modules ---------------------------------------------------------


def standard_module(alg, kind, vertex_label):
    """P_x = e_x A, I_x = D(A e_x), or the simple S_x."""
    x = alg.vertex_index[vertex_label]
    key = ("standard", kind, x)
    got = alg.cache.get(key)
    if got is not None:
        return got
    F = alg.field
    if kind == "simple":
        dims = [0] * alg.nvert
        dims[x] = 1
        act = []
        for ar in alg.arrows():
            act.append(ExactMatrix.zeros(F, dims[ar.src], dims[ar.tgt]))
        mod = FDModule(alg, dims, act)
    elif kind == "proj":
        dims = [len(alg.block(x, y)) for y in range(alg.nvert)]
        act = []
        for ar in alg.arrows():
            act.append(
                alg.right_mult_matrix(alg.block(x, ar.src), ar.vec, alg.block(x, ar.tgt))
            )
        mod = FDModule(alg, dims, act)
        if alg.degrees is not None:
            mod.degrees = [[alg.degrees[i] for i in alg.block(x, y)] for y in range(alg.nvert)]
    elif kind == "inj":
        mod = dual_module(standard_module(op_algebra(alg), "proj", vertex_label))
    else:
        raise FinhomError(f"unknown standard module kind {kind!r}")
    alg.cache[key] = mod
    return mod


def direct_sum(alg, summands):
    """Direct sum with flat per-vertex coordinates in summand order."""
    F = alg.field
    if not summands:
        return FDModule.zero(alg)
    dims = [sum(m.dims[x] for m in summands) for x in range(alg.nvert)]
    act = []
    for a_idx, ar in enumerate(alg.arrows()):
        rows = []
        for k, m in enumerate(summands):
            block = m.act[a_idx]
            for i in range(block.nrows):
                row = []
                for kk, mm in enumerate(summands):
                    if kk == k:
                        row.extend(block.rows[i])
                    else:
                        row.extend([F.zero] * mm.dims[ar.tgt])
                rows.append(row)
        act.append(ExactMatrix(F, rows, dims[ar.tgt]))
    return FDModule(alg, dims, act)


def dual_module(mod):
    """D(M): right module over the opposite algebra (transposed actions)."""
    alg = mod.alg
    op = op_algebra(alg)
    ops = op.arrows()
    mine = alg.arrows()
    if len(ops) != len(mine):
        raise FinhomError("arrow mismatch between algebra and its opposite")
    act = []
    for oar, ar, m in zip(ops, mine, mod.act):
        if (oar.src, oar.tgt) != (ar.tgt, ar.src):
            raise FinhomError("opposite arrow order mismatch")
        act.append(m.transpose())
    return FDModule(op, list(mod.dims), act)


# -- module homomorphisms -----------------------------------------------------


class ModuleHom:
    """A homomorphism f: X -> Y as one matrix per vertex (row convention)."""

    __slots__ = ("src", "tgt", "blocks")

    def __init__(self, src, tgt, blocks):
        self.src = src
        self.tgt = tgt
        self.blocks = list(blocks)

    def then(self, other):
        """self followed by other (left-to-right composition)."""
        return ModuleHom(
            self.src, other.tgt, [a.mul(b) for a, b in zip(self.blocks, other.blocks)]
        )

    def flat(self):
        out = []
        for b in self.blocks:
            for row in b.rows:
                out.extend(row)
        return out

    def is_zero(self):
        return all(b.is_zero() for b in self.blocks)

    def is_iso(self):
        for x, b in enumerate(self.blocks):
            if b.nrows != b.ncols:
                return False
            if b.nrows and b.rank() != b.nrows:
                return False
        return True

    def scale(self, c):
        return ModuleHom(self.src, self.tgt, [b.scale(c) for b in self.blocks])

    def add(self, other):
        return ModuleHom(self.src, self.tgt, [a.add_(b) for a, b in zip(self.blocks, other.blocks)])


def hom_basis(X, Y):
    """Canonical basis of Hom_A(X, Y) via the intertwining linear system."""
    key = ("hom", id(Y))
    got = X.cache.get(key)
    if got is not None and got[0] is Y:
        return got[1]
    alg = X.alg
    if alg is not Y.alg:
        raise FinhomError("modules over different algebras")
    F = alg.field
    nv = alg.nvert
    sizes = [X.dims[x] * Y.dims[x] for x in range(nv)]
    offs = []
    acc = 0
    for s in sizes:
        offs.append(acc)
        acc += s
    total = acc

    def var(x, i, j):
        return offs[x] + i * Y.dims[x] + j

    rows = []
    for ar_idx, ar in enumerate(alg.arrows()):
        s, t = ar.src, ar.tgt
        AX = X.act[ar_idx]
        AY = Y.act[ar_idx]
        # rho_X(a) f_t = f_s rho_Y(a): one equation per (i in X_s, j in Y_t)
        for i in range(X.dims[s]):
            for j in range(Y.dims[t]):
                row = [F.zero] * total
                for k in range(X.dims[t]):
                    c = AX.rows[i][k]
                    if c:
                        row[var(t, k, j)] = F.add(row[var(t, k, j)], c)
                for l in range(Y.dims[s]):
                    c = AY.rows[l][j]
                    if c:
                        row[var(s, i, l)] = F.sub(row[var(s, i, l)], c)
                if any(row):
                    rows.append(row)
    if rows:
        ker = ExactMatrix(F, rows, total).kernel_basis()
    else:
        ker = ExactMatrix.identity(F, total).rows if total else []
    basis = []
    for v in ker:
        blocks = []
        for x in range(nv):
            rows_x = []
            for i in range(X.dims[x]):
                rows_x.append(v[offs[x] + i * Y.dims[x] : offs[x] + (i + 1) * Y.dims[x]])
            blocks.append(ExactMatrix(F, rows_x, Y.dims[x]))
        basis.append(ModuleHom(X, Y, blocks))
    X.cache[key] = (Y, basis)
    return basis


def hom_dim(X, Y):
    return len(hom_basis(X, Y))


def identity_hom(X):
    return ModuleHom(X, X, [ExactMatrix.identity(X.alg.field, d) for d in X.dims])


def hom_coords_span(homs):
    """CoordSpan able to express a hom in terms of the given list."""
    if not homs:
        return None
    F = homs[0].src.alg.field
    width = len(homs[0].flat())
    span = CoordSpan(F, width)
    for h in homs:
        span.insert(h.flat())
    return span


# -- submodules and quotients --------------------------------------------------


def submodule(parent, seed_rows):
    """Submodule generated by per-vertex row vectors; returns (module, bases).

    bases[x] is the list of rows (in parent coordinates) chosen as the
    canonical basis of the submodule at vertex x.
    """
    alg = parent.alg
    F = alg.field
    nv = alg.nvert
    spans = [CoordSpan(F, parent.dims[x]) for x in range(nv)]
    vecs = [[] for _ in range(nv)]
    queue = []
    for x, rows in seed_rows.items():
        for r in rows:
            if any(r) and spans[x].insert(r):
                vecs[x].append(list(r))
                queue.append((x, list(r)))
    while queue:
        x, r = queue.pop()
        for ar_idx, ar in enumerate(alg.arrows()):
            if ar.src != x:
                continue
            w = ExactMatrix(F, [r], parent.dims[x]).mul(parent.act[ar_idx]).rows[0]
            if any(w) and spans[ar.tgt].insert(w):
                vecs[ar.tgt].append(w)
                queue.append((ar.tgt, w))
    dims = [len(vecs[x]) for x in range(nv)]
    act = []
    for ar_idx, ar in enumerate(alg.arrows()):
        rows = []
        for r in vecs[ar.src]:
            w = ExactMatrix(F, [r], parent.dims[ar.src]).mul(parent.act[ar_idx]).rows[0]
            coords = spans[ar.tgt].coords(w)
            if coords is None:
                raise FinhomError("submodule closure failure")
            rows.append(coords)
        act.append(ExactMatrix(F, rows, dims[ar.tgt]))
    return FDModule(alg, dims, act), vecs


def quotient_module(parent, sub_rows):
    """Quotient of parent by the span of sub_rows (per-vertex row lists).

    Returns (module, projections) with projections[x] the dims[x]-column
    matrix sending parent coordinates to quotient coordinates.
    """
    alg = parent.alg
    F = alg.field
    nv = alg.nvert
    spans = []
    reps = []  # representative unit indices per vertex
    for x in range(nv):
        span = CoordSpan(F, parent.dims[x])
        for r in sub_rows.get(x, []):
            span.insert(r)
        nbase = span.dim
        keep = []
        for i in range(parent.dims[x]):
            unit = [F.zero] * parent.dims[x]
            unit[i] = F.one
            if span.insert(unit):
                keep.append(i)
        spans.append((span, nbase, keep))
        reps.append(keep)
    dims = [len(r) for r in reps]

    def project(x, vec):
        span, nbase, keep = spans[x]
        coords = span.coords(vec)
        if coords is None:
            raise FinhomError("projection failure")
        return coords[nbase:]

    projections = []
    for x in range(nv):
        rows = []
        for i in range(parent.dims[x]):
            unit = [F.zero] * parent.dims[x]
            unit[i] = F.one
            rows.append(project(x, unit))
        projections.append(ExactMatrix(F, rows, dims[x]))
    act = []
    for ar_idx, ar in enumerate(alg.arrows()):
        rows = []
        for i in reps[ar.src]:
            unit = [F.zero] * parent.dims[ar.src]
            unit[i] = F.one
            w = ExactMatrix(F, [unit], parent.dims[ar.src]).mul(parent.act[ar_idx]).rows[0]
            rows.append(project(ar.tgt, w))
        act.append(ExactMatrix(F, rows, dims[ar.tgt]))
    return FDModule(alg, dims, act), projections


# -- minimal resolutions ---------------------------------------------------------


def _left_kernel_with_frees(mat):
    """Canonical basis of {v : v M = 0} plus the free positions.

    Basis vectors carry an identity pattern at the free positions, so the
    coordinates of any member are read off directly.
    """
    t = mat.transpose()
    R, pivots = t.rref()
    pivset = set(pivots)
    F = mat.field
    frees = [j for j in range(mat.nrows) if j not in pivset]
    basis = []
    for f in frees:
        v = [F.zero] * mat.nrows
        v[f] = F.one
        for r, pc in enumerate(pivots):
            e = R.rows[r][f]
            if e:
                v[pc] = F.neg(e)
        basis.append(v)
    return basis, frees


class MinProjResolution:
    """Lazily extended minimal projective resolution of a module."""

    def __init__(self, X):
        self.X = X
        self.alg = X.alg
        self.terms = []        # list of stages: each a list of vertex indices
        self.conn = []         # conn[i]: entries a[k][j] for d_{i+1}: P_{i+1} -> P_i
        self.cover_vectors = None  # stage-0 generator vectors inside X
        self.syzygies = []     # syzygy module after each stage
        self.finished = False
        self._cur = X

    def extend(self, upto):
        """Ensure stages 0..upto exist (or the resolution is finished)."""
        while not self.finished and len(self.terms) <= upto:
            self._step()

    def _step(self):
        alg = self.alg
        F = alg.field
        M = self._cur
        if M.is_zero():
            self.finished = True
            return
        rad = M.radical_span()
        gens = []  # (vertex, vector in M coords)
        for x in range(alg.nvert):
            probe = CoordSpan(F, M.dims[x])
            for row in rad[x].rows:
                probe.insert(row)
            for i in range(M.dims[x]):
                unit = [F.zero] * M.dims[x]
                unit[i] = F.one
                if probe.insert(unit):
                    gens.append((x, unit))
        stage = len(self.terms)
        self.terms.append([x for (x, _) in gens])
        if stage == 0:
            self.cover_vectors = gens
        else:
            # express the generators (vectors in the previous kernel module's
            # coordinates) as algebra elements over the previous stage's term
            kern_rows, prev_term = self._kern_embed
            a = [[None] * len(gens) for _ in prev_term]
            for j, (y, vec) in enumerate(gens):
                w = self._embed_kernel_vector(kern_rows, y, vec)
                # w lives in P_{stage-1} coords at vertex y: split by summand
                for k, xk in enumerate(prev_term):
                    elt = alg.zero_vec()
                    blk = alg.block(xk, y)
                    off = self._prev_offsets[k][y]
                    for t, bidx in enumerate(blk):
                        c = w[off + t]
                        if c:
                            elt[bidx] = F.add(elt[bidx], c)
                    a[k][j] = elt
            self.conn.append(a)
        # build P and the cover map, then take the kernel
        term = self.terms[-1]
        projs = [standard_module(alg, "proj", alg.vertex_labels[x]) for x in term]
        P = direct_sum(alg, projs)
        # offsets of each summand inside P per vertex
        offsets = []
        acc = [0] * alg.nvert
        for x, pm in zip(term, projs):
            offsets.append(list(acc))
            for y in range(alg.nvert):
                acc[y] += pm.dims[y]
        # cover matrices per vertex
        cover = []
        for y in range(alg.nvert):
            rows = []
            for k, xk in enumerate(term):
                vsrc = gens[k][1]
                for bidx in alg.block(xk, y):
                    mat = M.action_of_basis(bidx)
                    rows.append(ExactMatrix(F, [vsrc], M.dims[xk]).mul(mat).rows[0])
            cover.append(ExactMatrix(F, rows, M.dims[y]) if rows else ExactMatrix(F, [], M.dims[y]))
        # kernel per vertex with canonical free positions
        kern_rows = []
        kern_frees = []
        for y in range(alg.nvert):
            basis, frees = _left_kernel_with_frees(cover[y])
            kern_rows.append(basis)
            kern_frees.append(frees)
        dims = [len(b) for b in kern_rows]
        kact = []
        for ar_idx, ar in enumerate(alg.arrows()):
            rows = []
            for u in kern_rows[ar.src]:
                w = ExactMatrix(F, [u], P.dims[ar.src]).mul(P.act[ar_idx]).rows[0]
                rows.append([w[f] for f in kern_frees[ar.tgt]])
            kact.append(ExactMatrix(F, rows, dims[ar.tgt]))
        K = FDModule(alg, dims, kact)
        self.syzygies.append(K)
        self._kern_embed = (kern_rows, term)
        self._prev_offsets = offsets
        self._cur = K
        if K.is_zero():
            self.finished = True

    def _embed_kernel_vector(self, kern_rows, y, vec):
        F = self.alg.field
        rows = kern_rows[y]
        width = len(rows[0]) if rows else 0
        out = [F.zero] * width
        for c, row in zip(vec, rows):
            if c:
                out = [F.add(a, F.mul(c, b)) for a, b in zip(out, row)]
        return out

    def length_if_finished(self):
        if not self.finished:
            return None
        return len(self.terms) - 1 if self.terms else 0

    def syzygy(self, n):
        """The n-th syzygy module (n >= 1), or X for n = 0."""
        if n == 0:
            return self.X
        self.extend(n - 1)
        if len(self.syzygies) >= n:
            return self.syzygies[n - 1]
        return FDModule.zero(self.alg)


def min_proj_resolution(X):
    got = X.cache.get("minres")
    if got is None:
        got = MinProjResolution(X)
        X.cache["minres"] = got
    return got


def resolution_length(res, cap, periodicity_stages=12):
    """Length of a lazily extended resolution: int, INF, or Inconclusive.

    When the cap is hit, a syzygy-periodicity certificate (exact iso of two
    indecomposable syzygies) upgrades the answer to INF.
    """
    res.extend(cap)
    n = res.length_if_finished()
    if n is not None:
        return n
    stages = min(periodicity_stages, len(res.syzygies))
    mods = res.syzygies[:stages]
    for j in range(1, stages):
        for i in range(j):
            A, B = mods[i], mods[j]
            if A.is_zero() or A.dim_vector() != B.dim_vector():
                continue
            try:
                if not (is_indecomposable(A) and is_indecomposable(B)):
                    continue
                if modules_isomorphic(A, B):
                    return INF
            except (IsoIndeterminate, FinhomError):
                continue
    return Inconclusive(cap)


def min_inj_coresolution(X):
    got = X.cache.get("mincores")
    if got is None:
        got = MinProjResolution(dual_module(X))
        X.cache["mincores"] = got
    return got


class ResolutionLedger:
    """Reported form of a minimal (co)resolution: labeled terms + matrices."""

    def __init__(self, direction, terms, conn, truncated, alg):
        self.direction = direction
        self.terms = terms  # list of stages, each a list of vertex labels
        self.conn = conn
        self.truncated = truncated
        self.alg = alg

    def verify_minimal(self):
        """All connecting entries lie in the radical (no invertible block)."""
        for a in self.conn:
            for row in a:
                for elt in row:
                    if elt is None:
                        continue
                    for x in range(self.alg.nvert):
                        if elt[x]:
                            return False
        return True


def min_resolution(X, direction, cap):
    """Spec-facing ledger of the minimal resolution/coresolution of X."""
    if direction == "projective":
        res = min_proj_resolution(X)
        res.extend(cap)
        alg = X.alg
        labels = [[alg.vertex_labels[x] for x in t] for t in res.terms]
        return ResolutionLedger("projective", labels, res.conn, not res.finished, alg)
    if direction == "injective":
        res = min_inj_coresolution(X)
        res.extend(cap)
        opalg = op_algebra(X.alg)
        labels = [[opalg.vertex_labels[x] for x in t] for t in res.terms]
        return ResolutionLedger("injective", labels, res.conn, not res.finished, opalg)
    raise FinhomError(f"unknown direction {direction!r}")


# -- Ext -----------------------------------------------------------------------


def _hom_complex_matrix(res, i, Y):
    """Matrix of Hom(P_{i-1}, Y) -> Hom(P_i, Y) in Yoneda coordinates."""
    F = Y.alg.field
    src_term = res.terms[i - 1]
    tgt_term = res.terms[i]
    a = res.conn[i - 1]
    src_dims = [Y.dims[x] for x in src_term]
    tgt_dims = [Y.dims[x] for x in tgt_term]
    rows_total = sum(src_dims)
    cols_total = sum(tgt_dims)
    out = [[F.zero] * cols_total for _ in range(rows_total)]
    roff = 0
    for k, xk in enumerate(src_term):
        coff = 0
        for j, xj in enumerate(tgt_term):
            elt = a[k][j]
            if elt is not None and any(elt):
                blk = Y.action_of_element(elt, xk, xj)
                for r in range(blk.nrows):
                    row = out[roff + r]
                    brow = blk.rows[r]
                    for c in range(blk.ncols):
                        if brow[c]:
                            row[coff + c] = F.add(row[coff + c], brow[c])
            coff += tgt_dims[j]
        roff += src_dims[k]
    return ExactMatrix(F, out, cols_total) if rows_total else ExactMatrix(F, [], cols_total)


def ext_dim(X, Y, i, cap=None):
    """dim Ext^i(X, Y) from the minimal projective resolution of X."""
    if i < 0:
        raise FinhomError("negative Ext degree")
    res = min_proj_resolution(X)
    res.extend(i + 1)
    if len(res.terms) <= i:
        return 0
    hom_i = sum(Y.dims[x] for x in res.terms[i])
    if len(res.terms) > i + 1:
        rank_next = _hom_complex_matrix(res, i + 1, Y).rank()
    else:
        rank_next = 0
    if i == 0:
        return hom_i - rank_next
    rank_cur = _hom_complex_matrix(res, i, Y).rank()
    return (hom_i - rank_next) - rank_cur


def ext_dim_via_injective(X, Y, i):
    """dim Ext^i(X, Y) via the injective coresolution route (duality)."""
    return ext_dim(dual_module(Y), dual_module(X), i)


def ext_against_algebra(X, i):
    """dim Ext^i(X, A) per projective block: dict vertex label -> dim."""
    alg = X.alg
    out = {}
    for x in range(alg.nvert):
        P = standard_module(alg, "proj", alg.vertex_labels[x])
        d = ext_dim(X, P, i)
        if d:
            out[alg.vertex_labels[x]] = d
    return out


def grade(X, cap):
    """inf { i >= 0 : Ext^i(X, A) != 0 }, or Inconclusive(cap)."""
    for i in range(cap + 1):
        if ext_against_algebra(X, i):
            return i
    return Inconclusive(cap)


# -- syzygies and AR translates ---------------------------------------------------


def syzygy(X, n):
    """Omega^n for n >= 0; negative n gives cosyzygies."""
    if n == 0:
        return X
    if n > 0:
        return min_proj_resolution(X).syzygy(n)
    om = syzygy(dual_module(X), -n)
    return dual_module(om)


def transpose_module(X):
    """Tr X over the opposite algebra, from a minimal presentation of X."""
    alg = X.alg
    B = op_algebra(alg)
    F = alg.field
    res = min_proj_resolution(X)
    res.extend(1)
    if len(res.terms) == 0:
        return FDModule.zero(B)
    t0 = res.terms[0]
    t1 = res.terms[1] if len(res.terms) > 1 else []
    P0B = direct_sum(B, [standard_module(B, "proj", alg.vertex_labels[x]) for x in t0])
    if not t1:
        return FDModule.zero(B)
    P1B = direct_sum(B, [standard_module(B, "proj", alg.vertex_labels[x]) for x in t1])
    a = res.conn[0]  # a[k][j] in e_{x_k} A e_{x_j}
    # map P0B -> P1B: gen_k -> sum_j gen_j * a[k][j]
    p1_offsets = []
    acc = [0] * B.nvert
    for x in t1:
        p1_offsets.append(list(acc))
        for y in range(B.nvert):
            acc[y] += len(B.block(x, y))
    image_rows = {y: [] for y in range(B.nvert)}
    for k, xk in enumerate(t0):
        for y in range(B.nvert):
            for b in B.block(xk, y):
                row = [F.zero] * P1B.dims[y]
                for j, xj in enumerate(t1):
                    elt = a[k][j]
                    if elt is None or not any(elt):
                        continue
                    prod = B.multiply(elt, B.unit_vec(b))
                    blk = B.block(xj, y)
                    off = p1_offsets[j][y]
                    for t, bidx in enumerate(blk):
                        if prod[bidx]:
                            row[off + t] = F.add(row[off + t], prod[bidx])
                image_rows[y].append(row)
    tr, _ = quotient_module(P1B, image_rows)
    return tr


def tau(X):
    """Auslander-Reiten translate D Tr (projective summands die)."""
    return dual_module(transpose_module(X))


def tau_minus(X):
    """Inverse translate Tr D (injective summands die)."""
    return transpose_module(dual_module(X))


def tau_n(X, n):
    if n < 1:
        raise FinhomError("tau_n needs n >= 1")
    om = syzygy(X, n - 1)
    if om.is_zero():
        return FDModule.zero(X.alg)
    return tau(om)


def tau_n_minus(X, n):
    if n < 1:
        raise FinhomError("tau_n^- needs n >= 1")
    om = syzygy(X, -(n - 1))
    if om.is_zero():
        return FDModule.zero(X.alg)
    return tau_minus(om)


# -- isomorphism and indecomposability ----------------------------------------------


class EndData:
    """End(X): basis, structure constants, and the trace-form radical test."""

    def __init__(self, X):
        self.X = X
        F = X.alg.field
        self.field = F
        self.basis = hom_basis(X, X)
        self.span = hom_coords_span(self.basis)
        n = len(self.basis)
        self.n = n
        self.sc = [[None] * n for _ in range(n)]
        for i in range(n):
            for j in range(n):
                comp = self.basis[i].then(self.basis[j])
                coords = self.span.coords(comp.flat())
                if coords is None:
                    raise FinhomError("End is not closed under composition")
                self.sc[i][j] = coords
        self._trace = None

    def coords(self, hom):
        return self.span.coords(hom.flat())

    def trace_matrix(self):
        """T[i][j] = trace of left multiplication by h_i h_j on End."""
        if self._trace is not None:
            return self._trace
        F = self.field
        n = self.n
        rows = []
        for i in range(n):
            row = []
            for j in range(n):
                z = self.sc[i][j]
                acc = F.zero
                for k in range(n):
                    # coefficient of h_k in z . h_k
                    ccur = F.zero
                    for t, c in enumerate(z):
                        if c:
                            ccur = F.add(ccur, F.mul(c, self.sc[t][k][k]))
                    acc = F.add(acc, ccur)
                row.append(acc)
            rows.append(row)
        self._trace = ExactMatrix(F, rows, n)
        return self._trace

    def radical_rank(self):
        """dim End - dim rad End (valid over Q: trace-form radical)."""
        if self.field.kind != "Q":
            raise FinhomError("trace-form radical needs characteristic zero")
        return self.trace_matrix().rank()

    def in_radical(self, coords):
        F = self.field
        T = self.trace_matrix()
        for j in range(self.n):
            acc = F.zero
            for i, c in enumerate(coords):
                if c:
                    acc = F.add(acc, F.mul(c, T.rows[i][j]))
            if acc:
                return False
        return True


def end_data(X):
    got = X.cache.get("enddata")
    if got is None:
        got = EndData(X)
        X.cache["enddata"] = got
    return got


def is_indecomposable(X, budget=4096):
    """End(X) local with one-dimensional residue field."""
    if X.is_zero():
        return False
    ed = end_data(X)
    if ed.n == 1:
        return True
    F = X.alg.field
    if F.kind == "Q":
        return ed.radical_rank() == 1
    # finite field: enumerate End elements and look for nontrivial idempotents
    if F.p ** ed.n > budget:
        raise IsoIndeterminate("End enumeration budget exceeded")
    idc = ed.coords(identity_hom(X))
    import itertools

    for coeffs in itertools.product(range(F.p), repeat=ed.n):
        if not any(coeffs) or list(coeffs) == idc:
            continue
        sq = [F.zero] * ed.n
        for i, a in enumerate(coeffs):
            if a:
                for j, b in enumerate(coeffs):
                    if b:
                        ab = F.mul(a, b)
                        for k, c in enumerate(ed.sc[i][j]):
                            if c:
                                sq[k] = F.add(sq[k], F.mul(ab, c))
        if sq == [F.coerce(c) for c in coeffs]:
            return False
    return True


def modules_isomorphic(X, Y):
    """Exact isomorphism test; X is expected indecomposable over Q.

    Over Q: X ~ Y iff some composite X -> Y -> X avoids rad End(X); this is
    checked on hom-basis pairs (exact, no sampling).  Over F_p a search with
    a budget is used and may raise IsoIndeterminate.
    """
    if X.alg is not Y.alg:
        return False
    if X.is_zero() or Y.is_zero():
        return X.is_zero() and Y.is_zero()
    if X.dim_vector() != Y.dim_vector():
        return False
    H = hom_basis(X, Y)
    G = hom_basis(Y, X)
    if not H or not G:
        return False
    F = X.alg.field
    if F.kind == "Q":
        ed = end_data(X)
        for f in H:
            for g in G:
                z = f.then(g)
                coords = ed.coords(z)
                if coords is None:
                    raise FinhomError("composite escapes End")
                if not ed.in_radical(coords):
                    return True
        return False
    # finite field: search for an invertible combination
    rng = random.Random(20240801)
    for f in H:
        if f.is_iso():
            return True
    for _ in range(60):
        coeffs = [F.coerce(rng.randrange(F.p)) for _ in H]
        f = None
        for c, h in zip(coeffs, H):
            part = h.scale(c)
            f = part if f is None else f.add(part)
        if f is not None and f.is_iso():
            return True
    if F.p ** len(H) <= 4096:
        import itertools

        for coeffs in itertools.product(range(F.p), repeat=len(H)):
            f = None
            for c, h in zip(coeffs, H):
                part = h.scale(F.coerce(c))
                f = part if f is None else f.add(part)
            if f is not None and f.is_iso():
                return True
        return False
    raise IsoIndeterminate("isomorphism search budget exceeded")


def in_add(X, summands):
    """Membership of X in add(summands) for X zero or indecomposable."""
    if X.is_zero():
        return True
    return any(modules_isomorphic(X, S) for S in summands)


def proj_inj_data(alg):
    """Which P_x are injective and which I_y are projective (cached maps)."""
    got = alg.cache.get("projinj")
    if got is not None:
        return got
    P = {x: standard_module(alg, "proj", alg.vertex_labels[x]) for x in range(alg.nvert)}
    I = {y: standard_module(alg, "inj", alg.vertex_labels[y]) for y in range(alg.nvert)}
    p_inj = {}
    i_proj = {y: None for y in range(alg.nvert)}
    for x in range(alg.nvert):
        p_inj[x] = None
        for y in range(alg.nvert):
            if P[x].dim_vector() != I[y].dim_vector():
                continue
            if modules_isomorphic(P[x], I[y]):
                p_inj[x] = y
                i_proj[y] = x
                break
    got = {"P_inj": p_inj, "I_proj": i_proj}
    alg.cache["projinj"] = got
    return got


# -- per-module profile ------------------------------------------------------------


def dim_profile(X, cap, idim_algebra=None):
    """(pdim, idim, domdim, codomdim, grade, cograde, mcm flag) for X."""
    alg = X.alg
    pj = proj_inj_data(alg)
    res = min_proj_resolution(X)
    res.extend(cap)
    pdim = res.length_if_finished()
    if pdim is None:
        pdim = Inconclusive(cap)
    cores = min_inj_coresolution(X)
    cores.extend(cap)
    idim = cores.length_if_finished()
    if idim is None:
        idim = Inconclusive(cap)
    # domdim: first coresolution stage with a non-projective injective
    domdim = None
    for k, term in enumerate(cores.terms):
        if any(pj["I_proj"][y] is None for y in term):
            domdim = k
            break
    if domdim is None:
        domdim = INF if cores.finished else Inconclusive(cap)
    # codomdim: first resolution stage with a non-injective projective
    codomdim = None
    for k, term in enumerate(res.terms):
        if any(pj["P_inj"][x] is None for x in term):
            codomdim = k
            break
    if codomdim is None:
        codomdim = INF if res.finished else Inconclusive(cap)
    g = grade(X, cap)
    cg = grade(dual_module(X), cap)
    mcm = None
    if isinstance(idim_algebra, int):
        mcm = all(not ext_against_algebra(X, i) for i in range(1, idim_algebra + 1))
    return {
        "pdim": pdim,
        "idim": idim,
        "domdim": domdim,
        "codomdim": codomdim,
        "grade": g,
        "cograde": cg,
        "mcm": mcm,
    }


def loewy_data(X):
    """(radical series, socle series, top dims, socle dims, LL)."""
    rad_series = X.radical_series()
    soc_series = [list(d) for d in dual_module(X).radical_series()]
    return {
        "radical_series": rad_series,
        "socle_series": soc_series,
        "top": X.top_dims(),
        "socle": X.socle_dims(),
        "loewy_length": X.loewy_length(),
    }


# -- endomorphism algebras -----------------------------------------------------------


def _nilpotent_scalar(h, X):
    """The unique scalar c with h - c*id nilpotent (local End assumed)."""
    F = X.alg.field
    total = X.total_dim
    tr = F.zero
    for b in h.blocks:
        for i in range(b.nrows):
            tr = F.add(tr, b.rows[i][i])
    if F.kind == "Q":
        return F.div(tr, F.coerce(total))
    if total % F.p != 0:
        return F.div(tr, F.coerce(total))
    # char divides dim: try all scalars
    for c in range(F.p):
        cand = h.add(identity_hom(X).scale(F.neg(F.coerce(c))))
        if _is_nilpotent_hom(cand):
            return F.coerce(c)
    raise FinhomError("no nilpotent scalar found; End not local?")


def _is_nilpotent_hom(h):
    n = max((b.nrows for b in h.blocks), default=0)
    cur = h
    for _ in range(n):
        cur = cur.then(h)
    return all(b.is_zero() for b in cur.blocks)


def end_algebra(summands, names=None, check_indec=True):
    """End(M) for M the direct sum of the given indecomposable summands.

    Composition is classical (f*g applies g first), so e_i E e_j is
    Hom(M_j, M_i) and A -> End(A) for basic A is the identity on paths.
    """
    if not summands:
        raise FinhomError("end_algebra needs at least one summand")
    alg = summands[0].alg
    F = alg.field
    n = len(summands)
    if check_indec:
        for k, M in enumerate(summands):
            if not is_indecomposable(M):
                raise NotIndecomposable(f"summand {k} is not indecomposable")
        for a in range(n):
            for b in range(a + 1, n):
                if modules_isomorphic(summands[a], summands[b]):
                    raise DuplicateSummand(f"summands {a} and {b} are isomorphic")
    names = list(names) if names is not None else list(range(1, n + 1))
    # block (i, j) of E is Hom(M_j, M_i)
    block_homs = {}
    for i in range(n):
        for j in range(n):
            block_homs[(i, j)] = hom_basis(summands[j], summands[i])
    # normalize diagonal blocks: identity first, nilpotent complements after
    basis_labels = []
    basis_pairs = []
    basis_homs = []
    for i in range(n):
        basis_labels.append(("id", names[i]))
        basis_pairs.append((i, i))
        basis_homs.append(identity_hom(summands[i]))
    rad_entries = []
    for i in range(n):
        for j in range(n):
            homs = block_homs[(i, j)]
            if i == j:
                idh = identity_hom(summands[i])
                span = CoordSpan(F, len(idh.flat()))
                span.insert(idh.flat())
                t = 0
                for h in homs:
                    c = _nilpotent_scalar(h, summands[i])
                    nil = h.add(idh.scale(F.neg(c)))
                    if span.insert(nil.flat()):
                        t += 1
                        rad_entries.append((("rad", names[i], names[j], t), (i, j), nil))
            else:
                for t, h in enumerate(homs, start=1):
                    rad_entries.append((("hom", names[i], names[j], t), (i, j), h))
    for lab, pr, h in rad_entries:
        basis_labels.append(lab)
        basis_pairs.append(pr)
        basis_homs.append(h)
    # per-block coordinate spans over the chosen basis
    spans = {}
    members = {}
    for idx, pr in enumerate(basis_pairs):
        members.setdefault(pr, []).append(idx)
    for pr, idxs in members.items():
        flat0 = basis_homs[idxs[0]].flat()
        span = CoordSpan(F, len(flat0)) if flat0 else CoordSpan(F, 0)
        for idx in idxs:
            span.insert(basis_homs[idx].flat())
        spans[pr] = span

    def mult_fn(u, v):
        (i, j) = basis_pairs[u]
        (j2, k) = basis_pairs[v]
        if j != j2:
            return []
        f = basis_homs[u]  # M_j -> M_i
        g = basis_homs[v]  # M_k -> M_j
        comp = g.then(f)  # M_k -> M_i
        span = spans.get((i, k))
        coords = span.coords(comp.flat()) if span is not None else None
        if coords is None:
            if comp.is_zero():
                return []
            raise FinhomError("composition escapes the End basis")
        out = []
        mem = members[(i, k)]
        for t, c in enumerate(coords):
            if c:
                out.append((mem[t], c))
        return out

    E = FDAlgebra(
        F,
        labels=basis_labels,
        pairs=basis_pairs,
        vertex_labels=names,
        mult_fn=mult_fn,
        check=True,
    )
    E.cache["end_summands"] = summands
    E.cache["basis_homs"] = basis_homs
    E.verify_associativity(sample=500)
    return E


def hom_module(E, summands, X):
    """Hom(M, X) as a right module over E = end_algebra(summands)."""
    alg = summands[0].alg
    F = alg.field
    bases = [hom_basis(Mi, X) for Mi in summands]
    spans = [hom_coords_span(b) for b in bases]
    dims = [len(b) for b in bases]
    act = []
    for ar in E.arrows():
        i, j = ar.src, ar.tgt
        # arrow element of e_i E e_j: a combination of homs M_j -> M_i
        arrow_hom = None
        for idx, c in enumerate(ar.vec):
            if c:
                h = _end_basis_hom(E, idx)
                part = h.scale(c)
                arrow_hom = part if arrow_hom is None else arrow_hom.add(part)
        rows = []
        for phi in bases[i]:
            comp = arrow_hom.then(phi) if arrow_hom is not None else None
            if comp is None:
                rows.append([F.zero] * dims[j])
                continue
            coords = spans[j].coords(comp.flat()) if spans[j] is not None else None
            if coords is None:
                if all(not x for x in comp.flat()):
                    coords = [F.zero] * dims[j]
                else:
                    raise FinhomError("hom image escapes basis")
            rows.append(coords)
        act.append(ExactMatrix(F, rows, dims[j]))
    return FDModule(E, dims, act)


def _end_basis_hom(E, idx):
    """The ModuleHom behind basis element idx of an end algebra."""
    got = E.cache.get("basis_homs")
    if got is None:
        raise FinhomError("not an end algebra")
    return got[idx]
