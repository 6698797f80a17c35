"""Finite-dimensional elementary algebras: basis + structure constants with
a distinguished complete set of primitive orthogonal idempotents.

Every algebra carries a basis split into idempotents and a radical part,
with each basis element bi-homogeneous (lying in some e_x A e_y).  That is
enough to do module theory without a presentation; quiver presentations
are attached when available (from_presentation) or recovered on demand
(extract_presentation).
"""

import random

from .errors import FinhomError, RadicalUnavailable
from .exactlin import CoordSpan, Echelon, ExactMatrix
from .quiverpres import (
    DEFAULT_CAP,
    Path,
    PathCombo,
    Presentation,
    Quiver,
    groebner,
    minimal_relation_generators,
    path_end,
)


class Arrow:
    """A radical generator: label, source/target vertex index, element vector."""

    __slots__ = ("label", "src", "tgt", "vec")

    def __init__(self, label, src, tgt, vec):
        self.label = label
        self.src = src
        self.tgt = tgt
        self.vec = vec

    def __repr__(self):
        return f"Arrow({self.label}: {self.src}->{self.tgt})"


class FDAlgebra:
    """Basis-with-structure-constants algebra over a FieldSpec.

    mult_fn(i, j) must return the product of basis elements i and j as a
    list of (k, coeff) pairs.  Products are cached.  Basis conventions:
    idempotents come first (one per vertex, in vertex order) and the rest
    spans the radical.
    """

    def __init__(
        self,
        field,
        labels,
        pairs,
        vertex_labels,
        mult_fn,
        degrees=None,
        presentation=None,
        gb=None,
        check=True,
    ):
        self.field = field
        self.labels = list(labels)
        self.dim = len(self.labels)
        self.pairs = list(pairs)
        self.vertex_labels = list(vertex_labels)
        self.nvert = len(self.vertex_labels)
        self.vertex_index = {v: i for i, v in enumerate(self.vertex_labels)}
        self._mult_fn = mult_fn
        self._mult_cache = {}
        self.degrees = list(degrees) if degrees is not None else None
        self.presentation = presentation
        self.gb = gb
        self._blocks = None
        self._arrows = None
        self._rad_powers = None
        self.cache = {}
        if self.dim < self.nvert:
            raise FinhomError("fewer basis elements than vertices")
        for x in range(self.nvert):
            if self.pairs[x] != (x, x):
                raise FinhomError("basis must start with the idempotents in vertex order")
        if check:
            self._check_idempotents()

    # -- basic structure -------------------------------------------------------

    def mult(self, i, j):
        key = (i, j)
        got = self._mult_cache.get(key)
        if got is None:
            if self.pairs[i][1] != self.pairs[j][0]:
                got = ()
            else:
                got = tuple(self._mult_fn(i, j))
            self._mult_cache[key] = got
        return got

    def idempotent_index(self, x):
        return x  # idempotents are the first nvert basis elements

    def is_radical_index(self, i):
        return i >= self.nvert

    def radical_indices(self):
        return range(self.nvert, self.dim)

    def zero_vec(self):
        return [self.field.zero] * self.dim

    def unit_vec(self, i):
        v = self.zero_vec()
        v[i] = self.field.one
        return v

    def unit(self):
        v = self.zero_vec()
        for x in range(self.nvert):
            v[x] = self.field.one
        return v

    def multiply(self, u, v):
        """Product of two coordinate vectors."""
        F = self.field
        out = self.zero_vec()
        for i, a in enumerate(u):
            if not a:
                continue
            for j, b in enumerate(v):
                if not b:
                    continue
                ab = F.mul(a, b)
                for k, c in self.mult(i, j):
                    out[k] = F.add(out[k], F.mul(ab, c))
        return out

    def blocks(self):
        if self._blocks is None:
            self._blocks = {}
            for i, pr in enumerate(self.pairs):
                self._blocks.setdefault(pr, []).append(i)
        return self._blocks

    def block(self, x, y):
        return self.blocks().get((x, y), [])

    def cartan_matrix(self):
        """dim e_x A e_y table (rows x, cols y)."""
        return [[len(self.block(x, y)) for y in range(self.nvert)] for x in range(self.nvert)]

    def _check_idempotents(self):
        F = self.field
        for x in range(self.nvert):
            if self.mult(x, x) != ((x, F.one),):
                raise FinhomError(f"basis element {x} is not the idempotent e_{self.vertex_labels[x]}")
            for y in range(self.nvert):
                if x != y and self.mult(x, y):
                    raise FinhomError("idempotents not orthogonal")

    def verify_associativity(self, sample=None, seed=11):
        """(b_i b_j) b_k == b_i (b_j b_k); full check or a deterministic sample."""
        triples = None
        if sample is not None and self.dim ** 3 > sample:
            rng = random.Random(seed)
            triples = [
                (rng.randrange(self.dim), rng.randrange(self.dim), rng.randrange(self.dim))
                for _ in range(sample)
            ]
        else:
            triples = [
                (i, j, k)
                for i in range(self.dim)
                for j in range(self.dim)
                for k in range(self.dim)
            ]
        for (i, j, k) in triples:
            left = self.multiply(self._expand(self.mult(i, j)), self.unit_vec(k))
            right = self.multiply(self.unit_vec(i), self._expand(self.mult(j, k)))
            if left != right:
                raise FinhomError(f"associativity fails on basis triple {(i, j, k)}")
        return True

    def _expand(self, pairs):
        v = self.zero_vec()
        for k, c in pairs:
            v[k] = self.field.add(v[k], c)
        return v

    # -- radical filtration ----------------------------------------------------

    def radical_power_echelons(self):
        """Per-block echelons of rad^k for k = 0, 1, ... until zero (cached)."""
        if self._rad_powers is not None:
            return self._rad_powers
        F = self.field
        levels = []
        lvl0 = {}
        for pr, idxs in self.blocks().items():
            e = Echelon(F, self.dim)
            for i in idxs:
                e.insert(self.unit_vec(i))
            lvl0[pr] = e
        levels.append(lvl0)
        cur_vecs = [self.unit_vec(i) for i in self.radical_indices()]
        cur_pairs = [self.pairs[i] for i in self.radical_indices()]
        while True:
            lvl = {}
            for v, pr in zip(cur_vecs, cur_pairs):
                lvl.setdefault(pr, Echelon(F, self.dim)).insert(v)
            levels.append(lvl)
            if not any(e.dim for e in lvl.values()):
                break
            nxt_vecs, nxt_pairs = [], []
            for v, (x, y) in zip(cur_vecs, cur_pairs):
                for j in self.radical_indices():
                    (s, t) = self.pairs[j]
                    if s != y:
                        continue
                    w = self.multiply(v, self.unit_vec(j))
                    if any(c for c in w):
                        nxt_vecs.append(w)
                        nxt_pairs.append((x, t))
            # deduplicate within echelons next round; keep spanning set small
            dedup_vecs, dedup_pairs = [], []
            tmp = {}
            for v, pr in zip(nxt_vecs, nxt_pairs):
                e = tmp.setdefault(pr, Echelon(F, self.dim))
                if e.insert(v):
                    dedup_vecs.append(v)
                    dedup_pairs.append(pr)
            cur_vecs, cur_pairs = dedup_vecs, dedup_pairs
        self._rad_powers = levels
        return levels

    def loewy_length(self):
        levels = self.radical_power_echelons()
        for k in range(1, len(levels)):
            if not any(e.dim for e in levels[k].values()):
                return k
        return len(levels)

    def radical_square_echelons(self):
        levels = self.radical_power_echelons()
        return levels[2] if len(levels) > 2 else {}

    # -- arrows (radical generators) --------------------------------------------

    def arrows(self):
        """Canonical arrow lifts: radical basis elements complementing rad^2.

        For a graded algebra the degree-1 elements are scanned first, so
        arrows are homogeneous of degree 1 whenever the grading is standard.
        """
        if self._arrows is not None:
            return self._arrows
        if self.presentation is not None and self.gb is not None:
            arrows = []
            q = self.presentation.quiver
            bidx = self.gb.basis_index()
            for a, (lab, src, tgt) in enumerate(q.arrows):
                p = Path(q.vertex_index[src], (a,))
                vec = self.unit_vec(bidx[p])
                arrows.append(Arrow(lab, q.vertex_index[src], q.vertex_index[tgt], vec))
            self._arrows = arrows
            return arrows
        rad2 = self.radical_square_echelons()
        order = sorted(
            self.radical_indices(),
            key=(lambda i: (self.degrees[i], i)) if self.degrees is not None else (lambda i: i),
        )
        # work on copies so the cached rad^2 echelons stay intact
        probes = {}
        arrows = []
        n = 0
        for i in order:
            pr = self.pairs[i]
            e = probes.get(pr)
            if e is None:
                e = Echelon(self.field, self.dim)
                base = rad2.get(pr)
                if base is not None:
                    for row in base.rows:
                        e.insert(row)
                probes[pr] = e
            if e.insert(self.unit_vec(i)):
                n += 1
                arrows.append(Arrow(f"a{n}", pr[0], pr[1], self.unit_vec(i)))
        self._arrows = arrows
        return arrows

    def right_mult_matrix(self, src_indices, vec, tgt_indices):
        """Matrix of right multiplication by `vec` from span(src) to span(tgt)."""
        F = self.field
        tpos = {k: c for c, k in enumerate(tgt_indices)}
        rows = []
        for i in src_indices:
            out = [F.zero] * len(tgt_indices)
            for j, b in enumerate(vec):
                if not b:
                    continue
                for k, c in self.mult(i, j):
                    col = tpos.get(k)
                    if col is not None:
                        out[col] = F.add(out[col], F.mul(b, c))
            rows.append(out)
        return ExactMatrix(F, rows, len(tgt_indices))

    def is_graded(self):
        return self.degrees is not None

    def __repr__(self):
        return f"FDAlgebra(dim={self.dim}, vertices={self.nvert}, field={self.field})"


# -- constructors ---------------------------------------------------------------


def from_presentation(pres, cap=DEFAULT_CAP):
    """Realize KQ/I: basis = irreducible paths, products via normal forms."""
    gb = groebner(pres, cap)
    basis = gb.path_basis()
    index = gb.basis_index()
    q = pres.quiver
    field = pres.field
    pairs = [(p.start, path_end(q, p)) for p in basis]

    def mult_fn(i, j):
        p, r = basis[i], basis[j]
        if path_end(q, p) != r.start:
            return []
        nf = gb.normal_form(Path(p.start, p.arrows + r.arrows))
        return [(index[t], c) for t, c in nf.terms.items()]

    degrees = [len(p.arrows) for p in basis] if pres.is_homogeneous() else None
    alg = FDAlgebra(
        field,
        labels=basis,
        pairs=pairs,
        vertex_labels=q.vertices,
        mult_fn=mult_fn,
        degrees=degrees,
        presentation=pres,
        gb=gb,
    )
    alg.cap = cap
    return alg


def opposite(alg):
    """The opposite algebra; presented algebras stay presented."""
    if alg.presentation is not None:
        return from_presentation(alg.presentation.opposite(), getattr(alg, "cap", DEFAULT_CAP))
    flipped = [(y, x) for (x, y) in alg.pairs]

    def mult_fn(i, j):
        return alg.mult(j, i)

    op = FDAlgebra(
        alg.field,
        labels=list(alg.labels),
        pairs=flipped,
        vertex_labels=list(alg.vertex_labels),
        mult_fn=mult_fn,
        degrees=alg.degrees,
        check=False,
    )
    return op


def corner(alg, vertex_subset):
    """eAe for e the sum of the chosen idempotents."""
    keep = [alg.vertex_index[v] for v in vertex_subset]
    if not keep:
        raise FinhomError("corner needs a nonempty idempotent subset")
    keep_set = set(keep)
    keep.sort()
    old_new_vertex = {x: n for n, x in enumerate(keep)}
    chosen = [
        i
        for i in range(alg.dim)
        if alg.pairs[i][0] in keep_set and alg.pairs[i][1] in keep_set
    ]
    # idempotents of the corner come first already (subset of the originals)
    chosen.sort(key=lambda i: (alg.is_radical_index(i), i))
    old_new = {i: n for n, i in enumerate(chosen)}

    def mult_fn(i, j):
        return [(old_new[k], c) for k, c in alg.mult(chosen[i], chosen[j])]

    return FDAlgebra(
        alg.field,
        labels=[alg.labels[i] for i in chosen],
        pairs=[(old_new_vertex[alg.pairs[i][0]], old_new_vertex[alg.pairs[i][1]]) for i in chosen],
        vertex_labels=[alg.vertex_labels[x] for x in keep],
        mult_fn=mult_fn,
        degrees=[alg.degrees[i] for i in chosen] if alg.degrees is not None else None,
        check=False,
    )


def quotient_by_idempotent_ideal(alg, vertex_subset):
    """A / AeA for e the sum of the chosen idempotents."""
    killed = {alg.vertex_index[v] for v in vertex_subset}
    if not killed:
        return alg
    survive = [x for x in range(alg.nvert) if x not in killed]
    if not survive:
        raise FinhomError("quotient by all idempotents is the zero algebra")
    F = alg.field
    # span of AeA inside each surviving block
    ideal = {}
    for v in killed:
        into = [i for i in range(alg.dim) if alg.pairs[i][1] == v]
        outof = [j for j in range(alg.dim) if alg.pairs[j][0] == v]
        for i in into:
            x = alg.pairs[i][0]
            if x in killed:
                continue
            for j in outof:
                y = alg.pairs[j][1]
                if y in killed:
                    continue
                w = alg._expand(alg.mult(i, j))
                if any(w):
                    ideal.setdefault((x, y), Echelon(F, alg.dim)).insert(w)
    old_new_vertex = {x: n for n, x in enumerate(survive)}
    # per surviving block: kept representatives = original elements independent
    # of the ideal, and an expansion of every block element mod the ideal in
    # terms of the kept ones
    chosen = []
    expand_cache = {}
    for pr, idxs in sorted(alg.blocks().items()):
        (x, y) = pr
        if x in killed or y in killed:
            continue
        base = ideal.get(pr)
        span = CoordSpan(F, alg.dim)
        if base is not None:
            for row in base.rows:
                span.insert(row)
        nbase = span.dim
        keep_here = []
        for i in idxs:
            if span.insert(alg.unit_vec(i)):
                keep_here.append(i)
        chosen.extend(keep_here)
        for i in idxs:
            coords = span.coords(alg.unit_vec(i))
            if coords is None:
                raise FinhomError("block decomposition failure in quotient")
            expand_cache[i] = [
                (keep_here[t - nbase], c) for t, c in enumerate(coords) if t >= nbase and c
            ]
    chosen.sort(key=lambda i: (alg.is_radical_index(i), i))
    old_new = {i: n for n, i in enumerate(chosen)}

    def mult_fn(i, j):
        oi, oj = chosen[i], chosen[j]
        out = {}
        for k, c in alg.mult(oi, oj):
            for kk, cc in expand_cache.get(k, ()):  # k may sit in a killed block: then absent
                prev = out.get(kk)
                val = F.add(prev, F.mul(c, cc)) if prev is not None else F.mul(c, cc)
                if val:
                    out[kk] = val
                elif prev is not None:
                    del out[kk]
        return [(old_new[k], c) for k, c in out.items()]

    graded = None
    if alg.degrees is not None:
        graded = [alg.degrees[i] for i in chosen]
    return FDAlgebra(
        alg.field,
        labels=[alg.labels[i] for i in chosen],
        pairs=[
            (old_new_vertex[alg.pairs[i][0]], old_new_vertex[alg.pairs[i][1]]) for i in chosen
        ],
        vertex_labels=[alg.vertex_labels[x] for x in survive],
        mult_fn=mult_fn,
        degrees=graded,
        check=False,
    )


def trivial_extension(alg):
    """T(A) = A  \\oplus  DA with (a,f)(b,g) = (ab, ag + fb)."""
    F = alg.field
    n = alg.dim
    # labels: originals then duals; but idempotents must stay first, and the
    # duals are all radical, so order is originals (idem first) then duals.
    labels = [("b", alg.labels[i]) for i in range(n)] + [("d", alg.labels[i]) for i in range(n)]
    pairs = list(alg.pairs) + [(y, x) for (x, y) in alg.pairs]

    def coeff_in(pairs_list, want):
        for k, c in pairs_list:
            if k == want:
                return c
        return None

    def mult_fn(i, j):
        if i < n and j < n:
            return list(alg.mult(i, j))
        if i >= n and j >= n:
            return []
        out = []
        if i < n and j >= n:
            # b_i * delta_{j-n}: (a.g)(m) = g(m a)
            tgt = j - n
            for k in range(n):
                c = coeff_in(alg.mult(k, i), tgt)
                if c:
                    out.append((n + k, c))
            return out
        # delta_{i-n} * b_j: (f.b)(m) = f(b m)
        src = i - n
        for k in range(n):
            c = coeff_in(alg.mult(j, k), src)
            if c:
                out.append((n + k, c))
        return out

    t = FDAlgebra(
        F,
        labels=labels,
        pairs=pairs,
        vertex_labels=list(alg.vertex_labels),
        mult_fn=mult_fn,
        check=False,
    )
    t.verify_associativity(sample=400)
    return t


def tensor_product(a, b):
    """A (x) B, componentwise structure constants, no sign convention."""
    if a.field != b.field:
        raise FinhomError("tensor factors must share the field")
    F = a.field
    # vertex pairs ordered (x, u) with x major; idempotents (e_x, e_u) first
    vertex_labels = [(vx, vu) for vx in a.vertex_labels for vu in b.vertex_labels]
    idx_of = {}
    labels = []
    pairs = []
    degrees = [] if (a.degrees is not None and b.degrees is not None) else None
    order = []
    for i in range(a.nvert):
        for j in range(b.nvert):
            order.append((i, j))
    for i in range(a.dim):
        for j in range(b.dim):
            if i < a.nvert and j < b.nvert:
                continue
            order.append((i, j))
    for (i, j) in order:
        idx_of[(i, j)] = len(labels)
        labels.append((a.labels[i], b.labels[j]))
        (x1, y1) = a.pairs[i]
        (x2, y2) = b.pairs[j]
        pairs.append((x1 * b.nvert + x2, y1 * b.nvert + y2))
        if degrees is not None:
            degrees.append(a.degrees[i] + b.degrees[j])

    def mult_fn(i, j):
        (i1, i2) = order[i]
        (j1, j2) = order[j]
        out = []
        for k1, c1 in a.mult(i1, j1):
            for k2, c2 in b.mult(i2, j2):
                out.append((idx_of[(k1, k2)], F.mul(c1, c2)))
        return out

    t = FDAlgebra(
        F,
        labels=labels,
        pairs=pairs,
        vertex_labels=vertex_labels,
        mult_fn=mult_fn,
        degrees=degrees,
        check=False,
    )
    t.verify_associativity(sample=400)
    return t


def associated_graded(alg):
    """gr(A) along the radical filtration: level-k piece rad^k / rad^{k+1}.

    Canonical representatives per block and level; products are computed in
    A and then projected.  Used to put the standard grading on algebras
    (e.g. endomorphism algebras of additive generators) whose abstract
    basis is not degree-aligned.
    """
    F = alg.field
    levels = alg.radical_power_echelons()
    labels = [("gr", alg.labels[x]) for x in range(alg.nvert)]
    pairs = [(x, x) for x in range(alg.nvert)]
    degrees = [0] * alg.nvert
    reps = [alg.unit_vec(x) for x in range(alg.nvert)]
    level_members = {}  # (pr, k) -> list of new indices
    for x in range(alg.nvert):
        level_members.setdefault(((x, x), 0), []).append(x)
    for k in range(1, len(levels)):
        for pr in sorted(levels[k]):
            ech = levels[k][pr]
            hi = levels[k + 1].get(pr) if k + 1 < len(levels) else None
            span = CoordSpan(F, alg.dim)
            if hi is not None:
                for row in hi.basis():
                    span.insert(row)
            for row in ech.basis():
                if span.insert(list(row)):
                    level_members.setdefault((pr, k), []).append(len(labels))
                    labels.append(("gr", pr, k, len(level_members[(pr, k)])))
                    pairs.append(pr)
                    degrees.append(k)
                    reps.append(list(row))
    # solvers per (pr, k): rad^{k+1} rows, then the level reps
    solvers = {}

    def solver(pr, k):
        got = solvers.get((pr, k))
        if got is not None:
            return got
        span = CoordSpan(F, alg.dim)
        hi = levels[k + 1].get(pr) if k + 1 < len(levels) else None
        nbase = 0
        if hi is not None:
            for row in hi.basis():
                span.insert(row)
            nbase = span.dim
        members = level_members.get((pr, k), [])
        for idx in members:
            span.insert(reps[idx])
        solvers[(pr, k)] = (span, nbase, members)
        return solvers[(pr, k)]

    def mult_fn(i, j):
        ki, kj = degrees[i], degrees[j]
        x = pairs[i][0]
        t = pairs[j][1]
        w = alg.multiply(reps[i], reps[j])
        if not any(w):
            return []
        k = ki + kj
        if k + 1 > len(levels):
            return []
        span, nbase, members = solver((x, t), k)
        coords = span.coords(w)
        if coords is None:
            raise FinhomError("graded projection failure")
        return [(members[c - nbase], v) for c, v in enumerate(coords) if c >= nbase and v]

    g = FDAlgebra(
        F,
        labels=labels,
        pairs=pairs,
        vertex_labels=list(alg.vertex_labels),
        mult_fn=mult_fn,
        degrees=degrees,
        check=False,
    )
    g.verify_associativity(sample=400)
    return g


class ExtractedPresentation:
    """Quiver presentation of an abstract algebra plus the path lift map."""

    def __init__(self, presentation, path_images, reduced_relations, source):
        self.presentation = presentation
        self.path_images = path_images
        self.reduced_relations = reduced_relations
        self.source = source

    def realize(self, cap=None):
        if cap is None:
            cap = max(4, max(len(p.arrows) for p in self.path_images) + 2)
        return from_presentation(self.presentation, cap)


def extract_presentation(alg, cap=DEFAULT_CAP):
    """Ext-quiver plus minimal relations for an elementary algebra.

    Scans paths in length-lex order; a path whose image is dependent on the
    images of earlier irreducible paths yields a rewriting rule, and the
    rule set is automatically the reduced Groebner basis of the kernel of
    KQ -> A.  Relations are then pruned to a minimal generating set.
    """
    import heapq

    F = alg.field
    arrows = alg.arrows()
    quiver = Quiver(
        list(alg.vertex_labels),
        [
            (ar.label, alg.vertex_labels[ar.src], alg.vertex_labels[ar.tgt])
            for ar in arrows
        ],
    )
    arrows_from = {}
    for a_idx, ar in enumerate(arrows):
        arrows_from.setdefault(ar.src, []).append(a_idx)

    img = CoordSpan(F, alg.dim)
    irr = []  # (path, image vector)
    rules = {}
    rule_lengths = set()
    heap = []
    counter = 0
    for x in range(alg.nvert):
        p = Path(x, ())
        heapq.heappush(heap, (p.key(), counter, p, alg.unit_vec(x)))
        counter += 1
    while heap:
        _, _, p, vec = heapq.heappop(heap)
        n = len(p.arrows)
        reducible = False
        for L in rule_lengths:
            if L <= n and p.arrows[n - L :] in rules:
                reducible = True
                break
        if reducible:
            continue
        if img.insert(vec):
            irr.append((p, vec))
            end = path_end(quiver, p)
            for a_idx in arrows_from.get(end, []):
                q = Path(p.start, p.arrows + (a_idx,))
                w = alg.multiply(vec, arrows[a_idx].vec)
                heapq.heappush(heap, (q.key(), counter, q, w))
                counter += 1
        else:
            coords = img.coords(vec)
            combo = PathCombo(F, {p: F.one})
            for t, c in enumerate(coords):
                if c:
                    combo.add_term(irr[t][0], F.neg(c))
            rules[p.arrows] = combo
            rule_lengths.add(len(p.arrows))
    if img.dim != alg.dim:
        raise RadicalUnavailable(
            "idempotents and arrow lifts do not generate the algebra; radical split invalid"
        )
    reduced = sorted(rules.values(), key=lambda c: c.leading().key())
    relations = minimal_relation_generators(F, quiver, reduced, cap)
    pres = Presentation(F, quiver, relations)
    return ExtractedPresentation(pres, {p: v for p, v in irr}, reduced, alg)


def symmetrizing_form_space(alg):
    """Basis of the space of symmetric associative K-linear forms on A.

    A form is identified with its coefficient vector (lambda(b_k))_k; the
    constraints are lambda(b_i b_j) = lambda(b_j b_i) for all basis pairs.
    """
    F = alg.field
    rows = []
    for i in range(alg.dim):
        for j in range(i + 1, alg.dim):
            row = [F.zero] * alg.dim
            hit = False
            for k, c in alg.mult(i, j):
                row[k] = F.add(row[k], c)
                hit = True
            for k, c in alg.mult(j, i):
                row[k] = F.sub(row[k], c)
                hit = True
            if hit and any(row):
                rows.append(row)
    if not rows:
        return [alg.unit_vec(k) for k in range(alg.dim)]
    return ExactMatrix(F, rows, alg.dim).kernel_basis()


def gram_matrix(alg, form):
    F = alg.field
    rows = []
    for i in range(alg.dim):
        row = []
        for j in range(alg.dim):
            acc = F.zero
            for k, c in alg.mult(i, j):
                acc = F.add(acc, F.mul(c, form[k]))
            row.append(acc)
        rows.append(row)
    return ExactMatrix(F, rows, alg.dim)


def find_symmetrizing_form(alg, trials=24, seed=5):
    """A symmetric associative form with nonsingular Gram matrix, or None."""
    space = symmetrizing_form_space(alg)
    if not space:
        return None
    F = alg.field
    rng = random.Random(seed)
    candidates = list(space)
    for t in range(trials):
        coeffs = [F.coerce(rng.randint(-3 - t, 3 + t)) for _ in space]
        candidates.append(
            [
                sum_field(F, (F.mul(c, v[k]) for c, v in zip(coeffs, space)))
                for k in range(alg.dim)
            ]
        )
    for form in candidates:
        if gram_matrix(alg, form).rank() == alg.dim:
            return form
    return None


def sum_field(F, items):
    acc = F.zero
    for x in items:
        acc = F.add(acc, x)
    return acc
