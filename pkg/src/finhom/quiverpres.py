"""Quivers, paths, relation elements and a noncommutative Groebner engine
for admissible ideals of path algebras.

Paths compose left to right: arrow a: x->y followed by b: y->z is the
path a*b from x to z.  The monomial order is length-lex with arrows in
declaration order, so all normal forms and bases are reproducible.
"""

import heapq
from typing import NamedTuple

from .errors import FinhomError, NotAdmissibleWithinCap

DEFAULT_CAP = 30


class Quiver:
    """Finite quiver with ordered vertex labels and labeled arrows."""

    def __init__(self, vertices, arrows):
        self.vertices = list(vertices)
        if len(set(self.vertices)) != len(self.vertices):
            raise FinhomError("duplicate vertex labels")
        self.vertex_index = {v: i for i, v in enumerate(self.vertices)}
        self.arrows = []
        self.arrow_index = {}
        for (label, src, tgt) in arrows:
            if src not in self.vertex_index or tgt not in self.vertex_index:
                raise FinhomError(f"arrow {label}: undeclared vertex")
            if label in self.arrow_index or label in self.vertex_index:
                raise FinhomError(f"duplicate label {label!r}")
            self.arrow_index[label] = len(self.arrows)
            self.arrows.append((label, src, tgt))
        self.arrows_from = {i: [] for i in range(len(self.vertices))}
        for idx, (_, src, tgt) in enumerate(self.arrows):
            self.arrows_from[self.vertex_index[src]].append(idx)

    def arrow_source(self, idx):
        return self.vertex_index[self.arrows[idx][1]]

    def arrow_target(self, idx):
        return self.vertex_index[self.arrows[idx][2]]

    def opposite(self):
        return Quiver(self.vertices, [(lab, tgt, src) for (lab, src, tgt) in self.arrows])

    def sinks(self):
        with_out = {src for (_, src, _) in self.arrows}
        return [v for v in self.vertices if v not in with_out]

    def sources(self):
        with_in = {tgt for (_, _, tgt) in self.arrows}
        return [v for v in self.vertices if v not in with_in]

    def __eq__(self, other):
        return (
            isinstance(other, Quiver)
            and self.vertices == other.vertices
            and self.arrows == other.arrows
        )

    def __repr__(self):
        return f"Quiver({len(self.vertices)} vertices, {len(self.arrows)} arrows)"


class Path(NamedTuple):
    """A path: start vertex index plus a tuple of arrow indices."""

    start: int
    arrows: tuple

    def key(self):
        return (len(self.arrows), self.arrows, self.start)


def path_end(quiver, p):
    return quiver.arrow_target(p.arrows[-1]) if p.arrows else p.start


def compose(quiver, p, q):
    """p*q (p first), or None when endpoints do not match."""
    if path_end(quiver, p) != q.start:
        return None
    return Path(p.start, p.arrows + q.arrows)


def trivial_path(quiver, vertex_label):
    return Path(quiver.vertex_index[vertex_label], ())


def arrow_path(quiver, label):
    idx = quiver.arrow_index[label]
    return Path(quiver.arrow_source(idx), (idx,))


def path_of_labels(quiver, labels, start=None):
    """Build a path from arrow labels; `start` only needed for the trivial path."""
    if not labels:
        if start is None:
            raise FinhomError("trivial path needs a start vertex")
        return trivial_path(quiver, start)
    p = arrow_path(quiver, labels[0])
    for lab in labels[1:]:
        q = arrow_path(quiver, lab)
        p = compose(quiver, p, q)
        if p is None:
            raise FinhomError(f"arrows do not compose at {lab!r}")
    return p


def path_str(quiver, p):
    if not p.arrows:
        return f"e_{quiver.vertices[p.start]}"
    return "*".join(quiver.arrows[i][0] for i in p.arrows)


class PathCombo:
    """Field-coefficient linear combination of paths (sparse dict)."""

    __slots__ = ("field", "terms")

    def __init__(self, field, terms=None):
        self.field = field
        self.terms = dict(terms) if terms else {}

    @staticmethod
    def of(field, path, coeff=None):
        return PathCombo(field, {path: coeff if coeff is not None else field.one})

    def is_zero(self):
        return not self.terms

    def add_term(self, path, coeff):
        cur = self.terms.get(path)
        new = self.field.add(cur, coeff) if cur is not None else coeff
        if new:
            self.terms[path] = new
        elif cur is not None:
            del self.terms[path]

    def combine(self, other, scale=None):
        F = self.field
        s = scale if scale is not None else F.one
        for p, c in other.terms.items():
            self.add_term(p, F.mul(s, c))
        return self

    def scaled(self, c):
        F = self.field
        return PathCombo(F, {p: F.mul(c, v) for p, v in self.terms.items()})

    def leading(self):
        return max(self.terms, key=Path.key)

    def __repr__(self):
        return f"PathCombo({len(self.terms)} terms)"


def validate_relation(quiver, combo):
    """Relations are parallel path combinations of length >= 2."""
    if combo.is_zero():
        raise FinhomError("zero relation")
    ends = {(p.start, path_end(quiver, p)) for p in combo.terms}
    if len(ends) != 1:
        raise FinhomError("relation paths are not parallel")
    if any(len(p.arrows) < 2 for p in combo.terms):
        raise FinhomError("relation contains a path of length < 2 (ideal not admissible)")


class Presentation:
    """A quiver with relations: the syntactic description KQ/I."""

    def __init__(self, field, quiver, relations):
        self.field = field
        self.quiver = quiver
        self.relations = list(relations)
        for r in self.relations:
            validate_relation(quiver, r)

    def opposite(self):
        """Reverse all arrows and all relation paths."""
        qop = self.quiver.opposite()
        rels = []
        for r in self.relations:
            combo = PathCombo(self.field)
            for p, c in r.terms.items():
                rev = Path(path_end(self.quiver, p), tuple(reversed(p.arrows)))
                combo.add_term(rev, c)
            rels.append(combo)
        return Presentation(self.field, qop, rels)

    def is_homogeneous(self):
        return all(len({len(p.arrows) for p in r.terms}) == 1 for r in self.relations)

    def is_quadratic(self):
        return all(
            len({len(p.arrows) for p in r.terms}) == 1
            and len(next(iter(r.terms)).arrows) == 2
            for r in self.relations
        )

    def __repr__(self):
        return f"Presentation({self.quiver!r}, {len(self.relations)} relations)"


class GroebnerBasis:
    """Reduced rewriting system for an admissible ideal.

    rules: dict mapping LM arrow-tuples to (lm_path, tail PathCombo); every
    path containing an LM as a contiguous subword rewrites to lower order.
    admissible_m certifies rad^m <= I.
    """

    def __init__(self, field, quiver, rules, admissible_m, cap):
        self.field = field
        self.quiver = quiver
        self.rules = rules
        self.admissible_m = admissible_m
        self.cap = cap
        self._rule_lengths = sorted({len(k) for k in rules}) if rules else []
        self._basis = None
        self._basis_index = None

    # -- rewriting ------------------------------------------------------------

    def _find_redex(self, arrows):
        for i in range(len(arrows)):
            for L in self._rule_lengths:
                if i + L > len(arrows):
                    break
                rule = self.rules.get(arrows[i : i + L])
                if rule is not None:
                    return i, L, rule
        return None

    def reduce_combo(self, combo):
        """Canonical normal form of a PathCombo (fresh object)."""
        F = self.field
        out = PathCombo(F)
        # max-heap on path key via negated ordering trick: use sorted agenda
        agenda = dict(combo.terms)
        while agenda:
            p = max(agenda, key=Path.key)
            c = agenda.pop(p)
            hit = self._find_redex(p.arrows)
            if hit is None:
                cur = out.terms.get(p)
                new = F.add(cur, c) if cur is not None else c
                if new:
                    out.terms[p] = new
                elif cur is not None:
                    del out.terms[p]
                continue
            i, L, (lm, tail) = hit
            pre, suf = p.arrows[:i], p.arrows[i + L :]
            for t, ct in tail.terms.items():
                q = Path(p.start if i else t.start, pre + t.arrows + suf)
                cc = F.mul(c, ct)
                cur = agenda.get(q)
                new = F.add(cur, cc) if cur is not None else cc
                if new:
                    agenda[q] = new
                elif cur is not None:
                    del agenda[q]
        return out

    def normal_form(self, elt):
        """Normal form of a PathCombo or a single Path."""
        if isinstance(elt, Path):
            elt = PathCombo.of(self.field, elt)
        return self.reduce_combo(elt)

    # -- basis ----------------------------------------------------------------

    def path_basis(self):
        """Irreducible paths ordered by length then lex (cached)."""
        if self._basis is None:
            self._basis = _enumerate_irreducible(self.quiver, self.rules, self.cap)
            self._basis.sort(key=Path.key)
            self._basis_index = {p: i for i, p in enumerate(self._basis)}
        return self._basis

    def basis_index(self):
        self.path_basis()
        return self._basis_index

    def __repr__(self):
        return f"GroebnerBasis({len(self.rules)} rules, m={self.admissible_m})"


def _enumerate_irreducible(quiver, rules, maxlen):
    """DFS of rule-LM-free paths up to length maxlen (inclusive)."""
    lengths = sorted({len(k) for k in rules})
    out = []
    stack = [Path(i, ()) for i in range(len(quiver.vertices) - 1, -1, -1)]
    while stack:
        p = stack.pop()
        out.append(p)
        if len(p.arrows) >= maxlen:
            continue
        for a in quiver.arrows_from[path_end(quiver, p)]:
            arrows = p.arrows + (a,)
            n = len(arrows)
            bad = False
            for L in lengths:
                if L <= n and arrows[n - L :] in rules:
                    bad = True
                    break
            if not bad:
                stack.append(Path(p.start, arrows))
    return out


def _complete(field, quiver, combos, degree_cap):
    """Buchberger/Bergman completion; returns the reduced rule dict."""
    rules = {}

    def reduce_with_rules(combo):
        gb = GroebnerBasis(field, quiver, rules, None, degree_cap)
        return gb.reduce_combo(combo)

    pending = [PathCombo(field, c.terms) for c in combos]
    heap = []  # (word length, seq, lm1 key, lm2 key, overlap length)
    seq = 0

    def enqueue_overlaps(key):
        nonlocal seq
        for other in list(rules):
            pairs = ((key, key),) if other == key else ((key, other), (other, key))
            for k1, k2 in pairs:
                l1, l2 = len(k1), len(k2)
                for ov in range(1, min(l1, l2)):
                    if k1[l1 - ov :] == k2[:ov]:
                        word_len = l1 + l2 - ov
                        if word_len <= 2 * degree_cap + 1:
                            heapq.heappush(heap, (word_len, seq, k1, k2, ov))
                            seq += 1

    def add_rule_from(combo):
        nf = reduce_with_rules(combo)
        if nf.is_zero():
            return
        lm = nf.leading()
        c = nf.terms[lm]
        tail = PathCombo(field)
        ic = field.inv(c)
        for p, v in nf.terms.items():
            if p != lm:
                tail.add_term(p, field.neg(field.mul(ic, v)))
        key = lm.arrows
        # retire rules whose LM contains the new LM as a subword
        L = len(key)
        for other in list(rules):
            if len(other) >= L and other != key and any(
                other[i : i + L] == key for i in range(len(other) - L + 1)
            ):
                olm, otail = rules.pop(other)
                pending.append(
                    PathCombo(field, {olm: field.one}).combine(otail, field.neg(field.one))
                )
        rules[key] = (lm, tail)
        enqueue_overlaps(key)

    while pending or heap:
        while pending:
            add_rule_from(pending.pop())
        if heap:
            _, _, k1, k2, ov = heapq.heappop(heap)
            r1, r2 = rules.get(k1), rules.get(k2)
            if r1 is None or r2 is None:
                continue
            lm1, tail1 = r1
            lm2, tail2 = r2
            # ambiguity word = a.b.c with lm1 = a.b, lm2 = b.c, |b| = ov
            a_arrows = lm1.arrows[: len(lm1.arrows) - ov]
            c_arrows = lm2.arrows[ov:]
            s = PathCombo(field)
            for t, ct in tail1.terms.items():  # tail1 * c
                s.add_term(Path(t.start, t.arrows + c_arrows), ct)
            for t, ct in tail2.terms.items():  # a * tail2
                start = lm1.start if a_arrows else t.start
                s.add_term(Path(start, a_arrows + t.arrows), field.neg(ct))
            nf = reduce_with_rules(s)
            if not nf.is_zero():
                pending.append(nf)

    gb0 = GroebnerBasis(field, quiver, rules, None, degree_cap)
    for key in list(rules):
        lm, tail = rules[key]
        rules[key] = (lm, gb0.reduce_combo(tail))
    return rules


def groebner(presentation, degree_cap=DEFAULT_CAP):
    """Reduced Groebner basis under length-lex, with admissibility certificate.

    Raises NotAdmissibleWithinCap when some length-degree_cap path stays
    irreducible (infinite-dimensional quotient or cap too small).
    """
    if degree_cap < 2:
        raise FinhomError("degree_cap must be >= 2")
    field = presentation.field
    quiver = presentation.quiver
    rules = _complete(field, quiver, presentation.relations, degree_cap)
    irreducible = _enumerate_irreducible(quiver, rules, degree_cap)
    maxlen = max((len(p.arrows) for p in irreducible), default=0)
    if maxlen >= degree_cap:
        raise NotAdmissibleWithinCap(degree_cap)
    gb = GroebnerBasis(field, quiver, rules, maxlen + 1, degree_cap)
    gb._basis = sorted(irreducible, key=Path.key)
    gb._basis_index = {p: i for i, p in enumerate(gb._basis)}
    return gb


def minimal_relation_generators(field, quiver, combos, cap=DEFAULT_CAP):
    """Greedy minimal generating subset of a relation list.

    Keeps a relation exactly when it is not in the ideal generated by the
    ones kept so far (membership via completion of the kept set).
    """
    kept = []
    ordered = sorted(combos, key=lambda c: c.leading().key())
    for c in ordered:
        if kept:
            rules = _complete(field, quiver, kept, cap)
            gb = GroebnerBasis(field, quiver, rules, None, cap)
            if gb.reduce_combo(c).is_zero():
                continue
        kept.append(c)
    return kept
