"""Shared builders and independent brute-force oracles for the test suite.

The oracles here deliberately avoid the Groebner/resolution machinery:
dimension counts come from raw path enumeration plus rank computations,
so they can cross-check the engine.
"""

from finhom.exactlin import ExactMatrix, QQ
from finhom.quiverpres import PathCombo, Presentation, Quiver, path_of_labels


def linear_quiver(n, prefix="a"):
    """A_n quiver 1 -> 2 -> ... -> n with arrows a1..a(n-1)."""
    vertices = list(range(1, n + 1))
    arrows = [(f"{prefix}{i}", i, i + 1) for i in range(1, n)]
    return Quiver(vertices, arrows)


def presentation(field, quiver, relation_specs):
    """relation_specs: list of [(coeff, [arrow labels]), ...] combos."""
    rels = []
    for spec in relation_specs:
        combo = PathCombo(field)
        for coeff, labels in spec:
            combo.add_term(path_of_labels(quiver, labels), field.coerce(coeff))
        rels.append(combo)
    return Presentation(field, quiver, rels)


def monomial_presentation(field, quiver, monomials):
    return presentation(field, quiver, [[(1, labels)] for labels in monomials])


def naka_231_presentation(field=QQ):
    """N_[2,3,1]: linear A_7 with relations 2->3->4 and 5->6->7."""
    q = linear_quiver(7)
    return monomial_presentation(field, q, [["a2", "a3"], ["a5", "a6"]])


def zigzag_a3_presentation(field=QQ, order="paper"):
    """Zigzag Z(A_3): 1 <-> 2 <-> 3, length-2 cross paths zero, loops agree.

    order='paper' declares a1..a4; order='alt' declares a3,a4 first so the
    commutation relation has a2*a1 as leading monomial.
    """
    arrows = [("a1", 1, 2), ("a2", 2, 1), ("a3", 2, 3), ("a4", 3, 2)]
    if order == "alt":
        arrows = [arrows[2], arrows[3], arrows[0], arrows[1]]
    q = Quiver([1, 2, 3], arrows)
    return presentation(
        field,
        q,
        [
            [(1, ["a1", "a3"])],
            [(1, ["a4", "a2"])],
            [(1, ["a2", "a1"]), (-1, ["a3", "a4"])],
        ],
    )


def enumerate_paths(quiver, max_len):
    """All raw KQ paths grouped by length (independent of any rule system)."""
    from finhom.quiverpres import Path, path_end

    by_len = {0: [Path(i, ()) for i in range(len(quiver.vertices))]}
    for d in range(1, max_len + 1):
        cur = []
        for p in by_len[d - 1]:
            for a in quiver.arrows_from[path_end(quiver, p)]:
                cur.append(Path(p.start, p.arrows + (a,)))
        by_len[d] = cur
    return by_len


def brute_force_graded_dims(pres, max_len):
    """Dimension of KQ/I by path length, for homogeneous relations.

    Degree-d ideal component = span of u*r*v over all paths u, v; the
    quotient dimension is #paths(d) - rank, computed by plain rref.
    """
    from finhom.quiverpres import Path, path_end

    q = pres.quiver
    field = pres.field
    by_len = enumerate_paths(q, max_len)
    dims = {0: len(q.vertices)}
    rel_by_deg = {}
    for r in pres.relations:
        degs = {len(p.arrows) for p in r.terms}
        assert len(degs) == 1, "oracle needs homogeneous relations"
        rel_by_deg.setdefault(degs.pop(), []).append(r)
    for d in range(1, max_len + 1):
        paths = by_len[d]
        index = {p: i for i, p in enumerate(paths)}
        rows = []
        for rdeg, rels in rel_by_deg.items():
            if rdeg > d:
                continue
            for r in rels:
                rstart = next(iter(r.terms)).start
                rend = path_end(q, next(iter(r.terms)))
                for lu in range(0, d - rdeg + 1):
                    lv = d - rdeg - lu
                    for u in by_len[lu]:
                        if path_end(q, u) != rstart:
                            continue
                        for v in by_len[lv]:
                            if v.start != rend:
                                continue
                            row = [field.zero] * len(paths)
                            for p, c in r.terms.items():
                                w = Path(u.start if lu else p.start, u.arrows + p.arrows + v.arrows)
                                row[index[w]] = field.add(row[index[w]], c)
                            rows.append(row)
        if rows:
            rank = ExactMatrix(field, rows, len(paths)).rank()
        else:
            rank = 0
        dims[d] = len(paths) - rank
    return dims
