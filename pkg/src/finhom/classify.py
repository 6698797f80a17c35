"""Algebra-level homological profile and classification predicates:
Iwanaga-Gorenstein, (dominant) Auslander-Gorenstein/regular, minimal AG,
higher Auslander, stiffness, the Gorenstein condition on simples, dominant
numbers, and the grade bijection with its two computation routes.
"""

from .errors import FinhomError, NotDominantAG
from .exactlin import CoordSpan, ExactMatrix
from .modhom import (
    INF,
    Inconclusive,
    dim_ge,
    direct_sum,
    dual_module,
    ext_against_algebra,
    grade,
    min_inj_coresolution,
    min_proj_resolution,
    op_algebra,
    proj_inj_data,
    quotient_module,
    resolution_length,
    standard_module,
    submodule,
)

DEFAULT_CAP = 30


class HomologicalProfile:
    """Per-projective and per-injective dimension tables plus algebra data."""

    def __init__(self, alg, cap):
        self.alg = alg
        self.cap = cap
        self.proj = {}
        self.inj = {}
        self.gldim = None
        self.idim = None
        self.pdim_dual = None
        self.domdim = None
        self.dominant_numbers = None
        self.coresolution_stages = None


def _min_over(values):
    out = INF
    for v in values:
        if v is INF:
            continue
        if isinstance(v, Inconclusive):
            return v
        if out is INF or v < out:
            out = v
    return out


def _max_over(values):
    out = 0
    for v in values:
        if v is INF:
            return INF
        if isinstance(v, Inconclusive):
            return v
        if v > out:
            out = v
    return out


def profile(alg, cap=DEFAULT_CAP):
    """Exhaustive homological table over all idempotents (cached)."""
    key = ("profile", cap)
    got = alg.cache.get(key)
    if got is not None:
        return got
    pj = proj_inj_data(alg)
    prof = HomologicalProfile(alg, cap)
    stages = {}
    for x in range(alg.nvert):
        P = standard_module(alg, "proj", alg.vertex_labels[x])
        cores = min_inj_coresolution(P)
        idim = resolution_length(cores, cap)
        domdim = None
        for k, term in enumerate(cores.terms):
            if any(pj["I_proj"][y] is None for y in term):
                domdim = k
                break
        if domdim is None:
            domdim = INF if cores.finished else Inconclusive(cap)
        for k, term in enumerate(cores.terms):
            stages.setdefault(k, []).extend(term)
        prof.proj[alg.vertex_labels[x]] = {
            "idim": idim,
            "domdim": domdim,
            "injective": (
                alg.vertex_labels[pj["P_inj"][x]] if pj["P_inj"][x] is not None else None
            ),
            "loewy_length": P.loewy_length(),
        }
    for y in range(alg.nvert):
        I = standard_module(alg, "inj", alg.vertex_labels[y])
        res = min_proj_resolution(I)
        pdim = resolution_length(res, cap)
        codomdim = None
        for k, term in enumerate(res.terms):
            if any(pj["P_inj"][x] is None for x in term):
                codomdim = k
                break
        if codomdim is None:
            codomdim = INF if res.finished else Inconclusive(cap)
        prof.inj[alg.vertex_labels[y]] = {
            "pdim": pdim,
            "codomdim": codomdim,
            "projective": (
                alg.vertex_labels[pj["I_proj"][y]] if pj["I_proj"][y] is not None else None
            ),
            "loewy_length": I.loewy_length(),
        }
    prof.idim = _max_over(p["idim"] for p in prof.proj.values())
    prof.pdim_dual = _max_over(i["pdim"] for i in prof.inj.values())
    prof.domdim = _min_over(p["domdim"] for p in prof.proj.values())
    prof.coresolution_stages = stages
    # dominant numbers: degrees where pdim of the coresolution terms jumps
    if isinstance(prof.idim, int):
        pdim_of_stage = []
        ok = True
        for k in range(prof.idim + 1):
            vals = [prof.inj[alg.vertex_labels[y]]["pdim"] for y in stages.get(k, [])]
            if any(not isinstance(v, int) for v in vals):
                ok = False
                break
            pdim_of_stage.append(max(vals) if vals else 0)
        if ok:
            prof.dominant_numbers = {
                n
                for n in range(prof.idim + 1)
                if all(pdim_of_stage[i] < pdim_of_stage[n] for i in range(n))
            }
        prof._stage_pdims = pdim_of_stage if ok else None
    # global dimension
    selfinj = all(pj["P_inj"][x] is not None for x in range(alg.nvert))
    if selfinj:
        prof.gldim = 0 if alg.dim == alg.nvert else INF
    else:
        pdims = []
        bound = None
        if isinstance(prof.idim, int) and isinstance(prof.pdim_dual, int):
            bound = prof.idim + 1  # IG: gldim finite iff == idim
        for x in range(alg.nvert):
            S = standard_module(alg, "simple", alg.vertex_labels[x])
            res = min_proj_resolution(S)
            if bound is not None:
                res.extend(bound)
                p = res.length_if_finished()
                if p is None:
                    p = INF  # IG: gldim finite would force gldim = idim
            else:
                p = resolution_length(res, cap)
            pdims.append(p)
        prof.gldim = _max_over(pdims)
        prof.simple_pdims = pdims
    alg.cache[key] = prof
    return prof


def classify_flags(alg, cap=DEFAULT_CAP):
    """Classification flags; each exact or Inconclusive with the cap."""
    key = ("flags", cap)
    got = alg.cache.get(key)
    if got is not None:
        return got
    prof = profile(alg, cap)
    pj = proj_inj_data(alg)
    flags = {}
    flags["selfinjective"] = all(pj["P_inj"][x] is not None for x in range(alg.nvert))
    ig = isinstance(prof.idim, int) and isinstance(prof.pdim_dual, int)
    if not ig and (isinstance(prof.idim, Inconclusive) or isinstance(prof.pdim_dual, Inconclusive)):
        flags["iwanaga_gorenstein"] = Inconclusive(cap)
    else:
        flags["iwanaga_gorenstein"] = ig
        if ig and prof.idim != prof.pdim_dual:
            raise FinhomError("idim A != pdim D(A) for a finite pair; engine bug")
    # Auslander-Gorenstein: pdim I^i <= i along the coresolution of A
    if flags["iwanaga_gorenstein"] is True and getattr(prof, "_stage_pdims", None) is not None:
        flags["auslander_gorenstein"] = all(
            p <= i for i, p in enumerate(prof._stage_pdims)
        )
    else:
        flags["auslander_gorenstein"] = (
            False if flags["iwanaga_gorenstein"] is False else Inconclusive(cap)
        )
    # dominant AG: IG and domdim P >= idim P for all indecomposable projectives
    if flags["iwanaga_gorenstein"] is True:
        dom = True
        for x in alg.vertex_labels:
            p = prof.proj[x]
            if isinstance(p["idim"], Inconclusive) or isinstance(p["domdim"], Inconclusive):
                dom = Inconclusive(cap)
                break
            if not dim_ge(p["domdim"], p["idim"]):
                dom = False
                break
        flags["dominant_ag"] = dom
    else:
        flags["dominant_ag"] = flags["iwanaga_gorenstein"]
    if flags["dominant_ag"] is True:
        if prof.gldim is INF:
            flags["dominant_ar"] = False
        elif isinstance(prof.gldim, Inconclusive):
            flags["dominant_ar"] = Inconclusive(cap)
        else:
            flags["dominant_ar"] = True
    else:
        flags["dominant_ar"] = flags["dominant_ag"]
    # minimal AG: idim A <= n <= domdim A for some n >= 1
    if isinstance(prof.idim, int) and not isinstance(prof.domdim, Inconclusive):
        flags["minimal_ag"] = (
            flags["iwanaga_gorenstein"] is True
            and dim_ge(prof.domdim, max(prof.idim, 1))
        )
    else:
        flags["minimal_ag"] = Inconclusive(cap)
    # higher Auslander: gldim A <= n <= domdim A for some n >= 1
    if isinstance(prof.gldim, int) and not isinstance(prof.domdim, Inconclusive):
        ha = dim_ge(prof.domdim, max(prof.gldim, 1))
        flags["higher_auslander"] = ha
        flags["higher_auslander_range"] = (
            (max(prof.gldim, 1), prof.domdim) if ha else None
        )
    elif prof.gldim is INF:
        flags["higher_auslander"] = False
        flags["higher_auslander_range"] = None
    else:
        flags["higher_auslander"] = Inconclusive(cap)
        flags["higher_auslander_range"] = None
    # stiffness: LL(A) = l and indecomposable injectives are projective iff LL = l
    ll = alg.loewy_length()
    stiff = True
    for y in alg.vertex_labels:
        rec = prof.inj[y]
        if (rec["loewy_length"] == ll) != (rec["projective"] is not None):
            stiff = False
            break
    flags["stiff"] = ll if stiff else None
    alg.cache[key] = flags
    return flags


def is_d_auslander(alg, d, cap=DEFAULT_CAP):
    """gldim <= d+1 <= domdim (the correspondence-side indexing)."""
    prof = profile(alg, cap)
    return (
        isinstance(prof.gldim, int)
        and prof.gldim <= d + 1
        and dim_ge(prof.domdim, d + 1)
    )


def condition_g(alg, cap=DEFAULT_CAP):
    """Per-simple Gorenstein-condition report and the overall verdict."""
    pj = proj_inj_data(alg)
    flags = classify_flags(alg, cap)
    report = {}
    verdict = flags["iwanaga_gorenstein"]
    for x in range(alg.nvert):
        label = alg.vertex_labels[x]
        if pj["I_proj"][x] is not None:
            report[label] = {"status": "envelope-projective"}
            continue
        S = standard_module(alg, "simple", label)
        res = min_proj_resolution(S)
        res.extend(cap)
        degrees = {}
        for i in range(len(res.terms)):
            tab = ext_against_algebra(S, i)
            if tab:
                degrees[i] = tab
        if not res.finished:
            report[label] = {"status": "inconclusive", "degrees": degrees}
            if len(degrees) == 1:
                if verdict is not False:
                    verdict = Inconclusive(cap)
            else:
                verdict = False
            continue
        if len(degrees) == 1:
            (k, tab), = degrees.items()
            total = sum(tab.values())
            if total == 1 and k >= 1:
                report[label] = {"status": "gorenstein", "k": k, "value_at": next(iter(tab))}
                continue
        report[label] = {"status": "fails", "degrees": degrees}
        verdict = False
    return {"per_simple": report, "verdict": verdict}


class GradeBijection:
    def __init__(self, mapping, grades, route_a, route_b):
        self.mapping = mapping
        self.grades = grades
        self.route_a = route_a
        self.route_b = route_b

    def as_cycles(self):
        """Cycle decomposition on vertex labels (fixed points dropped)."""
        seen = set()
        cycles = []
        for start in self.mapping:
            if start in seen:
                continue
            cyc = [start]
            seen.add(start)
            cur = self.mapping[start]
            while cur != start:
                cyc.append(cur)
                seen.add(cur)
                cur = self.mapping[cur]
            if len(cyc) > 1:
                cycles.append(tuple(cyc))
        return cycles


def _op_cochain(res, alg, upto):
    """Hom(P_i, A) cochain over the opposite algebra: modules and maps."""
    B = op_algebra(alg)
    F = alg.field
    mods = []
    for i in range(min(upto + 1, len(res.terms))):
        term = res.terms[i]
        mods.append(
            direct_sum(B, [standard_module(B, "proj", alg.vertex_labels[x]) for x in term])
        )
    maps = [None]
    for i in range(1, len(mods)):
        src_term = res.terms[i - 1]
        tgt_term = res.terms[i]
        a = res.conn[i - 1]
        offs = []
        acc = [0] * B.nvert
        for x in tgt_term:
            offs.append(list(acc))
            for y in range(B.nvert):
                acc[y] += len(B.block(x, y))
        per_vertex = []
        for y in range(B.nvert):
            rows = []
            for k, xk in enumerate(src_term):
                for b in B.block(xk, y):
                    row = [F.zero] * mods[i].dims[y]
                    for j, xj in enumerate(tgt_term):
                        elt = a[k][j]
                        if elt is None or not any(elt):
                            continue
                        prod = B.multiply(elt, B.unit_vec(b))
                        blk = B.block(xj, y)
                        off = offs[j][y]
                        for t, bidx in enumerate(blk):
                            if prod[bidx]:
                                row[off + t] = F.add(row[off + t], prod[bidx])
                    rows.append(row)
            per_vertex.append(ExactMatrix(F, rows, mods[i].dims[y]) if rows
                              else ExactMatrix(F, [], mods[i].dims[y]))
        maps.append(per_vertex)
    return B, mods, maps


def ext_module_over_op(X, i, cap=DEFAULT_CAP):
    """Ext^i(X, A) as a right module over the opposite algebra."""
    alg = X.alg
    res = min_proj_resolution(X)
    res.extend(i + 1)
    B, mods, maps = _op_cochain(res, alg, i + 1)
    if i >= len(mods):
        from .modhom import FDModule

        return FDModule.zero(B)
    T = mods[i]
    F = alg.field
    # kernel of the outgoing map (rows at each vertex)
    if i + 1 < len(mods):
        out = maps[i + 1]
        ker_rows = {}
        for y in range(B.nvert):
            ker_rows[y] = [
                v for v in out[y].left_kernel_basis()
            ] if T.dims[y] else []
    else:
        ker_rows = {
            y: list(ExactMatrix.identity(F, T.dims[y]).rows) for y in range(B.nvert)
        }
    K, kvecs = submodule(T, ker_rows)
    if i == 0:
        return K
    # image of the incoming map, expressed in K coordinates
    inc = maps[i]
    spans = [CoordSpan(F, T.dims[y]) for y in range(B.nvert)]
    for y in range(B.nvert):
        for v in kvecs[y]:
            spans[y].insert(v)
    img_rows = {y: [] for y in range(B.nvert)}
    for y in range(B.nvert):
        for row in inc[y].rows:
            if any(row):
                coords = spans[y].coords(row)
                if coords is None:
                    raise FinhomError("image escapes kernel; complex not exact-compatible")
                img_rows[y].append(coords)
    Q, _ = quotient_module(K, img_rows)
    return Q


def grade_bijection(alg, cap=DEFAULT_CAP):
    """Both computation routes of the grade bijection; they must agree."""
    flags = classify_flags(alg, cap)
    if flags["dominant_ag"] is not True:
        raise NotDominantAG("grade bijection needs a dominant Auslander-Gorenstein algebra")
    prof = profile(alg, cap)
    # route B: pi(x) = endpoint of the coresolution of P_x; bijection S -> top pi^{-1}(I(S))
    pi = {}
    for x in range(alg.nvert):
        label = alg.vertex_labels[x]
        P = standard_module(alg, "proj", label)
        cores = min_inj_coresolution(P)
        cores.extend(cap)
        last = cores.terms[-1]
        if len(last) != 1:
            raise FinhomError("coresolution endpoint not indecomposable")
        pi[label] = alg.vertex_labels[last[0]]
    if len(set(pi.values())) != alg.nvert:
        raise FinhomError("pi is not a bijection")
    route_b = {v: k for k, v in pi.items()}
    # route A: S -> soc of Ext^{grade S}(S, A) over the opposite algebra
    route_a = {}
    grades = {}
    for x in range(alg.nvert):
        label = alg.vertex_labels[x]
        S = standard_module(alg, "simple", label)
        g = grade(S, cap)
        if not isinstance(g, int):
            raise FinhomError("grade not determined within cap")
        grades[label] = g
        E = ext_module_over_op(S, g, cap)
        soc = E.socle_dims()
        if sum(soc) != 1:
            raise FinhomError("Ext socle not simple; grade bijection undefined")
        y = next(i for i, d in enumerate(soc) if d)
        route_a[label] = alg.vertex_labels[y]
    if route_a != route_b:
        raise FinhomError(f"grade bijection routes disagree: {route_a} vs {route_b}")
    return GradeBijection(route_a, grades, route_a, route_b)


def grade_category_check(alg, cap=DEFAULT_CAP):
    """Simple-level check of the grade-category description via socle labels.

    For dominant numbers d_0 = 0 < d_1 < ...: a simple has grade >= d_i iff
    its vertex is not among the socle labels of the coresolution stages
    I^{d_j}, j < i.
    """
    flags = classify_flags(alg, cap)
    if flags["dominant_ag"] is not True:
        raise NotDominantAG("grade categories need a dominant Auslander-Gorenstein algebra")
    prof = profile(alg, cap)
    dns = sorted(prof.dominant_numbers)
    grades = {}
    for x in range(alg.nvert):
        label = alg.vertex_labels[x]
        S = standard_module(alg, "simple", label)
        grades[label] = grade(S, cap)
    table = {"grades": grades, "dominant_numbers": dns, "levels": []}
    for i, d in enumerate(dns):
        excluded = set()
        for j in range(i):
            for y in prof.coresolution_stages.get(dns[j], []):
                excluded.add(alg.vertex_labels[y])
        level = {"d": d, "excluded_socle_labels": sorted(excluded, key=str)}
        ok = True
        for label, g in grades.items():
            has_grade = isinstance(g, int) and g >= d
            if has_grade != (label not in excluded):
                ok = False
        level["consistent"] = ok
        table["levels"].append(level)
    table["grades_subset_of_dn"] = all(
        isinstance(g, int) and g in prof.dominant_numbers for g in grades.values()
    )
    table["all_consistent"] = all(lv["consistent"] for lv in table["levels"])
    return table
