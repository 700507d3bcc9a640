"""Tor and Ext modules over the declared ring, with full profiles.

Homology of a complex of finitely presented modules is presented as a
subquotient: generators of the kernel come from syzygies of the outgoing map
stacked with the target's relations, and relations come from syzygies of
those generators stacked with the incoming map and the term's own relations.
Tor_i(M, N) is the homology of (minimal resolution of M) tensor N, Ext^i the
cohomology of Hom(resolution, N); both run through the same machinery.

"Vanishes for all i >= 1" is never asserted from a finite window alone: each
profile carries an evidence tier: (a) finite projective dimension, (b)
window vanishing plus resolution periodicity covering the tail, (c) window
vanishing plus an applicable rigidity instance, (d) window only.

Each Tor/Ext call is an isolated computation over immutable inputs, so
independent calls may run concurrently; the dense verification path in
``oracle`` shares nothing with this pipeline by construction.
"""

from __future__ import annotations

from .fmodules import ModulePresentation, PolyMatrix
from .groebner import Element, FreeModule, syzygy_generators
from .resolutions import FreeResolution, detect_periodicity, resolve
from .rings import INF, NEG_INF, RingPresentation


def _restricted_syzygies(columns, col_degs, target: FreeModule, quotient, first: int):
    """Syzygies of the columns, restricted to the first ``first`` coordinates."""
    syz, degs = syzygy_generators(columns, col_degs, target, quotient)
    out_free = FreeModule(target.ring, tuple(col_degs[:first]))
    out, out_degs = [], []
    for s, d in zip(syz, degs):
        terms = {(p, m): c for (p, m), c in s.terms.items() if p < first}
        if terms:
            out.append(Element(out_free, terms))
            out_degs.append(d)
    return out, out_degs


def _columns_of(mat: PolyMatrix, free: FreeModule):
    return mat.column_elements(free)


def subquotient_presentation(ring: RingPresentation, gen_degs, outgoing: PolyMatrix | None,
                             target_rels: PolyMatrix | None, incoming: PolyMatrix | None,
                             own_rels: PolyMatrix | None, label="H") -> ModulePresentation:
    """Presentation of ker(outgoing) / (im(incoming) + im(own_rels)).

    The ambient term T has generator coordinates R^{gen_degs}; ``outgoing``
    maps T's generator space into the next term's (whose relations are
    ``target_rels``), and ``incoming`` maps the previous term's generator
    space in.  Any of the matrices may be None (no constraint / no image).
    """
    pr = ring.poly_ring
    p_own = len(gen_degs)
    if outgoing is None:
        ker_cols = [FreeModule(pr, tuple(gen_degs)).basis_element(i) for i in range(p_own)]
        ker_degs = list(gen_degs)
    else:
        tgt_free = FreeModule(pr, outgoing.row_degs)
        cols = _columns_of(outgoing, tgt_free)
        degs = list(outgoing.col_degs)
        if target_rels is not None and target_rels.ncols:
            cols += _columns_of(target_rels, tgt_free)
            degs += list(target_rels.col_degs)
        ker_cols, ker_degs = _restricted_syzygies(cols, degs, tgt_free,
                                                  ring.quotient_gens, p_own)
    own_free = FreeModule(pr, tuple(gen_degs))
    denom_cols, denom_degs = [], []
    if incoming is not None and incoming.ncols:
        denom_cols += _columns_of(incoming, own_free)
        denom_degs += list(incoming.col_degs)
    if own_rels is not None and own_rels.ncols:
        denom_cols += _columns_of(own_rels, own_free)
        denom_degs += list(own_rels.col_degs)
    if not ker_cols:
        return ModulePresentation.zero(ring, label=label)
    all_cols = [Element(own_free, dict(k.terms)) for k in ker_cols] + denom_cols
    all_degs = list(ker_degs) + denom_degs
    rel_cols, rel_degs = _restricted_syzygies(all_cols, all_degs, own_free,
                                              ring.quotient_gens, len(ker_cols))
    gen_free = FreeModule(pr, tuple(ker_degs))
    mat = PolyMatrix.from_columns(pr, tuple(ker_degs),
                                  [Element(gen_free, dict(r.terms)) for r in rel_cols],
                                  tuple(rel_degs))
    mat = mat.map_entries(ring.reduce)
    return ModulePresentation(ring, tuple(ker_degs), mat, label=label)


def kernel_of_map(psi: PolyMatrix, source: ModulePresentation,
                  target: ModulePresentation, label="ker") -> ModulePresentation:
    """Presentation of ker(source -> target) for a map given on generators."""
    source.check_same_ring(target)
    return subquotient_presentation(source.ring, source.gen_degs, psi,
                                    target.relations, None, source.relations,
                                    label=label)


def cokernel_of_map(psi: PolyMatrix, target: ModulePresentation,
                    label="coker") -> ModulePresentation:
    """Presentation of target / im(psi)."""
    mat = target.relations.hstack(psi)
    return ModulePresentation(target.ring, target.gen_degs, mat, label=label)


# ---------------------------------------------------------------------------
# tensor / Hom terms of a resolution

def _kron_map(d: PolyMatrix, coeff_degs, pr) -> PolyMatrix:
    """d tensor identity: positions (i, k) with degrees d_deg[i] + coeff_degs[k]."""
    nc = len(coeff_degs)
    rows = tuple(rd + cd for rd in d.row_degs for cd in coeff_degs)
    cols = tuple(cd0 + cd for cd0 in d.col_degs for cd in coeff_degs)
    z = pr.zero()
    ents = [[z] * len(cols) for _ in rows]
    for i in range(d.nrows):
        for j in range(d.ncols):
            p = d.entries[i][j]
            if p:
                for k in range(nc):
                    ents[i * nc + k][j * nc + k] = p
    return PolyMatrix(pr, rows, cols, ents, check=False)


def _block_relations(position_degs, B: PolyMatrix, pr) -> PolyMatrix:
    """Relations of a direct sum of twisted copies of coker(B)."""
    nk = B.nrows
    rows = tuple(a + rd for a in position_degs for rd in B.row_degs)
    cols = tuple(a + cd for a in position_degs for cd in B.col_degs)
    z = pr.zero()
    ents = [[z] * len(cols) for _ in rows]
    for t in range(len(position_degs)):
        for k in range(nk):
            for c in range(B.ncols):
                p = B.entries[k][c]
                if p:
                    ents[t * nk + k][t * B.ncols + c] = p
    return PolyMatrix(pr, rows, cols, ents, check=False)


class HomologyEntry:
    """Minimal presentation and numeric profile of one Tor/Ext module."""

    __slots__ = ("index", "presentation", "vanishes", "betti0", "depth", "dim",
                 "finite_length", "hilbert", "initial_degree")

    def __init__(self, index, presentation, degree_bound):
        self.index = index
        self.presentation = presentation.minimalize()
        self.vanishes = self.presentation.n_gens == 0
        self.betti0 = self.presentation.n_gens
        profile = self.presentation.module_profile()
        self.depth = profile.depth
        self.dim = profile.dim
        self.finite_length = profile.length != INF
        self.initial_degree = self.presentation.initial_degree()
        lo = min(0, self.initial_degree) if self.initial_degree is not None else 0
        self.hilbert = self.presentation.hilbert_function(degree_bound, dmin=lo)

    def normalized_hilbert(self):
        """Hilbert values listed from the initial degree (empty if zero)."""
        if self.initial_degree is None:
            return ()
        top = max(self.hilbert)
        return tuple(self.hilbert[d] for d in range(self.initial_degree, top + 1))

    def as_dict(self):
        def enc(v):
            return "inf" if v == INF else ("-inf" if v == NEG_INF else v)
        return {"index": self.index, "vanishes": self.vanishes, "betti0": self.betti0,
                "depth": enc(self.depth), "dim": enc(self.dim),
                "finite_length": self.finite_length,
                "initial_degree": self.initial_degree,
                "hilbert": list(self.normalized_hilbert())}

    def graded_data_equal(self, other: "HomologyEntry") -> bool:
        """Iso-invariant fingerprint equality (up to the shared window)."""
        if self.vanishes and other.vanishes:
            return True
        if self.vanishes != other.vanishes:
            return False
        if (self.betti0 != other.betti0 or self.depth != other.depth
                or self.dim != other.dim):
            return False
        a, b = self.normalized_hilbert(), other.normalized_hilbert()
        n = min(len(a), len(b))
        return a[:n] == b[:n]


class TorProfile:
    """Tor_i(M, N) for 1 <= i <= bound, plus the Tor_0 = tensor slot."""

    __slots__ = ("M", "N", "ring", "bound", "degree_bound", "side", "entries",
                 "tor0", "vanishing", "periodicity", "resolution")

    def __init__(self, M, N, ring, bound, degree_bound, side, entries, tor0,
                 vanishing, periodicity, resolution):
        self.M = M
        self.N = N
        self.ring = ring
        self.bound = bound
        self.degree_bound = degree_bound
        self.side = side
        self.entries = entries
        self.tor0 = tor0
        self.vanishing = vanishing
        self.periodicity = periodicity
        self.resolution = resolution

    def entry(self, i: int) -> HomologyEntry:
        if i == 0:
            return self.tor0
        return self.entries[i - 1]

    def vanishes(self, i: int) -> bool:
        return self.entry(i).vanishes

    def all_vanish_in_window(self) -> bool:
        return all(e.vanishes for e in self.entries)

    def vanish_range(self, lo: int, hi: int) -> bool:
        return all(self.entry(i).vanishes for i in range(lo, hi + 1))

    def as_dict(self):
        return {"module": self.M.label, "argument": self.N.label,
                "ring": self.ring.label, "bound": self.bound,
                "degree_bound": self.degree_bound, "resolved_side": self.side,
                "tor0": self.tor0.as_dict(),
                "entries": [e.as_dict() for e in self.entries],
                "vanishing": self.vanishing,
                "periodicity": self.periodicity}


def _vanishing_evidence(entries, res: FreeResolution, ring: RingPresentation,
                        bound: int) -> dict:
    all_zero = all(e.vanishes for e in entries)
    if not all_zero:
        return {"all_vanish_in_window": False, "tier": None,
                "detail": "nonzero homology in window"}
    if res.terminated:
        return {"all_vanish_in_window": True, "tier": "pd-finite",
                "detail": f"resolution terminates at step {res.length()}"}
    if res.steps_computed() >= 6:
        per = detect_periodicity(res)
        if per["periodic"] and bound >= per["onset"] + per["period"] - 1:
            return {"all_vanish_in_window": True, "tier": "periodicity",
                    "detail": f"resolution periodic (period {per['period']}, "
                              f"onset {per['onset']}); window covers one period"}
    if ring.certified and bound >= ring.codim + 1:
        return {"all_vanish_in_window": True, "tier": "rigidity",
                "detail": f"{ring.codim + 1} consecutive vanishing steps over a "
                          f"codimension-{ring.codim} complete intersection"}
    return {"all_vanish_in_window": True, "tier": "window-only",
            "detail": "vanishing observed in the window only"}


def tor_profile(M: ModulePresentation, N: ModulePresentation, bound: int,
                degree_bound: int = 8, side: str = "left") -> TorProfile:
    """Tor_i(M, N) for 1 <= i <= bound via a minimal resolution.

    side='left' resolves M, side='right' resolves N (the symmetric
    recomputation used for cross-checks).
    """
    M.check_same_ring(N)
    if bound < 1:
        raise ValueError("bound must be >= 1")
    if side == "right":
        prof = tor_profile(N, M, bound, degree_bound, side="left")
        return TorProfile(M, N, M.ring, bound, degree_bound, "right", prof.entries,
                          prof.tor0, prof.vanishing, prof.periodicity, prof.resolution)
    ring = M.ring
    pr = ring.poly_ring
    res = resolve(M, steps=bound + 1)
    Nmin = N.minimalize()
    B = Nmin.relations
    n_degs = Nmin.gen_degs

    def term_degs(i):
        return tuple(a + b for a in res.step_degrees(i) for b in n_degs)

    def term_rels(i):
        if not res.step_degrees(i):
            return None
        return _block_relations(res.step_degrees(i), B, pr)

    def v_map(i):
        d = res.differential(i)
        if d is None:
            return None
        return _kron_map(d, n_degs, pr)

    entries = []
    for i in range(1, bound + 1):
        if not res.step_degrees(i) or not n_degs:
            pres = ModulePresentation.zero(ring, label=f"Tor{i}({M.label},{N.label})")
        else:
            pres = subquotient_presentation(
                ring, term_degs(i), v_map(i), term_rels(i - 1), v_map(i + 1),
                term_rels(i), label=f"Tor{i}({M.label},{N.label})")
        entries.append(HomologyEntry(i, pres, degree_bound))
    tensor = M.tensor(N)
    tor0 = HomologyEntry(0, tensor, degree_bound)
    vanishing = _vanishing_evidence(entries, res, ring, bound)
    periodicity = []
    for i in range(1, bound - 1):
        a, b = entries[i - 1], entries[i + 1]
        rec = {"i": i, "distance": 2, "equal": a.graded_data_equal(b)}
        if a.initial_degree is not None and b.initial_degree is not None:
            rec["twist"] = b.initial_degree - a.initial_degree
        periodicity.append(rec)
    return TorProfile(M, N, ring, bound, degree_bound, side, entries, tor0,
                      vanishing, periodicity, res)


def ext_modules(M: ModulePresentation, N: ModulePresentation, lo: int, hi: int) -> dict:
    """Ext^i(M, N) presentations for lo <= i <= hi, via Hom(resolution, N)."""
    M.check_same_ring(N)
    ring = M.ring
    pr = ring.poly_ring
    res = resolve(M, steps=hi + 1)
    Nmin = N.minimalize()
    B = Nmin.relations
    n_degs = Nmin.gen_degs

    def hom_degs(i):
        return tuple(-a + b for a in res.step_degrees(i) for b in n_degs)

    def hom_rels(i):
        degs = tuple(-a for a in res.step_degrees(i))
        if not degs:
            return None
        return _block_relations(degs, B, pr)

    def w_map(i):
        """Hom(F_i, N) -> Hom(F_{i+1}, N), precomposition with d_{i+1}."""
        d = res.differential(i + 1)
        if d is None:
            return None
        return _kron_map(d.transpose(), n_degs, pr)

    out = {}
    for i in range(lo, hi + 1):
        if not res.step_degrees(i) or not n_degs:
            out[i] = ModulePresentation.zero(ring, label=f"Ext{i}({M.label},{N.label})")
            continue
        incoming = w_map(i - 1) if i >= 1 else None
        pres = subquotient_presentation(
            ring, hom_degs(i), w_map(i), hom_rels(i + 1), incoming, hom_rels(i),
            label=f"Ext{i}({M.label},{N.label})")
        out[i] = pres
    return out


def ext_profile(M: ModulePresentation, N: ModulePresentation, bound: int,
                degree_bound: int = 8) -> list:
    """HomologyEntry list for Ext^i(M, N), i = 1..bound."""
    mods = ext_modules(M, N, 1, bound)
    return [HomologyEntry(i, mods[i], degree_bound) for i in range(1, bound + 1)]


def ext_ambient_dimensions(M: ModulePresentation) -> dict:
    """Support dimensions of Ext^j_S(M, S) over the ambient ring, j >= 1.

    Feeds the depth-condition criterion: the resolution is finite, so this
    is a complete list through the projective dimension.
    """
    amb = M.ambient_presentation()
    nv = M.ring.poly_ring.nvars
    free_S = ModulePresentation.free(amb.ring, (0,))
    mods = ext_modules(amb, free_S, 1, nv)
    dims = {}
    for j, pres in mods.items():
        m = pres.minimalize()
        dims[j] = m.dimension() if m.n_gens else NEG_INF
    return dims


class DepthFormulaReport:
    """Both sides of depth M + depth N = depth R + depth(M tensor N).

    ``holds`` is the raw equality; ``asserted`` additionally requires the
    certified vanishing hypothesis, and ``tier`` states which certificate
    backed it (the report never asserts from a bare window).  When the
    resolution terminated, ``shifted_form`` also evaluates the classical
    shifted variant depth M + depth N = depth R + depth(Tor_q) - q at the
    top nonvanishing index q (applicable when q = 0 or that depth is <= 1).
    """

    __slots__ = ("depth_M", "depth_N", "depth_ring", "depth_tensor",
                 "left", "right", "holds", "hypothesis_met", "tier", "asserted",
                 "shifted_form")

    def __init__(self, depth_M, depth_N, depth_ring, depth_tensor,
                 hypothesis_met, tier, shifted_form=None):
        self.depth_M = depth_M
        self.depth_N = depth_N
        self.depth_ring = depth_ring
        self.depth_tensor = depth_tensor
        self.left = depth_M + depth_N
        self.right = depth_ring + depth_tensor
        self.holds = self.left == self.right
        self.hypothesis_met = hypothesis_met
        self.tier = tier
        self.asserted = bool(hypothesis_met and self.holds)
        self.shifted_form = shifted_form

    def as_dict(self):
        def enc(v):
            return "inf" if v == INF else ("-inf" if v == NEG_INF else v)
        return {"depth_M": enc(self.depth_M), "depth_N": enc(self.depth_N),
                "depth_ring": enc(self.depth_ring), "depth_tensor": enc(self.depth_tensor),
                "left": enc(self.left), "right": enc(self.right),
                "holds": self.holds, "hypothesis_met": self.hypothesis_met,
                "tier": self.tier, "asserted": self.asserted,
                "shifted_form": self.shifted_form}

    def __repr__(self):
        return (f"DepthFormulaReport({self.depth_M}+{self.depth_N} vs "
                f"{self.depth_ring}+{self.depth_tensor}, holds={self.holds}, "
                f"tier={self.tier})")


def ring_depth(ring: RingPresentation) -> float:
    """Depth of R as a module over itself (ambient Auslander-Buchsbaum)."""
    return ModulePresentation.free(ring, (0,)).depth()


def depth_formula_check(M: ModulePresentation, N: ModulePresentation,
                        bound: int, degree_bound: int = 8) -> DepthFormulaReport:
    """Depth-formula report; the vanishing hypothesis carries its tier."""
    profile = tor_profile(M, N, bound, degree_bound)
    tier = profile.vanishing["tier"]
    hypothesis_met = profile.vanishing["all_vanish_in_window"] and tier in (
        "pd-finite", "periodicity", "rigidity")
    tensor = M.tensor(N)
    depth_M, depth_N = M.depth(), N.depth()
    depth_R = ring_depth(M.ring)
    shifted = None
    if profile.resolution.terminated and profile.resolution.length() <= bound:
        q = next((i for i in range(bound, 0, -1) if not profile.vanishes(i)), 0)
        depth_q = tensor.depth() if q == 0 else profile.entry(q).depth
        applicable = q == 0 or depth_q <= 1
        shifted = {"q": q,
                   "depth_tor_q": "inf" if depth_q == INF else depth_q,
                   "applicable": applicable,
                   "holds": (depth_M + depth_N == depth_R + depth_q - q)
                   if applicable and depth_q != INF else None}
    return DepthFormulaReport(depth_M, depth_N, depth_R, tensor.depth(),
                              hypothesis_met, tier, shifted_form=shifted)
