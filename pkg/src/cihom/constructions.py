"""Pushforward and quasi-lifting constructions with exactness certificates.

The pushforward of a torsion-free module M embeds M into a free module
through a minimal generating set of its dual and takes the cokernel; the
quasi-lifting lifts that cokernel's kernel one ring up, splitting off a
designated quotient generator.  Both constructions certify their short
exact sequences computationally (kernel, cokernel and middle homology all
minimalize to zero) rather than by fiat, and downstream consumers only use
iso-invariant data, so the non-canonical choice of generators is harmless.
"""

from __future__ import annotations

from .fmodules import ModulePresentation, PolyMatrix
from .groebner import Element, FreeModule, syzygy_generators
from .homology import (
    cokernel_of_map,
    kernel_of_map,
    subquotient_presentation,
)
from .rings import INF, HypothesisMissingError, RingPresentation


class TorsionInputError(HypothesisMissingError):
    """The construction requires a torsion-free module; carries a witness."""

    def __init__(self, module, kernel):
        self.module = module
        self.kernel = kernel
        super().__init__(
            f"{module.label} has torsion: the biduality kernel has "
            f"{kernel.minimalize().n_gens} minimal generator(s)")


def _require_torsion_free(M: ModulePresentation):
    report = M.biduality_report()
    if not report.torsion_free:
        raise TorsionInputError(M, report.kernel)
    return report


class PushforwardResult:
    """M embedded in a free module by its dual's minimal generators.

    Fields: the embedding matrix on generators, the free rank m = beta_0 of
    the dual, the cokernel, and the exactness certificate for
    0 -> M -> R^(m) -> cokernel -> 0.
    """

    __slots__ = ("M", "M1", "u", "m", "free_degs", "certificate")

    def __init__(self, M, M1, u, m, free_degs, certificate):
        self.M = M
        self.M1 = M1
        self.u = u
        self.m = m
        self.free_degs = free_degs
        self.certificate = certificate

    @property
    def exact(self) -> bool:
        return all(self.certificate.values())

    def as_dict(self):
        return {"module": self.M.label, "m": self.m,
                "pushforward_gens": self.M1.minimalize().n_gens,
                "certificate": dict(self.certificate)}

    def __repr__(self):
        return f"PushforwardResult({self.M.label}: m={self.m}, exact={self.exact})"


def pushforward(M: ModulePresentation) -> PushforwardResult:
    """The short exact sequence 0 -> M -> R^(m) -> M1 -> 0.

    Requires a torsion-free module over a certified complete intersection;
    m is the minimal generator count of Hom(M, R) and the embedding sends a
    generator to its tuple of values under those dual generators.
    """
    M.ring.require_certified()
    Mmin = M.minimalize()
    if Mmin.n_gens == 0:
        zero = ModulePresentation.zero(M.ring, label=f"{M.label}1")
        cert = {"kernel_zero": True, "middle_exact": True, "cokernel_by_construction": True}
        return PushforwardResult(Mmin, zero, PolyMatrix.zero(M.ring.poly_ring, (), ()),
                                 0, (), cert)
    _require_torsion_free(Mmin)
    pr = M.ring.poly_ring
    dual_free, dcols, ddegs = Mmin.dual_generators()
    m = len(dcols)
    free_degs = tuple(-g for g in ddegs)
    # embedding on generators: column i lists the dual generators' values at e_i
    ents = [[dcols[k].component(i) for i in range(Mmin.n_gens)] for k in range(m)]
    u = PolyMatrix(pr, free_degs, Mmin.gen_degs, ents)
    M1 = ModulePresentation(M.ring, free_degs, u, label=f"{M.label}1").minimalize()
    free_pres = ModulePresentation.free(M.ring, free_degs, label="freecover")
    ker = kernel_of_map(u, Mmin, free_pres).minimalize()
    # middle homology of M -> R^(m) -> M1 at the free spot
    ident = PolyMatrix.identity(pr, free_degs)
    middle = subquotient_presentation(M.ring, free_degs, ident,
                                      ModulePresentation(M.ring, free_degs, u).relations,
                                      u, None, label="middle").minimalize()
    cert = {"kernel_zero": ker.n_gens == 0,
            "middle_exact": middle.n_gens == 0,
            "cokernel_by_construction": True}
    return PushforwardResult(Mmin, M1, u, m, free_degs, cert)


def pushforward_chain(M: ModulePresentation, k: int) -> dict:
    """Iterated pushforwards M = M_0, M_1, ..., stopping early on torsion.

    Returns the modules, the per-step certificates and an early-stop report
    when some step fails the torsion-free precondition.
    """
    modules = [M.minimalize()]
    results = []
    stopped = None
    for step in range(1, k + 1):
        current = modules[-1]
        try:
            pf = pushforward(current)
        except TorsionInputError as err:
            stopped = {"step": step - 1, "module": current.label,
                       "witness_gens": err.kernel.minimalize().n_gens}
            break
        results.append(pf)
        modules.append(pf.M1.minimalize())
    return {"modules": modules, "pushforwards": results, "stopped": stopped}


class QuasiLiftingResult:
    """The lift E over the intermediate ring, with both exact sequences.

    E is kept in its raw presentation (generators = embedding columns plus
    the split generator times the basis), so the connecting maps of the
    sequence 0 -> M1 -> E/fE -> M -> 0 are literal block matrices; a
    minimalized copy is used for profiles.
    """

    __slots__ = ("M", "M1", "E", "E_min", "intermediate", "split_poly",
                 "certificate", "depth_check", "free_off_split")

    def __init__(self, M, M1, E, E_min, intermediate, split_poly, certificate,
                 depth_check, free_off_split):
        self.M = M
        self.M1 = M1
        self.E = E
        self.E_min = E_min
        self.intermediate = intermediate
        self.split_poly = split_poly
        self.certificate = certificate
        self.depth_check = depth_check
        self.free_off_split = free_off_split

    @property
    def exact(self) -> bool:
        return all(self.certificate.values())

    def as_dict(self):
        return {"module": self.M.label, "intermediate": self.intermediate.label,
                "split": self.split_poly.text(),
                "lift_gens": self.E_min.n_gens,
                "certificate": dict(self.certificate),
                "depth_check": self.depth_check,
                "free_off_split": self.free_off_split}

    def __repr__(self):
        return (f"QuasiLiftingResult({self.M.label} over {self.intermediate.label}, "
                f"exact={self.exact})")


class InvalidSplitError(ValueError):
    pass


def quasi_lifting(M: ModulePresentation, split) -> QuasiLiftingResult:
    """Quasi-lifting of M with respect to R = S'/(split).

    ``split`` designates one quotient generator (by index or by polynomial);
    S' is the ambient ring modulo the remaining generators and must itself be
    a certified complete intersection.  Certifies exactness of
    0 -> E -> S'^(m) -> M1 -> 0 and of 0 -> M1 -> E/fE -> M -> 0, and checks
    the depth relation depth_{S'}(E) = depth_R(M1) + 1 when M1 is nonzero.
    """
    ring = M.ring
    ring.require_certified()
    gens = list(ring.quotient_gens)
    if isinstance(split, int):
        if not 0 <= split < len(gens):
            raise InvalidSplitError(f"split index {split} out of range")
        f = gens[split]
    else:
        matches = [g for g in gens if g == split]
        if not matches:
            raise InvalidSplitError(f"{split} is not a quotient generator of {ring.label}")
        f = matches[0]
    rest = [g for g in gens if g is not f]
    intermediate = RingPresentation(ring.poly_ring, rest,
                                    label=f"{ring.label}'")
    if not intermediate.certified:
        raise InvalidSplitError(
            f"remaining generators do not form a regular sequence: "
            f"{intermediate.verify_regular_sequence().as_dict()}")

    pf = pushforward(M)
    Mmin = pf.M
    m = pf.m
    free_degs = pf.free_degs
    pr = ring.poly_ring
    fd = f.degree()
    z = pr.zero()

    # E = ker(S'^(m) -> M1): generated by the embedding columns and f*basis
    col_entries = []
    col_degs = []
    for j in range(Mmin.n_gens):
        col_entries.append([pf.u.entries[k][j] for k in range(m)])
        col_degs.append(Mmin.gen_degs[j])
    for k in range(m):
        col_entries.append([f if t == k else z for t in range(m)])
        col_degs.append(free_degs[k] + fd)
    free_m = FreeModule(pr, free_degs)
    cols = [free_m.from_polys(c) for c in col_entries]
    syz, sdegs = syzygy_generators(cols, col_degs, free_m, intermediate.quotient_gens)
    gen_free = FreeModule(pr, tuple(col_degs))
    rels = PolyMatrix.from_columns(pr, tuple(col_degs),
                                   [Element(gen_free, dict(s.terms)) for s in syz],
                                   tuple(sdegs))
    rels = rels.map_entries(intermediate.reduce)
    E = ModulePresentation(intermediate, tuple(col_degs), rels, label=f"lift({M.label})")
    E_min = E.minimalize()

    # (QL) exactness: inclusion composed with projection vanishes, and the
    # middle homology of E -> S'^(m) -> M1 is zero over S'
    incl = PolyMatrix(pr, free_degs, tuple(col_degs),
                      [[col_entries[j][k] for j in range(len(col_degs))] for k in range(m)])
    M1_over_int = ModulePresentation(intermediate, free_degs, incl, label="M1|S'")
    middle_ql = subquotient_presentation(
        intermediate, free_degs, PolyMatrix.identity(pr, free_degs),
        M1_over_int.relations, incl, None, label="QLmiddle").minimalize()
    incl_kernel = kernel_of_map(incl, E, ModulePresentation.free(intermediate, free_degs)
                                ).minimalize()

    # connecting sequence over R: 0 -> M1 -> E/fE -> M -> 0 with block maps
    E_over_R = ModulePresentation(ring, tuple(col_degs), rels, label=f"{E.label}/f")
    p = Mmin.n_gens
    alpha = PolyMatrix.zero(pr, tuple(col_degs), tuple(d + fd for d in free_degs))
    for k in range(m):
        alpha.entries[p + k][k] = pr.one()
    M1_twist = pf.M1.twist(fd)
    beta = PolyMatrix.zero(pr, Mmin.gen_degs, tuple(col_degs))
    for j in range(p):
        beta.entries[j][j] = pr.one()
    alpha_kernel = kernel_of_map(alpha, M1_twist, E_over_R).minimalize()
    beta_coker = cokernel_of_map(beta, Mmin).minimalize()
    middle_conn = subquotient_presentation(
        ring, tuple(col_degs), beta, Mmin.relations, alpha,
        E_over_R.relations, label="connmiddle").minimalize()

    certificate = {
        "ql_kernel_by_construction": True,
        "ql_inclusion_injective": incl_kernel.n_gens == 0,
        "ql_middle_exact": middle_ql.n_gens == 0,
        "conn_alpha_injective": alpha_kernel.n_gens == 0,
        "conn_beta_surjective": beta_coker.n_gens == 0,
        "conn_middle_exact": middle_conn.n_gens == 0,
    }

    M1_min = pf.M1.minimalize()
    if M1_min.n_gens:
        dE = E_min.depth()
        dM1 = M1_min.depth()
        depth_check = {"depth_lift": dE, "depth_pushforward": dM1,
                       "holds": dE == dM1 + 1}
    else:
        depth_check = {"depth_lift": E_min.depth(), "depth_pushforward": INF,
                       "holds": True}

    free_off_split = _free_off_hypersurface(E_min, intermediate, f)
    return QuasiLiftingResult(Mmin, pf.M1, E, E_min, intermediate, f,
                              certificate, depth_check, free_off_split)


def _free_off_hypersurface(E: ModulePresentation, intermediate: RingPresentation,
                           f, power_bound: int = 8) -> dict:
    """Spot check that E localizes free away from V(f): the non-free locus
    must be contained in V(f), tested by radical membership of f through a
    bounded power ladder (recorded as spot-checked, not proven)."""
    codim = E.nonfree_locus_codim()
    if codim == INF:
        return {"status": "free-everywhere", "ok": True}
    from .rings import ideal_groebner, ideal_contains
    ext1_fitt = _nonfree_locus_ideal(E)
    gb = ideal_groebner(intermediate.poly_ring,
                        list(intermediate.quotient_gens) + ext1_fitt)
    power = intermediate.poly_ring.one()
    for k in range(1, power_bound + 1):
        power = power * f
        if ideal_contains(gb, power):
            return {"status": f"nonfree-locus inside V(split): f^{k} in the locus ideal",
                    "ok": True, "power": k}
    return {"status": "inconclusive within power bound", "ok": False}


def _nonfree_locus_ideal(E: ModulePresentation):
    from .homology import ext_modules
    ext1 = ext_modules(E, E.first_syzygy(), 1, 1)[1].minimalize()
    if ext1.n_gens == 0:
        return [E.ring.poly_ring.one()]
    return ext1.fitting_ideal(0)
