import random

import pytest

from cihom.fields import PrimeField
from cihom.fmodules import ModulePresentation, equal_hilbert_functions
from cihom.polynomials import PolyRing, monomials_of_degree
from cihom.rings import INF, NEG_INF, HypothesisMissingError, RingPresentation

F = PrimeField(32003)


# -- minimalize --------------------------------------------------------------

def test_minimalize_unit_relation_kills_generator(ring_two_nodes):
    M = ModulePresentation.from_relations(ring_two_nodes, (0,),
                                          [[ring_two_nodes.poly_ring.one()]])
    assert M.is_zero_module()


def test_minimalize_keeps_nonunit_presentation(mod_M_two_nodes):
    m = mod_M_two_nodes.minimalize()
    assert m.n_gens == 1 and m.n_rels == 2


def test_minimalize_unit_row_elimination(ring_two_nodes):
    # R (+) coker[y u], padded with a redundant generator h = y * (free gen):
    # the unit entry in h's defining relation must get pruned away.
    pr = ring_two_nodes.poly_ring
    y, u = pr.variable("y"), pr.variable("u")
    zero, one = pr.zero(), pr.one()
    M = ModulePresentation.from_relations(
        ring_two_nodes, (0, 0, 1),
        [[y, zero, -one], [zero, y, zero], [zero, u, zero]])
    m = M.minimalize()
    assert m.n_gens == 2 and m.n_rels == 2
    plain = ModulePresentation.from_relations(ring_two_nodes, (0, 0),
                                              [[zero, y], [zero, u]])
    assert equal_hilbert_functions(m, plain, 8)


def test_minimalize_preserves_hilbert(mod_N_two_nodes):
    raw = mod_N_two_nodes
    m = raw.minimalize()
    assert equal_hilbert_functions(raw, m, 8)


# -- dual and biduality -------------------------------------------------------

def test_dual_of_twisted_free(ring_two_nodes):
    M = ModulePresentation.free(ring_two_nodes, (3,))
    assert M.dual().gen_degs == (-3,)


def test_dual_of_zero(ring_two_nodes):
    assert ModulePresentation.zero(ring_two_nodes).dual().is_zero_module()


def test_dual_of_quadric_module_nonzero(mod_quadric):
    assert not mod_quadric.dual().is_zero_module()


def test_free_module_reflexive(ring_two_nodes):
    M = ModulePresentation.free(ring_two_nodes, (0, 2))
    rep = M.biduality_report()
    assert rep.reflexive and rep.torsion_free


def test_mcm_over_gorenstein_reflexive(mod_M_two_nodes):
    rep = mod_M_two_nodes.biduality_report()
    assert rep.reflexive


def test_tensor_with_dual_not_reflexive(mod_quadric):
    tensor = mod_quadric.tensor(mod_quadric.dual())
    assert not tensor.biduality_report().reflexive


def test_biduality_needs_certified_ring():
    pr = PolyRing(F, ["x", "y"])
    x = pr.variable("x")
    bad = RingPresentation(pr, [x * x, x * x], label="bad")
    M = ModulePresentation.free(bad, (0,))
    with pytest.raises(HypothesisMissingError):
        M.biduality_report()


# -- tensor --------------------------------------------------------------------

def test_tensor_with_ring_is_identity(mod_N_two_nodes, ring_two_nodes):
    R1 = ModulePresentation.free(ring_two_nodes, (0,))
    assert equal_hilbert_functions(R1.tensor(mod_N_two_nodes), mod_N_two_nodes, 8)


def test_tensor_of_cyclics(periodic_pair):
    M, N = periodic_pair
    assert equal_hilbert_functions(M.tensor(N), M, 8)


def test_tensor_depth_quadric(mod_quadric):
    assert mod_quadric.tensor(mod_quadric).depth() == 1


# -- profiles --------------------------------------------------------------------

def test_profile_mcm(mod_M_two_nodes, ring_two_nodes):
    prof = mod_M_two_nodes.module_profile()
    assert prof.depth == ring_two_nodes.dimension() == 2
    assert mod_M_two_nodes.is_maximal_cohen_macaulay()


def test_profile_quadric(mod_quadric):
    prof = mod_quadric.module_profile()
    assert prof.depth == 2 and prof.dim == 3 and prof.length == INF


def test_profile_residue_field(ring_two_nodes):
    pr = ring_two_nodes.poly_ring
    gens = [pr.variable(v) for v in pr.variables]
    k = ModulePresentation.quotient_by_ideal(ring_two_nodes, gens, label="k")
    prof = k.module_profile()
    assert prof.dim == 0 and prof.depth == 0 and prof.length == 1


def test_zero_module_conventions(ring_two_nodes):
    z = ModulePresentation.zero(ring_two_nodes)
    prof = z.module_profile()
    assert prof.depth == INF and prof.dim == NEG_INF and prof.length == 0
    assert z.satisfies_serre(3)
    assert z.is_free()


# -- Serre conditions ---------------------------------------------------------------

def test_serre_free_module(ring_two_nodes):
    M = ModulePresentation.free(ring_two_nodes, (0,))
    for n in (1, 2, 3):
        assert M.satisfies_serre(n)


def test_serre_quadric_module(mod_quadric):
    assert mod_quadric.satisfies_serre(1)
    # depth 2 at the irrelevant point, free elsewhere: level two holds
    assert mod_quadric.satisfies_serre(2)
    assert not mod_quadric.satisfies_serre(3)


def test_serre_matches_biduality_on_catalog(mod_M_two_nodes, mod_N_two_nodes,
                                            mod_quadric):
    for mod in (mod_M_two_nodes, mod_N_two_nodes, mod_quadric):
        rep = mod.biduality_report()
        assert rep.reflexive == mod.satisfies_serre(2)
        assert rep.torsion_free == mod.satisfies_serre(1)


# -- free locus ---------------------------------------------------------------------

def test_nonfree_locus_free_module(ring_two_nodes):
    assert ModulePresentation.free(ring_two_nodes, (0, 1)).nonfree_locus_codim() == INF


def test_nonfree_locus_two_nodes(mod_M_two_nodes):
    assert mod_M_two_nodes.nonfree_locus_codim() == 1
    assert not mod_M_two_nodes.free_on_height(1)
    assert mod_M_two_nodes.free_on_height(0)


def test_nonfree_locus_quadric(mod_quadric):
    assert mod_quadric.nonfree_locus_codim() == 3
    assert mod_quadric.free_on_height(2)


def test_free_detection_consistency(ring_two_nodes, mod_M_two_nodes):
    free = ModulePresentation.free(ring_two_nodes, (0,))
    assert free.nonfree_locus_codim() == INF and free.minimalize().n_rels == 0
    assert mod_M_two_nodes.nonfree_locus_codim() != INF
    assert mod_M_two_nodes.minimalize().n_rels > 0


# -- rank profiles ---------------------------------------------------------------------

def test_rank_profile_free(ring_two_nodes):
    M = ModulePresentation.free(ring_two_nodes, (0, 0))
    prof = M.rank_profile()
    assert prof["constant_rank"]
    assert all(e["rank"] == 2 for e in prof["ranks"])


def test_rank_profile_node(node_pair, ring_node):
    Mx, _ = node_pair
    prof = Mx.rank_profile()
    ranks = {e["prime"]: e["rank"] for e in prof["ranks"]}
    assert ranks == {"(x)": 1, "(y)": 0}
    assert not prof["constant_rank"]


def test_rank_profile_quadric(mod_quadric):
    prof = mod_quadric.rank_profile()
    assert prof["constant_rank"]
    assert prof["ranks"][0]["rank"] == 3


def test_rank_profile_needs_primes():
    pr = PolyRing(F, ["x", "y", "w", "z"])
    x, y, w, z = (pr.variable(v) for v in "xywz")
    ring = RingPresentation(pr, [x * w - y * z], label="noprimes")
    M = ModulePresentation.free(ring, (0,))
    with pytest.raises(HypothesisMissingError):
        M.rank_profile()


# -- Auslander-Buchsbaum across random modules ------------------------------------------

def test_auslander_buchsbaum_on_random_modules(ring_two_nodes):
    rng = random.Random(41)
    pr = ring_two_nodes.poly_ring
    monos = {d: list(monomials_of_degree(4, d)) for d in (1, 2)}
    for _ in range(10):
        p = rng.randint(1, 2)
        cols = []
        for _c in range(rng.randint(1, 3)):
            deg = rng.randint(1, 2)
            col = []
            for _i in range(p):
                poly = pr.zero()
                for _t in range(rng.randint(0, 2)):
                    poly = poly + pr.monomial(rng.choice(monos[deg]),
                                              F.from_int(rng.randint(1, 50)))
                col.append(poly)
            cols.append(col)
        M = ModulePresentation.from_relations(ring_two_nodes, (0,) * p, cols)
        m = M.minimalize()
        if m.n_gens == 0:
            continue
        assert m.depth() + m.projective_dimension_ambient() == 4


def test_nonfree_locus_cyclic_cross_check(mod_M_two_nodes, ring_two_nodes):
    # independent route for a cyclic module R/J: the non-free locus is
    # V(J + ann J), since R/J localizes free exactly where J dies or explodes
    from cihom.groebner import FreeModule, syzygy_generators
    from cihom.rings import ideal_dimension
    ring = ring_two_nodes
    pr = ring.poly_ring
    y, u = pr.variable("y"), pr.variable("u")
    J = [y, u]
    free = FreeModule(pr, (0,))

    def colon_into_quotient(g):
        """Generators of ann_R(g) = (I : g)/I, reduced modulo I."""
        cols = [free.from_polys([g])] + [free.from_polys([f])
                                         for f in ring.quotient_gens]
        degs = [g.degree()] + [f.degree() for f in ring.quotient_gens]
        syz, _ = syzygy_generators(cols, degs, free)
        out = []
        for s in syz:
            a = ring.reduce(s.component(0))
            if a:
                out.append(a)
        return out

    def intersect(gens_a, gens_b):
        """Generators of (gens_a) intersect (gens_b) in R: the a-part times
        its generator, over syzygies of the combined row."""
        cols = ([free.from_polys([a]) for a in gens_a]
                + [free.from_polys([b]) for b in gens_b]
                + [free.from_polys([f]) for f in ring.quotient_gens])
        degs = ([a.degree() for a in gens_a] + [b.degree() for b in gens_b]
                + [f.degree() for f in ring.quotient_gens])
        syz, _ = syzygy_generators(cols, degs, free)
        out = []
        for s in syz:
            elem = pr.zero()
            for j, a in enumerate(gens_a):
                coeff = s.component(j)
                if coeff:
                    elem = elem + coeff * a
            elem = ring.reduce(elem)
            if elem:
                out.append(elem)
        return out

    ann = colon_into_quotient(J[0])
    for g in J[1:]:
        ann = intersect(ann, colon_into_quotient(g))
    locus_dim = ideal_dimension(pr, list(ring.quotient_gens) + J + ann)
    codim_independent = ring.dimension() - locus_dim
    assert codim_independent == mod_M_two_nodes.nonfree_locus_codim() == 1
