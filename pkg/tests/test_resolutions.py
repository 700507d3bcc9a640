import random

import pytest

from cihom.fields import PrimeField
from cihom.fmodules import ModulePresentation
from cihom.polynomials import PolyRing, monomials_of_degree
from cihom.resolutions import (
    InsufficientStepsError,
    InsufficientWindowError,
    MinimalityRequiredError,
    betti_table,
    complexity_estimate,
    detect_periodicity,
    module_complexity,
    resolve,
)
from cihom.rings import RingPresentation

F = PrimeField(32003)


def test_two_node_quotient_resolution(mod_M_two_nodes):
    res = resolve(mod_M_two_nodes, steps=6)
    assert res.betti_numbers() == [1, 2, 3, 4, 5, 6, 7]
    assert res.minimality_certificate()
    assert res.composition_is_zero()


def test_alternating_periodic_resolution(ring_two_nodes):
    pr = ring_two_nodes.poly_ring
    x = pr.variable("x")
    M = ModulePresentation.quotient_by_ideal(ring_two_nodes, [x], label="Mx")
    res = resolve(M, steps=8)
    assert res.betti_numbers() == [1] * 9
    entries = [res.differential(i).entries[0][0].text() for i in range(1, 5)]
    assert entries == ["x", "y", "x", "y"]
    per = detect_periodicity(res)
    assert per == {"periodic": True, "period": 2, "onset": 1}


def test_quadric_module_terminates(mod_quadric):
    res = resolve(mod_quadric, steps=5)
    assert res.terminated
    assert res.betti_numbers() == [4, 1, 0, 0, 0, 0]


def test_betti_table_graded(mod_M_two_nodes):
    res = resolve(mod_M_two_nodes, steps=6)
    table = betti_table(res)
    assert table.betti[:7] == [1, 2, 3, 4, 5, 6, 7]
    assert table.graded[1] == {1: 2}
    assert table.graded[2] == {2: 3}


def test_betti_table_free(ring_two_nodes):
    res = resolve(ModulePresentation.free(ring_two_nodes, (0, 0, 0)), steps=4)
    assert betti_table(res).betti[:3] == [3, 0, 0]


def test_betti_requires_minimality(mod_M_two_nodes, ring_two_nodes):
    # a hand-built complex with an identity differential is not minimal
    from cihom.fmodules import PolyMatrix
    from cihom.resolutions import FreeResolution
    pr = ring_two_nodes.poly_ring
    ident = PolyMatrix.identity(pr, (0,))
    fake = FreeResolution(ModulePresentation.free(ring_two_nodes, (0,)),
                          [ident], 1, True)
    with pytest.raises(MinimalityRequiredError):
        betti_table(fake)


def test_complexity_linear_growth():
    est = complexity_estimate([1, 2, 3, 4, 5, 6, 7], 2)
    assert est.value == 2 and not est.conflict


def test_complexity_bounded():
    est = complexity_estimate([1] * 9, 2)
    assert est.value == 1


def test_complexity_finite_pd():
    est = complexity_estimate([4, 1, 0, 0, 0, 0], 1)
    assert est.value == 0


def test_complexity_window_too_short():
    with pytest.raises(InsufficientWindowError):
        complexity_estimate([1, 2], 1)


def test_complexity_clamped_to_codim():
    # artificially fast growth must clamp at the codimension with a flag
    est = complexity_estimate([1, 2, 4, 8, 16, 32, 64, 128], 1)
    assert est.value == 1 and (est.conflict or est.at_least)


def test_complexity_bound_on_catalog(mod_M_two_nodes, mod_N_two_nodes, ring_two_nodes):
    for mod in (mod_M_two_nodes, mod_N_two_nodes):
        est = module_complexity(mod, window=10)
        assert est.value <= ring_two_nodes.codim


def test_periodicity_needs_steps(mod_M_two_nodes):
    res = resolve(mod_M_two_nodes, steps=4)
    with pytest.raises(InsufficientStepsError):
        detect_periodicity(res)


def test_finite_resolution_not_periodic(mod_quadric):
    res = resolve(mod_quadric, steps=6)
    assert detect_periodicity(res)["periodic"] is False


def test_growing_resolution_not_periodic(mod_M_two_nodes):
    res = resolve(mod_M_two_nodes, steps=6)
    assert detect_periodicity(res)["periodic"] is False


def _random_module(ring, rng, max_gens=2, max_deg=2):
    pr = ring.poly_ring
    p = rng.randint(1, max_gens)
    cols = []
    for _ in range(rng.randint(1, 3)):
        deg = rng.randint(1, max_deg)
        monos = list(monomials_of_degree(pr.nvars, deg))
        col = []
        for _i in range(p):
            poly = pr.zero()
            for _t in range(rng.randint(0, 2)):
                poly = poly + pr.monomial(rng.choice(monos), F.from_int(rng.randint(1, 50)))
            col.append(poly)
        cols.append(col)
    return ModulePresentation.from_relations(ring, (0,) * p, cols)


def test_hilbert_syzygy_bound_over_ambient():
    pr = PolyRing(F, ["x", "y", "z", "u"])
    S = RingPresentation(pr, [], label="S")
    rng = random.Random(17)
    for _ in range(15):
        M = _random_module(S, rng)
        res = resolve(M, steps=pr.nvars + 1)
        assert res.terminated
        assert res.length() <= pr.nvars


def test_euler_characteristic_against_hilbert(mod_M_two_nodes, mod_N_two_nodes):
    ring = mod_M_two_nodes.ring
    hf_ring = ModulePresentation.free(ring, (0,)).hilbert_function(8, dmin=0)
    for M in (mod_M_two_nodes, mod_N_two_nodes):
        res = resolve(M, steps=9)
        hf_M = M.hilbert_function(8, dmin=0)
        last_degs = res.step_degrees(res.steps_computed())
        # the truncated tail lives in degrees > min degree of the last step
        safe_top = (min(last_degs) if last_degs else 9)
        for d in range(0, min(9, safe_top + 1)):
            total = 0
            for i in range(res.steps_computed() + 1):
                sign = 1 if i % 2 == 0 else -1
                total += sign * sum(hf_ring.get(d - g, 0) for g in res.step_degrees(i)
                                    if d - g >= 0)
            assert total == hf_M[d], (M.label, d)


def test_resolution_cache_extends(mod_N_two_nodes):
    res4 = resolve(mod_N_two_nodes, steps=4)
    res6 = resolve(mod_N_two_nodes, steps=6)
    assert res6.betti_numbers()[:5] == res4.betti_numbers()[:5]
    assert res6.steps_computed() >= 6


def test_codim_three_generality():
    # three-node ring in six variables: the cyclic section has the binomial
    # Betti growth of a maximal-complexity module in codimension three
    from cihom.rings import RingPresentation
    pr = PolyRing(F, ["x", "y", "z", "u", "v", "w"])
    x, y, z, u, v, w = (pr.variable(c) for c in "xyzuvw")
    ring = RingPresentation(pr, [x * y, z * u, v * w], label="R3")
    assert ring.certified and ring.codim == 3 and ring.dimension() == 3
    M = ModulePresentation.quotient_by_ideal(ring, [y, u, w], label="M")
    res = resolve(M, steps=5)
    assert res.betti_numbers() == [1, 3, 6, 10, 15, 21]
    assert M.is_maximal_cohen_macaulay()
