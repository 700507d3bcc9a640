import pytest

from cihom.fields import PrimeField
from cihom.fmodules import ModulePresentation
from cihom.theorems import UnknownTheoremError, check_theorem, known_statements

F = PrimeField(32003)


def _soundness(report):
    """No report ever asserts a conclusion with a failed hypothesis line."""
    failed = any(h["status"] == "failed" for h in report.hypotheses)
    if failed:
        assert not report.asserted
        assert report.as_dict()["conclusion"]["verdict"] == "hypotheses-unmet"


def test_unknown_statement():
    with pytest.raises(UnknownTheoremError):
        check_theorem("9.99", None)


def test_registry_nonempty():
    ids = known_statements()
    for sid in ("2.2", "2.7", "3.12.1", "3.12.2", "4.7", "4.15", "4.22"):
        assert sid in ids


def test_3_12_2_on_gap_instance(mod_M_two_nodes, mod_N_two_nodes):
    rep = check_theorem("3.12.2", mod_M_two_nodes, mod_N_two_nodes,
                        tor_bound=5, window=12)
    assert not rep.hypotheses_met
    assert not rep.asserted
    free_line = next(h for h in rep.hypotheses if "locally free" in h["name"])
    assert free_line["status"] == "failed"
    assert free_line["evidence"]["nonfree_locus_codim"] == 1
    _soundness(rep)


def test_alias_acceptance(mod_M_two_nodes, mod_N_two_nodes):
    rep = check_theorem("3.12(2)", mod_M_two_nodes, mod_N_two_nodes,
                        tor_bound=3, window=12)
    assert rep.statement_id == "3.12.2"


def test_4_7_on_node_pair(node_pair):
    Mx, My = node_pair
    rep = check_theorem("4.7", Mx, My, tor_bound=10)
    assert rep.hypotheses_met and rep.asserted
    _soundness(rep)


def test_2_7_on_quadric(mod_quadric):
    rep = check_theorem("2.7", mod_quadric, mod_quadric, tor_bound=10)
    assert rep.asserted
    assert rep.tier == "pd-finite"
    _soundness(rep)


def test_2_2_replay_on_quadric(mod_quadric):
    rep = check_theorem("2.2", mod_quadric, mod_quadric, tor_bound=6)
    assert rep.hypotheses_met
    assert rep.as_dict()["conclusion"]["verdict"] == "holds"
    _soundness(rep)


def test_3_8_mcm_against_finite_pd(mod_M_two_nodes, ring_two_nodes):
    pr = ring_two_nodes.poly_ring
    x, y, z, u = (pr.variable(v) for v in "xyzu")
    # N = R/(x+y+z+u): the linear form avoids every minimal prime, so it is
    # a nonzerodivisor and N has projective dimension one
    N = ModulePresentation.quotient_by_ideal(ring_two_nodes, [x + y + z + u],
                                             label="Nfd")
    rep = check_theorem("3.8", mod_M_two_nodes, N, tor_bound=5)
    assert rep.hypotheses_met, [h for h in rep.hypotheses if h["status"] == "failed"]
    assert rep.asserted
    _soundness(rep)


def test_4_3_on_free_module(ring_two_nodes):
    free = ModulePresentation.free(ring_two_nodes, (0,), label="free")
    rep = check_theorem("4.3", free, tor_bound=4)
    assert rep.asserted
    _soundness(rep)


def test_4_3_hypotheses_unmet_on_4_4(ring_node3):
    pr = ring_node3.poly_ring
    z = pr.variable("z")
    M = ModulePresentation.quotient_by_ideal(ring_node3, [z], label="M44")
    rep = check_theorem("4.3", M, tor_bound=4)
    # Tor_1(M, M) is nonzero, so the vanishing hypothesis fails: unmet
    assert not rep.hypotheses_met
    _soundness(rep)


def test_4_1_on_node3(ring_node3):
    pr = ring_node3.poly_ring
    x, y, z = (pr.variable(v) for v in "xyz")
    # M = R/(x), N = R/(y + z): Tor_1 = 0 and the dimension bound holds
    M = ModulePresentation.quotient_by_ideal(ring_node3, [x], label="Ma")
    N = ModulePresentation.quotient_by_ideal(ring_node3, [y + z], label="Nb")
    rep = check_theorem("4.1", M, N, tor_bound=5)
    _soundness(rep)
    if rep.hypotheses_met:
        assert rep.as_dict()["conclusion"]["verdict"] in ("holds", "fails")


def test_3_15_requires_parameter(mod_M_two_nodes):
    with pytest.raises(UnknownTheoremError):
        check_theorem("3.15", mod_M_two_nodes, mod_M_two_nodes)


def test_3_15_with_parameter(mod_quadric):
    rep = check_theorem("3.15", mod_quadric, mod_quadric, tor_bound=4, n=0)
    _soundness(rep)


def test_4_17_defaults_to_dual(mod_quadric):
    rep = check_theorem("4.17", mod_quadric, tor_bound=4, window=10)
    _soundness(rep)
    # the quadric module is not free, so the conclusion cannot be asserted;
    # at least one hypothesis line must have failed
    assert not rep.asserted


def test_soundness_across_statements(node_pair):
    Mx, My = node_pair
    for sid in ("2.1", "2.2", "2.3", "2.4", "2.6", "2.8", "3.3", "3.4", "3.7",
                "3.9.1", "3.9.2", "4.6", "4.7", "4.8", "4.9", "4.11", "4.12",
                "4.13", "4.14", "4.20", "4.21", "4.22"):
        rep = check_theorem(sid, Mx, My, tor_bound=6, window=8)
        _soundness(rep)
        d = rep.as_dict()
        assert d["id"] == sid
        assert isinstance(d["hypotheses"], list) and d["hypotheses"]


def test_3_12_2_positive_on_node_self_pair(node_pair):
    # the node's cyclic module is a maximal Cohen-Macaulay vector bundle:
    # every hypothesis of the even-vanishing statement holds and the even
    # indices do vanish (odd ones do not, so the odd clause stays vacuous)
    Mx, _ = node_pair
    rep = check_theorem("3.12.2", Mx, Mx, tor_bound=8, window=10)
    assert rep.hypotheses_met, [h for h in rep.hypotheses if h["status"] == "failed"]
    assert rep.asserted
    detail = rep.conclusion["detail"]
    assert detail["first_vanishing_odd"] is None
    assert all(detail["even_vanishing"].values())


def test_2_4_positive_on_quadric(mod_quadric):
    rep = check_theorem("2.4", mod_quadric, mod_quadric, tor_bound=8, window=8)
    assert rep.hypotheses_met and rep.asserted
    _soundness(rep)


def test_2_6_positive_on_periodic_pair(periodic_pair):
    M, N = periodic_pair
    rep = check_theorem("2.6", M, N, tor_bound=6, window=10)
    assert rep.hypotheses_met, [h for h in rep.hypotheses if h["status"] == "failed"]
    assert rep.asserted
    _soundness(rep)


def test_2_8_positive_on_quadric(mod_quadric):
    rep = check_theorem("2.8", mod_quadric, mod_quadric, tor_bound=8)
    assert rep.hypotheses_met and rep.asserted
    _soundness(rep)


def test_4_9_node_pair_soundly_unmet(node_pair):
    # Tor_1 vanishes but Tor_2 does not: the dimension inequality hypothesis
    # must fail, and the harness must decline rather than assert a falsehood
    Mx, My = node_pair
    rep = check_theorem("4.9", Mx, My, tor_bound=6, window=8)
    assert not rep.hypotheses_met
    _soundness(rep)
    dim_line = next(h for h in rep.hypotheses if "dim M + dim N" in h["name"])
    assert dim_line["status"] == "failed"


def test_4_8_node_pair_parity_guard(node_pair):
    # over the node any vanishing run starts at an odd index, which the
    # codimension-one parity hypothesis rejects
    Mx, My = node_pair
    rep = check_theorem("4.8", Mx, My, tor_bound=8, window=8)
    assert not rep.hypotheses_met
    _soundness(rep)


def test_3_16_unmet_on_gap_pair(mod_M_two_nodes, mod_N_two_nodes):
    rep = check_theorem("3.16", mod_M_two_nodes, mod_N_two_nodes,
                        tor_bound=4, window=12)
    _soundness(rep)
    assert not rep.asserted


def test_3_4_on_gap_pair(mod_M_two_nodes, mod_N_two_nodes):
    rep = check_theorem("3.4", mod_M_two_nodes, mod_N_two_nodes,
                        tor_bound=4, window=12)
    _soundness(rep)
    if rep.hypotheses_met:
        # both complexities are maximal, so the disjunction holds that way
        assert rep.conclusion["detail"]["branch"] == "maximal-complexity"
