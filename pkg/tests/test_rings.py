import itertools

import pytest

from cihom.fields import PrimeField
from cihom.polynomials import GradedViolationError, PolyRing
from cihom.rings import (
    NEG_INF,
    HypothesisMissingError,
    RingPresentation,
    ideal_dimension,
    make_quotient_ring,
)

F = PrimeField(32003)


def test_make_quotient_ring_two_nodes(ring_two_nodes):
    assert ring_two_nodes.codim == 2
    assert ring_two_nodes.dimension() == 2
    assert ring_two_nodes.certified


def test_make_quotient_ring_quadric(ring_quadric):
    assert ring_quadric.codim == 1
    assert ring_quadric.dimension() == 3
    assert ring_quadric.certified


def test_empty_quotient_is_regular():
    ring = make_quotient_ring("f32003", ["x", "y"])
    assert ring.codim == 0 and ring.dimension() == 2 and ring.certified


def test_regular_sequence_certificates(ring_two_nodes, ring_quadric):
    assert ring_two_nodes.verify_regular_sequence().dims == [4, 3, 2]
    assert ring_quadric.verify_regular_sequence().dims == [4, 3]


def test_repeated_element_fails():
    pr = PolyRing(F, ["x", "y"])
    x = pr.variable("x")
    ring = RingPresentation(pr, [x, x], label="bad")
    cert = ring.verify_regular_sequence()
    assert not cert.ok and cert.failed_at == 2 and cert.dims == [2, 1, 1]
    with pytest.raises(HypothesisMissingError):
        ring.require_certified()


def test_degree_one_generator_warns_not_fatal():
    pr = PolyRing(F, ["x", "y"])
    x = pr.variable("x")
    ring = RingPresentation(pr, [x], label="warned")
    assert ring.warnings and "degree 1" in ring.warnings[0]
    assert ring.certified


def test_inhomogeneous_generator_rejected():
    pr = PolyRing(F, ["x", "y"])
    x, y = pr.variable("x"), pr.variable("y")
    with pytest.raises(GradedViolationError):
        RingPresentation(pr, [x + x * y])


def test_ring_dimension_examples(ring_two_nodes, ring_node):
    assert ring_two_nodes.dimension() == 2
    assert ring_node.dimension() == 1
    S = make_quotient_ring("f32003", ["x", "y", "w", "z"])
    assert S.dimension() == 4


def test_dimension_plus_codim(ring_two_nodes, ring_quadric, ring_node, ring_node3):
    for ring in (ring_two_nodes, ring_quadric, ring_node, ring_node3):
        assert ring.dimension() + ring.codim == ring.poly_ring.nvars


def test_regular_sequence_order_insensitive(ring_two_nodes):
    pr = ring_two_nodes.poly_ring
    gens = list(ring_two_nodes.quotient_gens)
    for perm in itertools.permutations(gens):
        ring = RingPresentation(pr, list(perm), label="perm")
        assert ring.verify_regular_sequence().ok


def test_monomial_minimal_primes(ring_two_nodes, ring_node):
    labels = sorted(p.label() for p in ring_two_nodes.minimal_primes())
    assert labels == ["(x, z)", "(x, u)", "(y, z)", "(y, u)"] or len(labels) == 4
    node_labels = sorted(p.label() for p in ring_node.minimal_primes())
    assert node_labels == ["(x)", "(y)"]


def test_declared_primes_spot_checked(ring_quadric):
    primes = ring_quadric.minimal_primes()
    assert len(primes) == 1 and primes[0].check_status == "spot-checked"


def test_missing_primes_raise():
    pr = PolyRing(F, ["x", "y", "w", "z"])
    x, y, w, z = (pr.variable(v) for v in "xywz")
    ring = RingPresentation(pr, [x * w - y * z], label="noprimes")
    with pytest.raises(HypothesisMissingError):
        ring.minimal_primes()


def test_ideal_dimension_unit_ideal():
    pr = PolyRing(F, ["x", "y"])
    assert ideal_dimension(pr, [pr.one()]) == NEG_INF


def test_reduce_canonical(ring_two_nodes):
    pr = ring_two_nodes.poly_ring
    x, y, z = pr.variable("x"), pr.variable("y"), pr.variable("z")
    assert ring_two_nodes.reduce(x * y * z).is_zero()
    assert ring_two_nodes.reduce(x * x) == x * x
