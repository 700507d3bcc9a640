"""Presentations of the ambient graded ring S and quotients R = S/(f1..fc).

Dimension is computed from the initial ideal's standard-monomial
combinatorics (maximal independent variable sets), and a regular-sequence
certificate records the per-step dimension drop, which for homogeneous
sequences in the Cohen-Macaulay ambient ring is equivalent to regularity.
Ring presentations are immutable after construction and cache the Groebner
basis of the quotient ideal eagerly.
"""

from __future__ import annotations

import itertools
import random

from .fields import field_by_tag
from .polynomials import GradedViolationError, PolyRing, Polynomial
from .groebner import FreeModule, groebner_basis

NEG_INF = float("-inf")
INF = float("inf")


class HypothesisMissingError(ValueError):
    """An operation's hypothesis (certificate, primes, ...) is unavailable."""


def _as_ideal_elements(poly_ring: PolyRing, polys):
    free = FreeModule(poly_ring, (0,))
    return free, [free.from_polys([p]) for p in polys if p]


def ideal_groebner(poly_ring: PolyRing, polys):
    """Reduced Groebner basis of an ideal, as a rank-one module basis."""
    free, elems = _as_ideal_elements(poly_ring, polys)
    return groebner_basis(elems, free)


def ideal_contains(gb, poly: Polynomial) -> bool:
    free = gb.module
    return gb.contains(free.from_polys([poly]))


def dimension_from_leads(poly_ring: PolyRing, lead_monos) -> float:
    """Krull dimension of S/L for the monomial ideal L of leading monomials.

    A variable subset T is independent iff no generator of L is supported
    inside T; the dimension is the maximal size of an independent subset.
    Returns -inf when L contains a constant (the empty variety).
    """
    supports = []
    for m in lead_monos:
        supp = frozenset(i for i, e in enumerate(m) if e > 0)
        if not supp:
            return NEG_INF
        supports.append(supp)
    n = poly_ring.nvars
    for size in range(n, -1, -1):
        for T in itertools.combinations(range(n), size):
            Tset = frozenset(T)
            if all(not s <= Tset for s in supports):
                return size
    return NEG_INF


def ideal_dimension(poly_ring: PolyRing, polys) -> float:
    """Krull dimension of S/(polys); -inf for the unit ideal."""
    gb = ideal_groebner(poly_ring, polys)
    leads = [g.terms and max(g.terms, key=gb.order.key)[1] for g in gb.generators]
    return dimension_from_leads(poly_ring, leads)


class PrimeIdeal:
    """A declared prime ideal of S (containing the quotient ideal).

    Monomial quotient ideals get their minimal primes computed exactly;
    user-supplied primes are only spot-checked (membership of the quotient
    generators plus a randomized no-zero-divisor sample), and the check
    status is recorded, never upgraded to a proof.
    """

    __slots__ = ("poly_ring", "gens", "gb", "check_status")

    def __init__(self, poly_ring: PolyRing, gens, check_status="declared"):
        self.poly_ring = poly_ring
        self.gens = tuple(gens)
        self.gb = ideal_groebner(poly_ring, self.gens)
        self.check_status = check_status

    def contains(self, poly: Polynomial) -> bool:
        return ideal_contains(self.gb, poly)

    def label(self) -> str:
        if not self.gens:
            return "(0)"
        return "(" + ", ".join(g.text() for g in self.gens) + ")"

    def __repr__(self):
        return f"PrimeIdeal{self.label()}"


def monomial_minimal_primes(poly_ring: PolyRing, mono_gens):
    """Minimal primes of a monomial ideal: minimal transversals of supports."""
    supports = []
    for p in mono_gens:
        (mono,) = p.terms
        supports.append(frozenset(i for i, e in enumerate(mono) if e > 0))
    n = poly_ring.nvars
    hitting = []
    for size in range(0, n + 1):
        for T in itertools.combinations(range(n), size):
            Tset = frozenset(T)
            if all(s & Tset for s in supports):
                if not any(h <= Tset for h in hitting):
                    hitting.append(Tset)
    primes = []
    for h in sorted(hitting, key=sorted):
        gens = [poly_ring.variable(poly_ring.variables[i]) for i in sorted(h)]
        primes.append(PrimeIdeal(poly_ring, gens, check_status="computed"))
    return primes


def _random_poly(poly_ring: PolyRing, rng: random.Random, max_deg=2) -> Polynomial:
    out = poly_ring.zero()
    from .polynomials import monomials_of_degree
    deg = rng.randint(0, max_deg)
    monos = list(monomials_of_degree(poly_ring.nvars, deg))
    for _ in range(rng.randint(1, 3)):
        m = rng.choice(monos)
        c = poly_ring.field.from_int(rng.randint(1, 100))
        out = out + poly_ring.monomial(m, c)
    return out


def spot_check_prime(poly_ring: PolyRing, prime: PrimeIdeal, quotient_gens,
                     samples=25, seed=7) -> dict:
    """Randomized sanity check that a declared prime is plausible.

    Checks the quotient ideal is contained in it, that it is proper, and that
    no sampled pair of non-members multiplies into it.  Recorded as
    'spot-checked', never as proven.
    """
    report = {"contains_quotient": all(prime.contains(f) for f in quotient_gens),
              "proper": not prime.contains(poly_ring.one()),
              "zero_divisor_hits": 0, "samples": samples}
    rng = random.Random(seed)
    for _ in range(samples):
        a = _random_poly(poly_ring, rng)
        b = _random_poly(poly_ring, rng)
        if prime.contains(a) or prime.contains(b):
            continue
        if prime.contains(a * b):
            report["zero_divisor_hits"] += 1
    report["ok"] = (report["contains_quotient"] and report["proper"]
                    and report["zero_divisor_hits"] == 0)
    return report


class RegularSequenceCertificate:
    """Per-step dimension record for a homogeneous sequence f1..fc in S."""

    __slots__ = ("ok", "dims", "failed_at")

    def __init__(self, ok, dims, failed_at):
        self.ok = ok
        self.dims = dims
        self.failed_at = failed_at

    def as_dict(self):
        return {"ok": self.ok, "dims": list(self.dims), "failed_at": self.failed_at}

    def __repr__(self):
        return f"RegularSequenceCertificate(ok={self.ok}, dims={self.dims})"


class RingPresentation:
    """Ambient graded polynomial ring S plus homogeneous quotient generators.

    Fields: the coefficient field tag, the ambient PolyRing, the quotient
    generators f1..fc, the cached Groebner basis of (f), declared minimal
    primes (computed for monomial ideals), warnings, and the regular-sequence
    certificate.  codim = c and dim R = dim S - c once certified.
    """

    __slots__ = ("label", "poly_ring", "quotient_gens", "ideal_gb", "warnings",
                 "_minimal_primes", "_certificate", "_dim_cache")

    def __init__(self, poly_ring: PolyRing, quotient_gens, label="R",
                 minimal_primes=None):
        self.label = label
        self.poly_ring = poly_ring
        gens = []
        for f in quotient_gens:
            if f.is_zero():
                continue
            rep = f.degree_report()
            if not rep.homogeneous:
                raise GradedViolationError(
                    f"quotient generator {f} is inhomogeneous: degrees {sorted(rep.degrees)}")
            gens.append(f)
        self.quotient_gens = tuple(gens)
        self.warnings = []
        for f in self.quotient_gens:
            if f.degree() < 2:
                self.warnings.append(
                    f"quotient generator {f} has degree {f.degree()} < 2; "
                    "shorten the presentation to keep codimension = number of generators")
        self.ideal_gb = ideal_groebner(poly_ring, self.quotient_gens)
        self._minimal_primes = None
        self._certificate = None
        self._dim_cache = None
        if minimal_primes is not None:
            checked = []
            for gens_q in minimal_primes:
                prime = PrimeIdeal(poly_ring, gens_q, check_status="declared")
                chk = spot_check_prime(poly_ring, prime, self.quotient_gens)
                prime.check_status = "spot-checked" if chk["ok"] else "suspect"
                checked.append(prime)
            self._minimal_primes = checked
        elif self._is_monomial_ideal():
            self._minimal_primes = monomial_minimal_primes(poly_ring, self.quotient_gens)

    # -- structure ------------------------------------------------------------

    @property
    def field(self):
        return self.poly_ring.field

    @property
    def codim(self) -> int:
        return len(self.quotient_gens)

    @property
    def is_ambient(self) -> bool:
        return not self.quotient_gens

    def _is_monomial_ideal(self) -> bool:
        return all(len(f.terms) == 1 for f in self.quotient_gens)

    def ambient_dimension(self) -> int:
        return self.poly_ring.nvars

    def dimension(self) -> float:
        """Krull dimension of R from the initial ideal of (f)."""
        if self._dim_cache is None:
            leads = [max(g.terms, key=self.ideal_gb.order.key)[1]
                     for g in self.ideal_gb.generators]
            self._dim_cache = dimension_from_leads(self.poly_ring, leads)
        return self._dim_cache

    def contains_in_ideal(self, poly: Polynomial) -> bool:
        """Membership of a polynomial in the quotient ideal."""
        return ideal_contains(self.ideal_gb, poly)

    def reduce(self, poly: Polynomial) -> Polynomial:
        """Normal form of a polynomial modulo the quotient ideal."""
        free = self.ideal_gb.module
        nf = self.ideal_gb.normal_form(free.from_polys([poly]))
        return nf.component(0)

    def verify_regular_sequence(self) -> RegularSequenceCertificate:
        """ok iff dim S/(f1..fk) = dim S - k for every k <= c."""
        if self._certificate is None:
            n = self.poly_ring.nvars
            dims = [n]
            failed_at = None
            for k in range(1, self.codim + 1):
                d = ideal_dimension(self.poly_ring, self.quotient_gens[:k])
                dims.append(d)
                if failed_at is None and d != n - k:
                    failed_at = k
            self._certificate = RegularSequenceCertificate(failed_at is None, dims, failed_at)
        return self._certificate

    @property
    def certified(self) -> bool:
        return self.verify_regular_sequence().ok

    def require_certified(self):
        if not self.certified:
            raise HypothesisMissingError(
                f"ring {self.label} is not a certified complete intersection: "
                f"{self.verify_regular_sequence().as_dict()}")

    def minimal_primes(self):
        if self._minimal_primes is None:
            raise HypothesisMissingError(
                f"ring {self.label} has no minimal primes: the quotient ideal is not "
                "monomial, so declare them in the ring constructor")
        return self._minimal_primes

    @property
    def has_minimal_primes(self) -> bool:
        return self._minimal_primes is not None

    def is_domain(self) -> dict:
        """Whether the quotient ideal is prime, as far as the prime data goes.

        True requires a single minimal prime coinciding with the quotient
        ideal; the status records whether the prime was computed (monomial
        case) or only spot-checked (declared).  Unknown without prime data.
        """
        if self.is_ambient:
            return {"domain": True, "status": "computed"}
        if self._minimal_primes is None:
            return {"domain": False, "status": "unknown"}
        if len(self._minimal_primes) != 1:
            return {"domain": False, "status": "computed"}
        q = self._minimal_primes[0]
        same = (all(self.contains_in_ideal(g) for g in q.gens)
                and all(q.contains(f) for f in self.quotient_gens))
        return {"domain": same, "status": q.check_status}

    # -- identity ---------------------------------------------------------------

    def same_ring(self, other: "RingPresentation") -> bool:
        return (self.poly_ring == other.poly_ring
                and self.quotient_gens == other.quotient_gens)

    def describe(self) -> dict:
        return {
            "label": self.label,
            "field": self.field.tag,
            "variables": list(self.poly_ring.variables),
            "quotient": [f.text() for f in self.quotient_gens],
            "codim": self.codim,
            "dim": self.dimension(),
            "certified_complete_intersection": self.certified,
            "warnings": list(self.warnings),
        }

    def __repr__(self):
        quot = ", ".join(f.text() for f in self.quotient_gens)
        return (f"RingPresentation({self.field.tag}[{', '.join(self.poly_ring.variables)}]"
                + (f"/({quot})" if quot else "") + ")")


def make_quotient_ring(field_tag, variables, degrees=None, quotient_gens=(),
                       label="R", minimal_primes=None, order=None) -> RingPresentation:
    """Build S/(f1..fc) from a field tag, variable names and generators.

    ``quotient_gens`` and ``minimal_primes`` may be Polynomial values over a
    matching PolyRing or will be passed through unchanged; text parsing lives
    in the CLI layer.
    """
    field = field_by_tag(field_tag) if isinstance(field_tag, str) else field_tag
    poly_ring = PolyRing(field, variables, degrees, order=order)
    gens = []
    for f in quotient_gens:
        if not isinstance(f, Polynomial):
            raise TypeError("quotient generators must be Polynomial values")
        poly_ring.check_compatible(f.ring)
        gens.append(Polynomial(poly_ring, dict(f.terms)))
    primes = None
    if minimal_primes is not None:
        primes = [[Polynomial(poly_ring, dict(g.terms)) for g in q] for q in minimal_primes]
    return RingPresentation(poly_ring, gens, label=label, minimal_primes=primes)
