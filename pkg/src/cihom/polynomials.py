"""Monomials, term orders and multivariate polynomials over an exact field.

Monomials are exponent tuples; the grading is standard (every variable has
weight one).  Polynomials are immutable term dictionaries bound to a PolyRing
that fixes the field, the variable names and the active term order, so all
operations are pure and results are always in canonical form (no zero
coefficients, no duplicate monomials).
"""

from __future__ import annotations

import itertools


class IncompatibleOperandsError(ValueError):
    """Operands live over different fields or variable sets."""


class GradedViolationError(ValueError):
    """A homogeneous input was required but not supplied."""


# ---------------------------------------------------------------------------
# monomials (exponent tuples)

def mono_mul(a: tuple, b: tuple) -> tuple:
    return tuple(x + y for x, y in zip(a, b))

def mono_divides(a: tuple, b: tuple) -> bool:
    return all(x <= y for x, y in zip(a, b))

def mono_div(a: tuple, b: tuple) -> tuple:
    return tuple(x - y for x, y in zip(a, b))

def mono_lcm(a: tuple, b: tuple) -> tuple:
    return tuple(max(x, y) for x, y in zip(a, b))

def mono_gcd(a: tuple, b: tuple) -> tuple:
    return tuple(min(x, y) for x, y in zip(a, b))

def mono_degree(a: tuple) -> int:
    return sum(a)

def monomials_of_degree(nvars: int, degree: int):
    """All exponent tuples in nvars variables of the given total degree."""
    if degree < 0:
        return
    if nvars == 0:
        if degree == 0:
            yield ()
        return
    for bars in itertools.combinations(range(degree + nvars - 1), nvars - 1):
        prev = -1
        exps = []
        for b in bars:
            exps.append(b - prev - 1)
            prev = b
        exps.append(degree + nvars - 2 - prev)
        yield tuple(exps)


class TermOrder:
    """A monomial order on ring monomials: grevlex (default), lex or grlex.

    ``key(mono)`` returns a tuple; larger keys mean larger monomials.  All
    three orders are total and multiplicative; grevlex and grlex refine total
    degree.
    """

    KINDS = ("grevlex", "lex", "grlex")

    __slots__ = ("kind",)

    def __init__(self, kind: str = "grevlex"):
        if kind not in self.KINDS:
            raise ValueError(f"unknown term order {kind!r}")
        self.kind = kind

    def key(self, mono: tuple):
        if self.kind == "grevlex":
            return (sum(mono), tuple(-e for e in reversed(mono)))
        if self.kind == "lex":
            return mono
        return (sum(mono), mono)  # grlex

    def cmp(self, a: tuple, b: tuple) -> int:
        if len(a) != len(b):
            raise IncompatibleOperandsError("monomials with different variable counts")
        ka, kb = self.key(a), self.key(b)
        return (ka > kb) - (ka < kb)

    def __eq__(self, other):
        return isinstance(other, TermOrder) and other.kind == self.kind

    def __hash__(self):
        return hash(("TermOrder", self.kind))

    def __repr__(self):
        return f"TermOrder({self.kind!r})"


def monomial_cmp(a: tuple, b: tuple, order: TermOrder) -> str:
    """Compare two monomials; returns 'less', 'equal' or 'greater'."""
    c = order.cmp(a, b)
    return ("less", "equal", "greater")[c + 1]


# ---------------------------------------------------------------------------
# polynomials

class ZeroDegree:
    """Sentinel degree of the zero polynomial: compatible with any degree."""

    def __repr__(self):
        return "any"

    def __eq__(self, other):
        return isinstance(other, ZeroDegree)

    def __hash__(self):
        return hash("ZeroDegree")


ANY_DEGREE = ZeroDegree()


class DegreeReport:
    """Outcome of a homogeneity check: a degree, the zero sentinel, or the
    set of term degrees when the polynomial is inhomogeneous."""

    __slots__ = ("homogeneous", "degree", "degrees")

    def __init__(self, homogeneous, degree, degrees):
        self.homogeneous = homogeneous
        self.degree = degree
        self.degrees = degrees

    def __repr__(self):
        if self.homogeneous:
            return f"DegreeReport(degree={self.degree!r})"
        return f"DegreeReport(inhomogeneous, degrees={sorted(self.degrees)})"


class PolyRing:
    """A standard-graded polynomial ring over an exact field.

    Holds the field, variable names, per-variable degrees (all one by
    default) and the active term order.  Acts as the factory for Polynomial
    values; rings compare by content so equal rings interoperate.
    """

    __slots__ = ("field", "variables", "degrees", "order", "_zero", "_one")

    def __init__(self, field, variables, degrees=None, order=None):
        self.field = field
        self.variables = tuple(variables)
        if len(set(self.variables)) != len(self.variables):
            raise ValueError("duplicate variable names")
        self.degrees = tuple(degrees) if degrees is not None else (1,) * len(self.variables)
        if len(self.degrees) != len(self.variables):
            raise ValueError("degrees/variables length mismatch")
        if any(d != 1 for d in self.degrees):
            raise ValueError("only standard grading (all weights 1) is supported")
        self.order = order if order is not None else TermOrder("grevlex")
        self._zero = None
        self._one = None

    @property
    def nvars(self) -> int:
        return len(self.variables)

    def compatible(self, other: "PolyRing") -> bool:
        return (self.field == other.field and self.variables == other.variables
                and self.degrees == other.degrees)

    def check_compatible(self, other: "PolyRing"):
        if not self.compatible(other):
            raise IncompatibleOperandsError(
                f"polynomial rings differ: {self!r} vs {other!r}")

    def zero(self) -> "Polynomial":
        if self._zero is None:
            self._zero = Polynomial(self, {})
        return self._zero

    def one(self) -> "Polynomial":
        if self._one is None:
            self._one = self.constant(self.field.one())
        return self._one

    def constant(self, c) -> "Polynomial":
        unit = (0,) * self.nvars
        if self.field.is_zero(c):
            return self.zero()
        return Polynomial(self, {unit: c})

    def from_int(self, n: int) -> "Polynomial":
        return self.constant(self.field.from_int(n))

    def variable(self, name: str) -> "Polynomial":
        i = self.variables.index(name)
        mono = tuple(1 if j == i else 0 for j in range(self.nvars))
        return Polynomial(self, {mono: self.field.one()})

    def monomial(self, exps, coeff=None) -> "Polynomial":
        exps = tuple(exps)
        if len(exps) != self.nvars or any(e < 0 for e in exps):
            raise ValueError(f"bad exponent tuple {exps}")
        c = self.field.one() if coeff is None else coeff
        if self.field.is_zero(c):
            return self.zero()
        return Polynomial(self, {exps: c})

    def mono_str(self, mono: tuple) -> str:
        parts = []
        for name, e in zip(self.variables, mono):
            if e == 1:
                parts.append(name)
            elif e > 1:
                parts.append(f"{name}^{e}")
        return "*".join(parts) if parts else "1"

    def __eq__(self, other):
        return isinstance(other, PolyRing) and self.compatible(other) and self.order == other.order

    def __hash__(self):
        return hash((self.field, self.variables, self.degrees, self.order))

    def __repr__(self):
        return f"PolyRing({self.field.tag}, vars={list(self.variables)}, order={self.order.kind})"


class Polynomial:
    """An element of a PolyRing: a dict of exponent tuple -> nonzero coeff."""

    __slots__ = ("ring", "terms", "_lead")

    def __init__(self, ring: PolyRing, terms: dict):
        self.ring = ring
        self.terms = terms
        self._lead = None

    # -- queries ------------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def lead_monomial(self) -> tuple:
        if self._lead is None:
            if not self.terms:
                raise ValueError("zero polynomial has no leading term")
            self._lead = max(self.terms, key=self.ring.order.key)
        return self._lead

    def lead_coeff(self):
        return self.terms[self.lead_monomial()]

    def degree_report(self) -> DegreeReport:
        if not self.terms:
            return DegreeReport(True, ANY_DEGREE, frozenset())
        degs = frozenset(sum(m) for m in self.terms)
        if len(degs) == 1:
            return DegreeReport(True, next(iter(degs)), degs)
        return DegreeReport(False, None, degs)

    def is_homogeneous(self) -> bool:
        return self.degree_report().homogeneous

    def degree(self):
        """Degree of a homogeneous polynomial (ANY_DEGREE for zero)."""
        rep = self.degree_report()
        if not rep.homogeneous:
            raise GradedViolationError(f"inhomogeneous polynomial {self}")
        return rep.degree

    def is_constant(self) -> bool:
        unit = (0,) * self.ring.nvars
        return not self.terms or (len(self.terms) == 1 and unit in self.terms)

    def constant_value(self):
        unit = (0,) * self.ring.nvars
        return self.terms.get(unit, self.ring.field.zero())

    # -- arithmetic ----------------------------------------------------------

    def _check(self, other: "Polynomial"):
        if not isinstance(other, Polynomial):
            raise IncompatibleOperandsError(f"cannot combine Polynomial with {type(other).__name__}")
        self.ring.check_compatible(other.ring)

    def __add__(self, other: "Polynomial") -> "Polynomial":
        self._check(other)
        field = self.ring.field
        res = dict(self.terms)
        for m, c in other.terms.items():
            s = field.add(res.get(m, 0), c) if m in res else c
            if m in res and field.is_zero(s):
                del res[m]
            else:
                res[m] = s
        return Polynomial(self.ring, res)

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        self._check(other)
        field = self.ring.field
        res = dict(self.terms)
        for m, c in other.terms.items():
            s = field.sub(res.get(m, field.zero()), c)
            if field.is_zero(s):
                res.pop(m, None)
            else:
                res[m] = s
        return Polynomial(self.ring, res)

    def __neg__(self) -> "Polynomial":
        field = self.ring.field
        return Polynomial(self.ring, {m: field.neg(c) for m, c in self.terms.items()})

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        self._check(other)
        field = self.ring.field
        res = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = mono_mul(m1, m2)
                c = field.mul(c1, c2)
                if m in res:
                    s = field.add(res[m], c)
                    if field.is_zero(s):
                        del res[m]
                    else:
                        res[m] = s
                elif not field.is_zero(c):
                    res[m] = c
        return Polynomial(self.ring, res)

    def scale(self, c) -> "Polynomial":
        field = self.ring.field
        if field.is_zero(c):
            return self.ring.zero()
        return Polynomial(self.ring, {m: field.mul(v, c) for m, v in self.terms.items()})

    def mul_term(self, mono: tuple, c) -> "Polynomial":
        field = self.ring.field
        if field.is_zero(c):
            return self.ring.zero()
        return Polynomial(self.ring, {mono_mul(m, mono): field.mul(v, c) for m, v in self.terms.items()})

    def monic(self) -> "Polynomial":
        if not self.terms:
            return self
        return self.scale(self.ring.field.inv(self.lead_coeff()))

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.ring.compatible(other.ring) and self.terms == other.terms

    def __hash__(self):
        return hash((self.ring.variables, tuple(sorted(self.terms.items()))))

    def __repr__(self):
        return self.text()

    def text(self) -> str:
        if not self.terms:
            return "0"
        field = self.ring.field
        parts = []
        for m in sorted(self.terms, key=self.ring.order.key, reverse=True):
            c = self.terms[m]
            cs = field.to_str(c)
            ms = self.ring.mono_str(m)
            if ms == "1":
                parts.append(cs)
            elif cs == "1":
                parts.append(ms)
            elif cs == "-1":
                parts.append(f"-{ms}")
            else:
                parts.append(f"{cs}*{ms}")
        out = parts[0]
        for p in parts[1:]:
            out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        return out


def poly_combine(p: Polynomial, q: Polynomial, op: str) -> Polynomial:
    """Combine two polynomials with 'add', 'sub' or 'mul'."""
    if op == "add":
        return p + q
    if op == "sub":
        return p - q
    if op == "mul":
        return p * q
    raise ValueError(f"unknown operation {op!r}")


def homogeneous_degree(p: Polynomial) -> DegreeReport:
    """Common degree of all terms, or a report of the degrees present."""
    return p.degree_report()
