"""Minimal graded free resolutions, Betti tables, complexity, periodicity.

Resolutions are built by iterated syzygy computation: each differential's
columns are pruned to a minimal generating set of the kernel, which keeps
every later differential's entries inside the irrelevant ideal (graded
Nakayama), so minimality is structural and asserted per step.  Over the
ambient ring resolutions terminate by the syzygy theorem; over quotients
they are truncated at a requested bound.

A resolution cache is append-only and extended by the single task that
requested it; returned FreeResolution views are immutable and safe to share.
"""

from __future__ import annotations

import itertools

from .fmodules import ModulePresentation, PolyMatrix
from .groebner import FreeModule, minimal_generator_indices, syzygy_generators


class MinimalityRequiredError(ValueError):
    pass


class InsufficientWindowError(ValueError):
    pass


class FreeResolution:
    """A chain of homogeneous matrices d1, d2, ... with d_i d_{i+1} = 0.

    ``differentials[i]`` is d_{i+1}: F_{i+1} -> F_i; generator degrees of F_i
    are the column degrees of d_i (row degrees of d_1 for F_0).  ``terminated``
    records that the next syzygy module is zero, certifying finite projective
    dimension.  Immutable once returned.
    """

    __slots__ = ("module", "differentials", "truncation", "terminated")

    def __init__(self, module: ModulePresentation, differentials, truncation, terminated):
        self.module = module
        self.differentials = list(differentials)
        self.truncation = truncation
        self.terminated = terminated

    @property
    def ring(self):
        return self.module.ring

    def steps_computed(self) -> int:
        return len(self.differentials)

    def betti_numbers(self):
        """(beta_0, beta_1, ...) through every computed step (plus trailing
        zeros when the resolution terminated early)."""
        if not self.differentials:
            betti = [self.module.minimalize().n_gens]
        else:
            betti = [self.differentials[0].nrows] + [d.ncols for d in self.differentials]
        if self.terminated:
            betti += [0] * (self.truncation + 1 - len(betti))
        return betti

    def step_degrees(self, i: int):
        """Generator degrees of F_i (empty past a terminated resolution)."""
        if i == 0:
            return self.module.minimalize().gen_degs
        if i > len(self.differentials):
            if self.terminated:
                return ()
            raise ValueError(f"resolution computed only through step {len(self.differentials)}")
        return self.differentials[i - 1].col_degs

    def differential(self, i: int) -> PolyMatrix | None:
        """d_i: F_i -> F_{i-1}, or None past the computed/terminated range."""
        if 1 <= i <= len(self.differentials):
            return self.differentials[i - 1]
        return None

    def length(self):
        """Projective dimension when terminated; otherwise a lower bound."""
        betti = self.betti_numbers()
        last = max((i for i, b in enumerate(betti) if b), default=0)
        return last

    def is_finite(self) -> bool:
        return self.terminated

    def syzygy_module(self, i: int) -> ModulePresentation:
        """syz^i(M) = image of d_i, presented as coker(d_{i+1})."""
        if i == 0:
            return self.module
        if i > len(self.differentials):
            raise ValueError(f"resolution computed only through step {len(self.differentials)}")
        gen_degs = self.step_degrees(i)
        nxt = self.differential(i + 1)
        if nxt is None:
            nxt = PolyMatrix.zero(self.ring.poly_ring, gen_degs, ())
        return ModulePresentation(self.ring, gen_degs, nxt,
                                  label=f"syz^{i}({self.module.label})")

    def minimality_certificate(self) -> bool:
        """No differential entry has a nonzero constant term."""
        for d in self.differentials:
            for row in d.entries:
                for p in row:
                    if p and not p.ring.field.is_zero(p.constant_value()):
                        return False
        return True

    def composition_is_zero(self) -> bool:
        """d_i . d_{i+1} reduces to zero over the ring for every computed i."""
        for i in range(len(self.differentials) - 1):
            prod = self.differentials[i].compose(self.differentials[i + 1])
            for row in prod.entries:
                for p in row:
                    if not self.ring.reduce(p).is_zero():
                        return False
        return True

    def __repr__(self):
        return (f"FreeResolution({self.module.label} over {self.ring.label}, "
                f"betti={self.betti_numbers()}, terminated={self.terminated})")


def resolve(M: ModulePresentation, steps: int, over: str = "quotient") -> FreeResolution:
    """Minimal free resolution of M, truncated after ``steps`` differentials.

    over='ambient' resolves the underlying S-module (quotient relations
    appended); such resolutions always terminate within dim S steps.  Results
    are cached on the minimal presentation and extended on demand.
    """
    if steps < 1:
        raise ValueError("steps must be >= 1")
    if over == "ambient":
        return resolve(M.ambient_presentation(), steps=max(steps, M.ring.poly_ring.nvars + 1))
    if over != "quotient":
        raise ValueError(f"unknown resolution target {over!r}")
    Mmin = M.minimalize()
    if Mmin._res_cache is None:
        Mmin._res_cache = {"diffs": [], "terminated": False}
    cache = Mmin._res_cache
    diffs = cache["diffs"]
    ring = Mmin.ring
    pr = ring.poly_ring
    while not cache["terminated"] and len(diffs) < steps:
        if not diffs:
            diffs.append(Mmin.relations)
            if Mmin.n_rels == 0:
                cache["terminated"] = True
            continue
        prev = diffs[-1]
        src_free = FreeModule(pr, prev.row_degs)
        col_elems = prev.column_elements(src_free)
        syz, degs = syzygy_generators(col_elems, list(prev.col_degs), src_free,
                                      ring.quotient_gens)
        target = FreeModule(pr, prev.col_degs)
        from .groebner import Element
        syz_elems = [Element(target, dict(s.terms)) for s in syz]
        alive = minimal_generator_indices(syz_elems, degs, target, ring.quotient_gens)
        syz_elems = [syz_elems[i] for i in alive]
        degs = [degs[i] for i in alive]
        if not syz_elems:
            cache["terminated"] = True
            break
        order = sorted(range(len(syz_elems)), key=lambda t: (degs[t], t))
        syz_elems = [syz_elems[t] for t in order]
        degs = [degs[t] for t in order]
        d = PolyMatrix.from_columns(pr, prev.col_degs, syz_elems, tuple(degs))
        d = d.map_entries(ring.reduce)
        for row in d.entries:
            for p in row:
                assert not (p and p.is_constant()), "minimality violated in resolution step"
        diffs.append(d)
    return FreeResolution(Mmin, diffs[:steps], steps,
                          cache["terminated"] and len(diffs) <= steps)


class BettiTable:
    """Total and graded Betti numbers read off a minimal resolution."""

    __slots__ = ("betti", "graded", "truncation")

    def __init__(self, betti, graded, truncation):
        self.betti = list(betti)
        self.graded = graded
        self.truncation = truncation

    def as_dict(self):
        return {"betti": self.betti,
                "graded": {str(i): dict(sorted(g.items())) for i, g in self.graded.items()},
                "truncation": self.truncation}

    def __repr__(self):
        return f"BettiTable({self.betti}, truncation={self.truncation})"


def betti_table(res: FreeResolution) -> BettiTable:
    """Betti numbers beta_i = rank F_i, with the graded refinement beta_{i,j}."""
    if not res.minimality_certificate():
        raise MinimalityRequiredError("betti numbers require a minimal resolution")
    betti = res.betti_numbers()
    graded = {}
    for i in range(min(len(betti), res.steps_computed() + 1)):
        degs = res.step_degrees(i)
        counts: dict = {}
        for d in degs:
            counts[d] = counts.get(d, 0) + 1
        graded[i] = counts
    return BettiTable(betti, graded, res.truncation)


class ComplexityEstimate:
    """Window-based polynomial-growth estimate for a Betti sequence.

    value 0 iff the sequence hits zero; otherwise the smallest s >= 1 whose
    order-s finite differences vanish on the tail window (checked on the even
    and odd subsequences too, since tails can be parity-polynomial).  Clamped
    to the codimension with a conflict flag; always an estimate from the
    window, never a proof.
    """

    __slots__ = ("value", "window", "evidence", "conflict", "at_least")

    def __init__(self, value, window, evidence, conflict=False, at_least=False):
        self.value = value
        self.window = window
        self.evidence = evidence
        self.conflict = conflict
        self.at_least = at_least

    def as_dict(self):
        return {"value": self.value, "window": self.window,
                "evidence": self.evidence, "conflict": self.conflict,
                "at_least": self.at_least}

    def __repr__(self):
        prefix = ">= " if self.at_least else ""
        return f"ComplexityEstimate({prefix}{self.value}, window={self.window})"


def _difference_order(seq):
    """Smallest s >= 1 with the order-s differences identically zero, or None."""
    cur = list(seq)
    for s in range(1, len(seq)):
        cur = [b - a for a, b in zip(cur, cur[1:])]
        if not cur:
            return None
        if all(v == 0 for v in cur):
            return s
    return None


def complexity_estimate(betti, codim: int, window: int | None = None) -> ComplexityEstimate:
    """Estimate the complexity of a module from a Betti-number window."""
    betti = list(betti)
    if window is None:
        window = len(betti)
    if len(betti) < 4:
        raise InsufficientWindowError(
            f"betti window of length {len(betti)} is too short (need >= 4)")
    evidence = {"betti": betti, "recommended_window": 2 * codim + 4,
                "window_ok": len(betti) >= 2 * codim + 4}
    if any(b == 0 for b in betti):
        evidence["zero_at"] = betti.index(0)
        return ComplexityEstimate(0, window, evidence)
    # drop the first entries: polynomial behaviour is a tail phenomenon
    tail = betti[2:] if len(betti) >= 6 else list(betti)
    s = _difference_order(tail)
    if s is not None:
        evidence["difference_order"] = s
        value = s
    else:
        evens = tail[::2]
        odds = tail[1::2]
        se = _difference_order(evens) if len(evens) >= 2 else None
        so = _difference_order(odds) if len(odds) >= 2 else None
        evidence["difference_order_even"] = se
        evidence["difference_order_odd"] = so
        if se is not None and so is not None:
            value = max(se, so)
        else:
            return ComplexityEstimate(codim, window, evidence, conflict=False, at_least=True)
    conflict = value > codim
    if conflict:
        value = codim
    return ComplexityEstimate(value, window, evidence, conflict=conflict)


def module_complexity(M: ModulePresentation, window: int | None = None) -> ComplexityEstimate:
    """Complexity estimate from a freshly resolved Betti window."""
    if window is None:
        window = 2 * int(M.ring.dimension()) + 2 * M.ring.codim + 4
    res = resolve(M, steps=window)
    return complexity_estimate(res.betti_numbers()[:window + 1], M.ring.codim, window)


class InsufficientStepsError(ValueError):
    pass


def _unit_match(A: PolyMatrix, B: PolyMatrix, row_perm, field):
    """Column matching of B against A (rows permuted) up to unit scaling."""
    ncols = A.ncols
    used = [False] * ncols
    for j in range(ncols):
        found = None
        for k in range(ncols):
            if used[k]:
                continue
            scale = None
            ok = True
            for i in range(A.nrows):
                a = A.entries[row_perm[i]][k]
                b = B.entries[i][j]
                if a.is_zero() != b.is_zero():
                    ok = False
                    break
                if a.is_zero():
                    continue
                if set(a.terms) != set(b.terms):
                    ok = False
                    break
                for mono, cb in b.terms.items():
                    ca = a.terms[mono]
                    r = field.div(cb, ca)
                    if scale is None:
                        scale = r
                    elif not field.eq(scale, r):
                        ok = False
                        break
                if not ok:
                    break
            if ok:
                found = k
                break
        if found is None:
            return False
        used[found] = True
    return True


def _equivalent_up_to_perm(A: PolyMatrix, B: PolyMatrix, field, size_cap=6) -> bool:
    """A ~ B under row/column permutation, unit scaling and a uniform twist."""
    if A.nrows != B.nrows or A.ncols != B.ncols:
        return False
    if A.nrows == 0 or A.ncols == 0:
        return True
    twists = {br - ar for ar, br in zip(sorted(A.row_degs), sorted(B.row_degs))}
    if len(twists) != 1:
        return False
    t = next(iter(twists))
    if sorted(b - t for b in B.col_degs) != sorted(A.col_degs):
        return False
    if A.nrows > size_cap or A.ncols > size_cap:
        return False
    for perm in itertools.permutations(range(A.nrows)):
        if any(A.row_degs[perm[i]] != B.row_degs[i] - t for i in range(A.nrows)):
            continue
        if _unit_match(A, B, perm, field):
            return True
    return False


def detect_periodicity(res: FreeResolution, max_period: int = 3) -> dict:
    """Repetition of differentials up to permutation, unit scaling and twist.

    Requires at least 6 computed steps; a finite resolution is not periodic.
    """
    if res.terminated:
        return {"periodic": False, "period": None, "onset": None}
    n = res.steps_computed()
    if n < 6:
        raise InsufficientStepsError("periodicity detection needs >= 6 resolution steps")
    field = res.ring.field
    for period in range(1, max_period + 1):
        for onset in range(1, n - 2 * period + 1):
            ok = True
            for i in range(onset, n - period + 1):
                A = res.differential(i)
                B = res.differential(i + period)
                if B is None:
                    break
                if not _equivalent_up_to_perm(A, B, field):
                    ok = False
                    break
            if ok:
                return {"periodic": True, "period": period, "onset": onset}
    return {"periodic": False, "period": None, "onset": None}
