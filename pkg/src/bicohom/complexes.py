"""Z-graded complexes of finitely presented groups.

A complex carries either a homological differential (degree -1) or a
cohomological one (degree +1).  Support is a finite window -- optionally
declared genuinely zero outside -- or exactly periodic, which represents
the 2-periodic complete resolutions downstream with no truncation error.
Queries that would need an unknown cell outside a window fail loudly.
"""

from math import gcd

from .abgroup import (FpGroup, Morphism, hom_group, induced_hom_map,
                      induced_tensor_map, kernel_image, subquotient,
                      tensor_group)
from .abgroup import direct_sum as group_direct_sum
from .errors import (ConventionViolation, NotContained, OutOfWindow,
                     ParentMismatch)

HOMOLOGICAL = "homological"
COHOMOLOGICAL = "cohomological"


class Window:
    """Support lo..hi inclusive; zero_outside means the complex is known to
    vanish beyond the window rather than merely being truncated there."""

    __slots__ = ("lo", "hi", "zero_outside")

    def __init__(self, lo, hi, zero_outside=True):
        if lo > hi:
            raise ValueError("empty window")
        self.lo = lo
        self.hi = hi
        self.zero_outside = bool(zero_outside)

    def __contains__(self, n):
        return self.lo <= n <= self.hi

    def __eq__(self, other):
        return (isinstance(other, Window) and self.lo == other.lo
                and self.hi == other.hi
                and self.zero_outside == other.zero_outside)

    def __repr__(self):
        tail = "" if self.zero_outside else ", truncated"
        return "Window(%d..%d%s)" % (self.lo, self.hi, tail)


class Periodic:
    """Support with cell(n) == cell(n mod period) for every integer n."""

    __slots__ = ("period",)

    def __init__(self, period):
        if period < 1:
            raise ValueError("period must be at least 1")
        self.period = period

    def __contains__(self, n):
        return True

    def __eq__(self, other):
        return isinstance(other, Periodic) and self.period == other.period

    def __repr__(self):
        return "Periodic(%d)" % self.period


class Complex:
    """Immutable graded complex; construct via Complex.window/periodic."""

    def __init__(self, convention, modulus, support, cells, diffs):
        if convention not in (HOMOLOGICAL, COHOMOLOGICAL):
            raise ValueError("unknown convention %r" % (convention,))
        self.convention = convention
        self.modulus = modulus
        self.support = support
        self.step = -1 if convention == HOMOLOGICAL else 1
        self._cells = dict(cells)
        self._diffs = dict(diffs)
        self._zero_cell = FpGroup(modulus, 0)
        self._homology = {}
        self._validate()

    # -- construction -----------------------------------------------------

    @classmethod
    def window(cls, convention, modulus, lo, hi, cells, diffs=None,
               zero_outside=True):
        """cells: dict degree -> FpGroup covering lo..hi (or a list in that
        order); diffs: dict degree -> Morphism, missing entries are zero."""
        if not isinstance(cells, dict):
            cells = {lo + k: g for k, g in enumerate(cells)}
        return cls(convention, modulus, Window(lo, hi, zero_outside),
                   cells, diffs or {})

    @classmethod
    def periodic(cls, convention, modulus, period, cells, diffs=None):
        if not isinstance(cells, dict):
            cells = {k: g for k, g in enumerate(cells)}
        return cls(convention, modulus, Periodic(period), cells, diffs or {})

    @classmethod
    def zero(cls, convention, modulus):
        return cls.window(convention, modulus, 0, 0, [FpGroup(modulus, 0)])

    def _diff_degrees(self):
        """Degrees whose differential stays inside the stored cells."""
        s = self.support
        if isinstance(s, Periodic):
            return range(s.period)
        if self.step == -1:
            return range(s.lo + 1, s.hi + 1)
        return range(s.lo, s.hi)

    def _validate(self):
        s = self.support
        if isinstance(s, Periodic):
            wanted = set(range(s.period))
        else:
            wanted = set(range(s.lo, s.hi + 1))
        if set(self._cells) != wanted:
            raise ConventionViolation("cells must cover the support exactly")
        for g in self._cells.values():
            if g.modulus != self.modulus:
                raise ConventionViolation("cell modulus differs from complex")
        allowed = set(self._diff_degrees())
        if isinstance(s, Periodic):
            self._diffs = {n % s.period: f for n, f in self._diffs.items()}
        if not set(self._diffs) <= allowed:
            raise ConventionViolation("differential at an unrepresentable "
                                      "degree")
        for n in allowed:
            f = self.diff(n)
            if f.source != self.cell(n) or f.target != self.cell(n + self.step):
                raise ConventionViolation(
                    "differential at degree %d has wrong endpoints" % n)
            if not f.is_well_defined():
                raise ConventionViolation(
                    "differential at degree %d ignores relations" % n)
        for n in allowed:
            m = n + self.step
            if isinstance(s, Periodic) or m in allowed:
                if not self.diff(m).compose(self.diff(n)).is_zero():
                    raise ConventionViolation(
                        "d o d is nonzero at degree %d" % n)

    # -- access -----------------------------------------------------------

    def cell(self, n):
        s = self.support
        if isinstance(s, Periodic):
            return self._cells[n % s.period]
        if s.lo <= n <= s.hi:
            return self._cells[n]
        if s.zero_outside:
            return self._zero_cell
        raise OutOfWindow("degree %d is outside the window %d..%d"
                          % (n, s.lo, s.hi))

    def diff(self, n):
        s = self.support
        if isinstance(s, Periodic):
            n %= s.period
        f = self._diffs.get(n)
        if f is not None:
            return f
        return Morphism.zero(self.cell(n), self.cell(n + self.step))

    def degrees(self):
        s = self.support
        if isinstance(s, Periodic):
            return range(s.period)
        return range(s.lo, s.hi + 1)

    def __repr__(self):
        return "Complex(%s, m=%d, %r)" % (self.convention, self.modulus,
                                          self.support)


def cycles(c, n):
    """Kernel of the outgoing differential at degree n."""
    ker, _ = kernel_image(c.diff(n))
    return ker


def boundaries(c, n):
    """Image of the incoming differential at degree n."""
    _, img = kernel_image(c.diff(n - c.step))
    return img


class Homology:
    """Z/B at one degree, with class projection and representative lift."""

    __slots__ = ("complex", "degree", "cycles", "boundaries", "group", "_sub")

    def __init__(self, c, n):
        self.complex = c
        self.degree = n
        self.cycles = cycles(c, n)
        self.boundaries = boundaries(c, n)
        self._sub = subquotient(c.cell(n), self.cycles, self.boundaries)
        self.group = self._sub.group

    def class_of(self, representative):
        return HClass(self, representative)

    def project(self, representative):
        """Coordinates of a cycle's class in the homology group."""
        return self._sub.project(representative)

    def representative(self, class_elt):
        """A cycle representing a homology-group element."""
        return self._sub.lift(class_elt)

    def zero_class(self):
        return HClass(self, self.complex.cell(self.degree).zero())

    def _same_site(self, other):
        return (self.complex is other.complex and self.degree == other.degree)


def homology(c, n):
    """Homology of c at degree n, memoized per complex."""
    key = n
    if isinstance(c.support, Periodic):
        key = n % c.support.period
    got = c._homology.get(key)
    if got is None:
        got = c._homology[key] = Homology(c, key)
    if key != n:
        # same groups, but report the queried degree
        alias = Homology.__new__(Homology)
        for slot in Homology.__slots__:
            object.__setattr__(alias, slot, getattr(got, slot))
        object.__setattr__(alias, "degree", n)
        return alias
    return got


class HClass:
    """A homology class carried by a cycle representative."""

    __slots__ = ("homology", "representative")

    def __init__(self, homology, representative):
        cell = homology.complex.cell(homology.degree)
        if representative.parent != cell:
            raise ParentMismatch("representative lives in the wrong cell")
        if not homology.cycles.contains(representative):
            raise NotContained("representative is not a cycle")
        self.homology = homology
        self.representative = representative

    def value(self):
        """The class as an element of the homology group."""
        return self.homology.project(self.representative)

    def is_zero(self):
        return self.homology.boundaries.contains(self.representative)

    def _check_peer(self, other):
        if not isinstance(other, HClass) or \
                not self.homology._same_site(other.homology):
            raise ParentMismatch("classes from different homology sites")

    def __add__(self, other):
        self._check_peer(other)
        return HClass(self.homology,
                      self.representative + other.representative)

    def __sub__(self, other):
        self._check_peer(other)
        return HClass(self.homology,
                      self.representative - other.representative)

    def __neg__(self):
        return HClass(self.homology, -self.representative)

    def __eq__(self, other):
        if not isinstance(other, HClass) or \
                not self.homology._same_site(other.homology):
            return NotImplemented
        return (self - other).is_zero()

    __hash__ = None

    def __repr__(self):
        return "HClass(degree=%d, rep=%r)" % (self.homology.degree,
                                              self.representative)


def is_exact(c, lo=None, hi=None):
    """Degrees in lo..hi where homology is nonzero; empty report = exact.

    Defaults: one period for Periodic support; the full window when the
    complex is zero outside; otherwise the interior degrees, the only ones
    whose homology is determined by the stored cells.
    """
    s = c.support
    if isinstance(s, Periodic):
        d_lo, d_hi = 0, s.period - 1
    elif s.zero_outside:
        d_lo, d_hi = s.lo, s.hi
    else:
        d_lo, d_hi = s.lo + 1, s.hi - 1
    lo = d_lo if lo is None else lo
    hi = d_hi if hi is None else hi
    report = []
    for n in range(lo, hi + 1):
        h = homology(c, n)
        if not h.group.is_trivial():
            report.append((n, h.group.describe()))
    return report


# -- Hom and tensor functors ---------------------------------------------


def _functor_support(c):
    s = c.support
    if isinstance(s, Periodic):
        return list(range(s.period))
    return list(range(s.lo, s.hi + 1))


def hom_into_module(c, group):
    """Hom(C, N): cohomological, cell i = Hom(C_i, N), d = precomposition."""
    if c.convention != HOMOLOGICAL:
        raise ValueError("hom_into_module expects a homological complex")
    homs = {n: hom_group(c.cell(n), group) for n in _functor_support(c)}
    cells = {n: h.group for n, h in homs.items()}
    diffs = {}
    s = c.support
    if isinstance(s, Periodic):
        p = s.period
        for j in range(p):
            diffs[j] = induced_hom_map(homs[j], homs[(j + 1) % p],
                                       precompose=c.diff(j + 1))
        return Complex(COHOMOLOGICAL, _result_modulus(c, group),
                       Periodic(p), cells, diffs)
    for j in range(s.lo, s.hi):
        diffs[j] = induced_hom_map(homs[j], homs[j + 1],
                                   precompose=c.diff(j + 1))
    return Complex(COHOMOLOGICAL, _result_modulus(c, group),
                   Window(s.lo, s.hi, s.zero_outside), cells, diffs)


def hom_from_module(group, d):
    """Hom(M, D): cohomological, cell j = Hom(M, D^j), d = postcomposition."""
    if d.convention != COHOMOLOGICAL:
        raise ValueError("hom_from_module expects a cohomological complex")
    homs = {n: hom_group(group, d.cell(n)) for n in _functor_support(d)}
    cells = {n: h.group for n, h in homs.items()}
    diffs = {}
    s = d.support
    if isinstance(s, Periodic):
        p = s.period
        for j in range(p):
            diffs[j] = induced_hom_map(homs[j], homs[(j + 1) % p],
                                       postcompose=d.diff(j))
        return Complex(COHOMOLOGICAL, _result_modulus(d, group),
                       Periodic(p), cells, diffs)
    for j in range(s.lo, s.hi):
        diffs[j] = induced_hom_map(homs[j], homs[j + 1],
                                   postcompose=d.diff(j))
    return Complex(COHOMOLOGICAL, _result_modulus(d, group),
                   Window(s.lo, s.hi, s.zero_outside), cells, diffs)


def tensor_with_module(c, group):
    """C (x) N degreewise, homological like C."""
    if c.convention != HOMOLOGICAL:
        raise ValueError("tensor_with_module expects a homological complex")
    tens = {n: tensor_group(c.cell(n), group) for n in _functor_support(c)}
    ident = Morphism.identity(group)
    cells = {n: t.group for n, t in tens.items()}
    diffs = {}
    s = c.support
    if isinstance(s, Periodic):
        p = s.period
        for j in range(p):
            diffs[j] = induced_tensor_map(tens[j], tens[(j - 1) % p],
                                          c.diff(j), ident)
        return Complex(HOMOLOGICAL, _result_modulus(c, group),
                       Periodic(p), cells, diffs)
    for j in range(s.lo + 1, s.hi + 1):
        diffs[j] = induced_tensor_map(tens[j], tens[j - 1], c.diff(j), ident)
    return Complex(HOMOLOGICAL, _result_modulus(c, group),
                   Window(s.lo, s.hi, s.zero_outside), cells, diffs)


def module_tensor_with(group, c):
    """M (x) C degreewise; the mirror of tensor_with_module."""
    if c.convention != HOMOLOGICAL:
        raise ValueError("module_tensor_with expects a homological complex")
    tens = {n: tensor_group(group, c.cell(n)) for n in _functor_support(c)}
    ident = Morphism.identity(group)
    cells = {n: t.group for n, t in tens.items()}
    diffs = {}
    s = c.support
    if isinstance(s, Periodic):
        p = s.period
        for j in range(p):
            diffs[j] = induced_tensor_map(tens[j], tens[(j - 1) % p],
                                          ident, c.diff(j))
        return Complex(HOMOLOGICAL, _result_modulus(c, group),
                       Periodic(p), cells, diffs)
    for j in range(s.lo + 1, s.hi + 1):
        diffs[j] = induced_tensor_map(tens[j], tens[j - 1], ident, c.diff(j))
    return Complex(HOMOLOGICAL, _result_modulus(c, group),
                   Window(s.lo, s.hi, s.zero_outside), cells, diffs)


def _result_modulus(c, group):
    if c.modulus and group.modulus and c.modulus != group.modulus:
        raise ValueError("incompatible moduli %d and %d"
                         % (c.modulus, group.modulus))
    return max(c.modulus, group.modulus)


def reindex(c):
    """Swap gradings via C_n = C^(-n); cells keep their identities."""
    flipped = HOMOLOGICAL if c.convention == COHOMOLOGICAL else COHOMOLOGICAL
    s = c.support
    if isinstance(s, Periodic):
        p = s.period
        cells = {j: c.cell(-j) for j in range(p)}
        diffs = {j: c.diff(-j) for j in range(p)}
        return Complex(flipped, c.modulus, Periodic(p), cells, diffs)
    cells = {n: c.cell(-n) for n in range(-s.hi, -s.lo + 1)}
    diffs = {}
    for k in c._diff_degrees():
        diffs[-k] = c.diff(k)
    return Complex(flipped, c.modulus, Window(-s.hi, -s.lo, s.zero_outside),
                   cells, diffs)


def direct_sum(c1, c2):
    """Degreewise direct sum; windows may differ, periods are lcm-merged."""
    if c1.convention != c2.convention:
        raise ValueError("direct summands use different conventions")
    if c1.modulus != c2.modulus:
        raise ValueError("direct summands use different moduli")
    s1, s2 = c1.support, c2.support
    if isinstance(s1, Periodic) != isinstance(s2, Periodic):
        raise ValueError("cannot sum periodic with windowed support")
    if isinstance(s1, Periodic):
        p1, p2 = s1.period, s2.period
        p = p1 * p2 // gcd(p1, p2)
        degrees = list(range(p))
        support = Periodic(p)
    else:
        if not (s1.zero_outside and s2.zero_outside) and s1 != s2:
            raise ValueError("truncated windows must match exactly")
        lo, hi = min(s1.lo, s2.lo), max(s1.hi, s2.hi)
        degrees = list(range(lo, hi + 1))
        support = Window(lo, hi, s1.zero_outside and s2.zero_outside)
    sums = {}
    for n in degrees:
        total, injs, projs = group_direct_sum(c1.cell(n), c2.cell(n))
        sums[n] = (total, injs, projs)
    cells = {n: sums[n][0] for n in degrees}
    diffs = {}
    for n in degrees:
        m = n + c1.step
        if isinstance(support, Periodic):
            m %= support.period
        elif not (support.lo <= m <= support.hi):
            continue
        _, (into1, into2), _ = sums[m]
        _, _, (onto1, onto2) = sums[n]
        diffs[n] = (into1.compose(c1.diff(n)).compose(onto1)
                    + into2.compose(c2.diff(n)).compose(onto2))
    return Complex(c1.convention, c1.modulus, support, cells, diffs)
