"""Bicomplex grids: frozen examples with enumeration oracles.

Oracles, written before the implementations they check:
  * core sets: for finite cells, Z' ∩ Z'' and both candidate denominators
    d'(Z'') and d''(Z') are listed by enumerating cell elements, so core
    orders and the two-route equality are checked against raw counting.
  * iterated homology of the 2x2 integer grid below is worked out by hand;
    the two orders genuinely disagree there, which pins the order tokens.
"""

import pytest

from bicohom.abgroup import (FpGroup, Morphism, Subgroup, hom_group,
                             induced_hom_map, make_morphism)
from bicohom.bicomplexes import (Bicomplex, BiClass, BoundaryData,
                                 DoubleComplex, I_THEN_II, II_THEN_I, PRIME,
                                 SECOND, boundary_subgroups, check_exact_grid,
                                 core_equality_check, core_homology,
                                 core_homology_alt, diagonal_shift,
                                 directional_homology, from_double_complex,
                                 iterated_homology, to_double_complex)
from bicohom.complexes import Complex, Periodic, Window
from bicohom.errors import (ConventionViolation, HypothesisViolated,
                            NotContained, OutOfWindow, ParentMismatch)
from bicohom.snf import IntMatrix
from helpers import periodic_strand


def hom_grid(c, d):
    """Hom(C_i, D^j) with precomposition (d') and postcomposition (d'')."""
    homs = {}

    def hom_at(i, j):
        key = (i, j)
        if key not in homs:
            homs[key] = hom_group(c.cell(i), d.cell(j))
        return homs[key]

    return Bicomplex(
        max(c.modulus, d.modulus), c.support, d.support,
        lambda i, j: hom_at(i, j).group,
        lambda i, j: induced_hom_map(hom_at(i, j), hom_at(i + 1, j),
                                     precompose=c.diff(i + 1)),
        lambda i, j: induced_hom_map(hom_at(i, j), hom_at(i, j + 1),
                                     postcompose=d.diff(j)))


def strand_square(m, entries):
    """Hom of an m-strand into its cohomological twin; exact rows/columns
    whenever the strand itself is exact."""
    c = periodic_strand(m, entries)
    d = periodic_strand(m, entries, convention="cohomological")
    return hom_grid(c, d)


def core_side_sets(x, i, j):
    """(Z' ∩ Z'', d'(Z''), d''(Z')) at (i, j), by raw enumeration."""
    cell = x.cell(i, j)
    dp, ds = x.dprime(i, j), x.dsecond(i, j)
    num = {e for e in cell.elements()
           if dp(e).is_zero() and ds(e).is_zero()}
    left = x.cell(i - 1, j)
    den_prime = {x.dprime(i - 1, j)(z) for z in left.elements()
                 if x.dsecond(i - 1, j)(z).is_zero()}
    below = x.cell(i, j - 1)
    den_second = {x.dsecond(i, j - 1)(w) for w in below.elements()
                  if x.dprime(i, j - 1)(w).is_zero()}
    return num, den_prime, den_second


def z_cell():
    return FpGroup.free(0, 1)


# ------------------------------------------------------------ construction


def test_from_grid_validation():
    z2 = FpGroup.from_factors(2, [2])
    ident = Morphism.identity(z2)
    with pytest.raises(ValueError):
        Bicomplex.from_grid(2, {(0, 0): z2, (1, 1): z2})  # not a rectangle
    with pytest.raises(ConventionViolation):
        # d' o d' = identity over a 3-cell row
        Bicomplex.from_grid(2, {(i, 0): z2 for i in range(3)},
                            dprimes={(0, 0): ident, (1, 0): ident})
    with pytest.raises(ConventionViolation):
        # d'' o d'' = identity over a 3-cell column
        Bicomplex.from_grid(2, {(0, j): z2 for j in range(3)},
                            dseconds={(0, 0): ident, (0, 1): ident})


def test_mixed_square_separates_conventions():
    # all cells Z; d''d' = +1 while d'd'' = -1, so the square anticommutes
    z = z_cell()
    cells = {(i, j): z for i in range(2) for j in range(2)}
    dprimes = {(0, 0): make_morphism(z, z, IntMatrix([[1]])),
               (0, 1): make_morphism(z, z, IntMatrix([[-1]]))}
    dseconds = {(0, 0): Morphism.identity(z),
                (1, 0): Morphism.identity(z)}
    with pytest.raises(ConventionViolation):
        Bicomplex.from_grid(0, cells, dprimes, dseconds)
    dc = DoubleComplex.from_grid(0, cells, dprimes, dseconds)
    assert dc.dprime(0, 1).matrix[(0, 0)] == -1
    # and the honestly commuting version fails the anticommuting check
    flipped = dict(dprimes)
    flipped[(0, 1)] = make_morphism(z, z, IntMatrix([[1]]))
    with pytest.raises(ConventionViolation):
        DoubleComplex.from_grid(0, cells, flipped, dseconds)
    Bicomplex.from_grid(0, cells, flipped, dseconds)


def test_provider_output_is_validated():
    z4 = FpGroup.from_factors(4, [4])
    half = FpGroup(4, 1, IntMatrix([[2]]))  # Z/2 presented inside Z/4
    wrong_endpoints = Bicomplex(
        4, Window(0, 1), Window(0, 0),
        lambda i, j: z4,
        lambda i, j: Morphism.identity(half),
        lambda i, j: None)
    with pytest.raises(ConventionViolation):
        wrong_endpoints.dprime(0, 0)
    # x -> x from Z/2 to Z/4 sends the relation 2e to 2 != 0: ill-defined
    cells = {(0, 0): half, (1, 0): z4}
    leaky = Bicomplex(
        4, Window(0, 1), Window(0, 0),
        lambda i, j: cells[(i, j)],
        lambda i, j: Morphism(half, z4, IntMatrix([[1]]))
        if (i, j) == (0, 0) else None,
        lambda i, j: None)
    with pytest.raises(ConventionViolation):
        leaky.dprime(0, 0)
    wrong_modulus = Bicomplex(
        4, Window(0, 0), Window(0, 0),
        lambda i, j: FpGroup.from_factors(2, [2]),
        lambda i, j: None, lambda i, j: None)
    with pytest.raises(ConventionViolation):
        wrong_modulus.cell(0, 0)


def test_support_extension_and_truncation():
    z2 = FpGroup.from_factors(2, [2])
    open_grid = Bicomplex.from_grid(2, {(0, 0): z2})
    assert open_grid.cell(5, -3).is_trivial()
    assert open_grid.dprime(0, 0).is_zero()
    closed = Bicomplex.from_grid(2, {(0, 0): z2}, zero_outside=False)
    with pytest.raises(OutOfWindow):
        closed.cell(1, 0)
    with pytest.raises(OutOfWindow):
        core_homology(closed, (0, 0))  # needs the (i-1, j) neighborhood


def test_lazy_memoization():
    calls = {"cell": 0, "dp": 0, "ds": 0}
    x = strand_square(4, [2, 2])

    def counting_cell(i, j):
        calls["cell"] += 1
        return FpGroup.from_factors(4, [4])

    counted = Bicomplex(4, Periodic(2), Periodic(2), counting_cell,
                        x._dprime_fn, x._dsecond_fn)
    first = counted.cell(0, 0)
    assert counted.cell(0, 0) is first
    assert counted.cell(2, -2) is first  # canonical wrap, no recompute
    assert calls["cell"] == 1
    d = counted.dprime(0, 0)
    assert counted.dprime(2, 4) is d


# ----------------------------------------------------- directional homology


def test_boundary_subgroups_of_strand_square():
    x = strand_square(4, [2, 2])
    data = boundary_subgroups(x, (0, 0))
    assert isinstance(data, BoundaryData)
    cell = x.cell(0, 0)
    two = Subgroup(cell, [cell.element((2,))])
    assert data.zprime == two and data.bprime == two
    assert data.zsecond == two and data.bsecond == two
    assert directional_homology(x, (0, 0), PRIME).is_trivial()
    assert directional_homology(x, (0, 0), SECOND).is_trivial()
    with pytest.raises(ValueError):
        directional_homology(x, (0, 0), "diagonal")


def test_check_exact_grid():
    assert check_exact_grid(strand_square(4, [2, 2]), 0, 1, 0, 1) == []
    assert check_exact_grid(strand_square(9, [3, 3]), -1, 2, -1, 2) == []
    lone = Bicomplex.from_grid(2, {(0, 0): FpGroup.from_factors(2, [2])})
    report = check_exact_grid(lone, 0, 0, 0, 0)
    assert report == [((0, 0), PRIME, "Z/2"), ((0, 0), SECOND, "Z/2")]


# ------------------------------------------------------------ core invariant


def test_core_homology_strand_square():
    x = strand_square(4, [2, 2])
    core = core_homology(x, (0, 0))
    assert core.group.invariant_factors == (2,)
    num, den_prime, _ = core_side_sets(x, 0, 0)
    assert core.group.order() == len(num) // len(den_prime)
    cell = x.cell(0, 0)
    cls = core.class_of(cell.element((2,)))
    assert not cls.is_zero()
    assert cls.value() == core.group.element((1,))
    assert core.zero_class().is_zero()
    # lift of a class is a legitimate representative of the same class
    again = core.class_of(core.representative(cls.value()))
    assert again == cls
    # periodic sites canonicalize: (2, -2) is the same site object
    assert core_homology(x, (2, -2)) is core


def test_core_homology_z9_square():
    x = strand_square(9, [3, 3])
    core = core_homology(x, (1, 0))
    assert core.group.invariant_factors == (3,)
    num, den_prime, den_second = core_side_sets(x, 1, 0)
    assert den_prime == den_second
    assert core.group.order() == len(num) // len(den_prime)


def test_core_denominator_routes_agree():
    for m, entries in ((4, [2, 2]), (9, [3, 3]), (8, [2, 4])):
        x = strand_square(m, entries)
        assert core_equality_check(x, (0, 0))
        main = core_homology(x, (0, 0))
        alt = core_homology_alt(x, (0, 0))
        assert main.group.invariant_factors == alt.group.invariant_factors
        assert main.denominator == alt.denominator
        num, den_prime, den_second = core_side_sets(x, 0, 0)
        assert den_prime == den_second
        for e in num:
            assert (main.class_of(e).is_zero()
                    == alt.class_of(e).is_zero())


def test_core_requires_local_exactness():
    z2 = FpGroup.from_factors(2, [2])
    column = Bicomplex.from_grid(2, {(0, 0): z2, (0, 1): z2})
    # at (0, 1) the equality consumes H' = 0 at (0, 0), which fails
    with pytest.raises(HypothesisViolated) as err:
        core_homology(column, (0, 1))
    assert "H'" in str(err.value)
    with pytest.raises(HypothesisViolated):
        core_equality_check(column, (0, 1))
    # at (0, 0) both consumed sites sit in the zero-extended margin
    assert core_homology(column, (0, 0)).group.invariant_factors == (2,)


def test_biclass_semantics():
    x = strand_square(4, [2, 2])
    core = core_homology(x, (0, 0))
    cell = x.cell(0, 0)
    with pytest.raises(NotContained):
        core.class_of(cell.element((1,)))  # d' does not kill 1
    with pytest.raises(ParentMismatch):
        core.class_of(FpGroup.from_factors(4, [2]).element((1,)))
    a = core.class_of(cell.element((2,)))
    assert a + a == core.zero_class()
    assert (-a) == a
    other = core_homology(x, (1, 0)).zero_class()
    with pytest.raises(ParentMismatch):
        a + other


# ----------------------------------------------------------- diagonal shift


def test_diagonal_shift_roundtrip():
    x = strand_square(4, [2, 2])
    core = core_homology(x, (0, 0))
    cls = core.class_of(x.cell(0, 0).element((2,)))
    moved = diagonal_shift(cls, "+")
    assert moved.core.bidegree == (1, 1)  # canonical label of (1, -1)
    assert not moved.is_zero()
    assert moved.representative == x.cell(1, 1).element((2,))
    back = diagonal_shift(moved, "-")
    assert back == cls
    # the other way around as well
    assert diagonal_shift(diagonal_shift(cls, "-"), "+") == cls
    assert diagonal_shift(core.zero_class(), "+").is_zero()
    with pytest.raises(ValueError):
        diagonal_shift(cls, "sideways")


def test_diagonal_shift_additive():
    x = strand_square(9, [3, 3])
    core = core_homology(x, (0, 0))
    cell = x.cell(0, 0)
    a = core.class_of(cell.element((3,)))
    b = core.class_of(cell.element((6,)))
    assert diagonal_shift(a + b, "+") == \
        diagonal_shift(a, "+") + diagonal_shift(b, "+")
    walked = a
    for _ in range(3):
        walked = diagonal_shift(walked, "+")
    for _ in range(3):
        walked = diagonal_shift(walked, "-")
    assert walked == a


def test_diagonal_shift_requires_exactness():
    lone = Bicomplex.from_grid(2, {(0, 0): FpGroup.from_factors(2, [2])})
    core = core_homology(lone, (0, 0))  # margins are exact, core exists
    cls = core.class_of(lone.cell(0, 0).element((1,)))
    with pytest.raises(HypothesisViolated):
        diagonal_shift(cls, "+")  # H'' at (0, 0) is Z/2, not zero
    with pytest.raises(HypothesisViolated):
        diagonal_shift(cls, "-")


# -------------------------------------------------------- iterated homology


def test_iterated_homology_vanishes_on_exact_grid():
    x = strand_square(4, [2, 2])
    for i in range(2):
        for j in range(2):
            assert iterated_homology(x, (i, j), I_THEN_II).is_trivial()
            assert iterated_homology(x, (i, j), II_THEN_I).is_trivial()
    with pytest.raises(ValueError):
        iterated_homology(x, (0, 0), "II-then-III")


def test_iterated_homology_orders_differ():
    # Z --2--> Z on the bottom row, Z --1--> Z on the left column:
    #   I-then-II sees Z/2 at (1, 0) and Z at (0, 1);
    #   II-then-I sees Z   at (1, 0) and 0 at (0, 1).
    z = z_cell()
    cells = {(0, 0): z, (1, 0): z, (0, 1): z, (1, 1): FpGroup(0, 0)}
    x = Bicomplex.from_grid(
        0, cells,
        dprimes={(0, 0): make_morphism(z, z, IntMatrix([[2]]))},
        dseconds={(0, 0): Morphism.identity(z)})
    assert iterated_homology(x, (1, 0), I_THEN_II).invariant_factors == (2,)
    assert iterated_homology(x, (0, 1), I_THEN_II).describe() == "Z"
    assert iterated_homology(x, (1, 0), II_THEN_I).describe() == "Z"
    assert iterated_homology(x, (0, 1), II_THEN_I).is_trivial()
    assert iterated_homology(x, (0, 0), I_THEN_II).is_trivial()
    assert iterated_homology(x, (0, 0), II_THEN_I).is_trivial()


# ------------------------------------------------- double-complex conversion


def test_double_complex_conversion_involution():
    z = z_cell()
    cells = {(i, j): z for i in range(2) for j in range(2)}
    dprimes = {(0, 0): make_morphism(z, z, IntMatrix([[1]])),
               (0, 1): make_morphism(z, z, IntMatrix([[-1]]))}
    dseconds = {(0, 0): Morphism.identity(z),
                (1, 0): Morphism.identity(z)}
    dc = DoubleComplex.from_grid(0, cells, dprimes, dseconds)
    x = from_double_complex(dc)
    x.check_axioms(0, 1, 0, 1)
    # d'' picked up a sign exactly on the odd row
    assert x.dsecond(0, 0).matrix[(0, 0)] == 1
    assert x.dsecond(1, 0).matrix[(0, 0)] == -1
    assert x.dprime(0, 0) == dc.dprime(0, 0)
    back = to_double_complex(x)
    for i in range(2):
        for j in range(2):
            assert back.cell(i, j) == dc.cell(i, j)
            assert back.dprime(i, j) == dc.dprime(i, j)
            assert back.dsecond(i, j) == dc.dsecond(i, j)
    with pytest.raises(ConventionViolation):
        from_double_complex(x)
    with pytest.raises(ConventionViolation):
        to_double_complex(dc)


def test_odd_period_conversion_doubles_the_period():
    # one periodic cell Z^2 with nilpotent d''; parity of the first index
    # is only well defined after doubling the period
    cell = FpGroup.free(0, 2)
    nil = make_morphism(cell, cell, IntMatrix([[0, 1], [0, 0]]))
    dc = DoubleComplex(0, Periodic(1), Periodic(1),
                       lambda i, j: cell,
                       lambda i, j: None,
                       lambda i, j: nil)
    x = from_double_complex(dc)
    assert x.support_i.period == 2
    assert x.dsecond(0, 0) == nil
    assert x.dsecond(1, 0) == -nil
    assert x.dsecond(2, 0) == nil
    x.check_axioms(0, 2, 0, 2)
    back = to_double_complex(x)
    for i in range(4):
        assert back.dsecond(i, 0) == nil


# --------------------------------------------------------- mixed supports


def test_periodic_by_window_edges():
    c = periodic_strand(4, [2, 2])
    z4 = FpGroup.from_factors(4, [4])
    two = make_morphism(z4, z4, IntMatrix([[2]]))
    d = Complex.window("cohomological", 4, 0, 2, [z4, z4, z4],
                       {0: two, 1: two})
    x = hom_grid(c, d)
    x.check_axioms(0, 1, 0, 2)
    core = core_homology(x, (0, 1))
    assert core.group.invariant_factors == (2,)
    num, den_prime, den_second = core_side_sets(x, 0, 1)
    assert den_prime == den_second
    assert core.group.order() == len(num) // len(den_prime)
    # at the window's j = 0 edge the column homology below is nonzero
    with pytest.raises(HypothesisViolated):
        core_homology(x, (0, 0))
    report = check_exact_grid(x, 0, 1, 0, 2)
    assert len(report) == 4
    assert all(axis == SECOND for _, axis, _ in report)
    assert {site for site, _, _ in report} == \
        {(0, 0), (1, 0), (0, 2), (1, 2)}
