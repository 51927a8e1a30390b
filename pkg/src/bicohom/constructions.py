"""Builders on top of the grid machinery.

Hom and tensor bicomplexes assemble a lazy grid from two complexes; the
Hom squares commute on the nose (both composites send f to d_D . f . d_C),
which is the reason the grid convention carries no signs.  Complete
resolutions over Z/m are 2-periodic strand sums read off the canonical
cyclic decomposition, together with an explicit isomorphism witness from
the degree-0 cycles back to the module.  Randomized exact complexes of
free modules feed the property tests; they are deterministic in the seed
and re-checked for exactness before being returned.
"""

from random import Random

from .abgroup import (FpGroup, Morphism, Subgroup, hom_group,
                      induced_hom_map, induced_tensor_map, kernel_image,
                      make_morphism, preimage_element, subquotient,
                      tensor_group)
from .bicomplexes import Bicomplex
from .complexes import (COHOMOLOGICAL, HOMOLOGICAL, Complex, Periodic,
                        Window, cycles, homology, is_exact)
from .errors import (ConventionViolation, HypothesisViolated,
                     InternalChaseFailure, NotAModule)
from .snf import IntMatrix


def _merged_modulus(c, d):
    if c.modulus and d.modulus and c.modulus != d.modulus:
        raise ValueError("incompatible moduli %d and %d"
                         % (c.modulus, d.modulus))
    return max(c.modulus, d.modulus)


def _canon_index(support, n):
    if isinstance(support, Periodic):
        return n % support.period
    return n


# -- bicomplexes from pairs of complexes ------------------------------------


def hom_bicomplex(c, d):
    """Hom(C_i, D^j) with d' = precomposition and d'' = postcomposition.

    Row j is the complex Hom(C, D^j) and column i is Hom(C_i, D); both
    differentials raise their index, so no reindexing is needed.
    """
    if c.convention != HOMOLOGICAL:
        raise ValueError("hom_bicomplex expects a homological first factor")
    if d.convention != COHOMOLOGICAL:
        raise ValueError("hom_bicomplex expects a cohomological second "
                         "factor")
    modulus = _merged_modulus(c, d)
    homs = {}

    def hom_at(i, j):
        key = (_canon_index(c.support, i), _canon_index(d.support, j))
        if key not in homs:
            homs[key] = hom_group(c.cell(i), d.cell(j))
        return homs[key]

    return Bicomplex(
        modulus, c.support, d.support,
        lambda i, j: hom_at(i, j).group,
        lambda i, j: induced_hom_map(hom_at(i, j), hom_at(i + 1, j),
                                     precompose=c.diff(i + 1)),
        lambda i, j: induced_hom_map(hom_at(i, j), hom_at(i, j + 1),
                                     postcompose=d.diff(j)))


def _reflected(support):
    if isinstance(support, Periodic):
        return support
    return Window(-support.hi, -support.lo, support.zero_outside)


def tensor_bicomplex(c, d):
    """C (x) D as a raising grid via cell(i, j) = C_{-i} (x) D_{-j}.

    Both factors are homological; their lowering differentials become the
    grid's d' and d'' under the reflection, and the squares commute since
    d' (x) id and id (x) d'' act on disjoint factors.
    """
    if c.convention != HOMOLOGICAL or d.convention != HOMOLOGICAL:
        raise ValueError("tensor_bicomplex expects homological factors")
    modulus = _merged_modulus(c, d)
    tens = {}

    def ten_at(i, j):
        key = (_canon_index(c.support, -i), _canon_index(d.support, -j))
        if key not in tens:
            tens[key] = tensor_group(c.cell(-i), d.cell(-j))
        return tens[key]

    return Bicomplex(
        modulus, _reflected(c.support), _reflected(d.support),
        lambda i, j: ten_at(i, j).group,
        lambda i, j: induced_tensor_map(ten_at(i, j), ten_at(i + 1, j),
                                        c.diff(-i),
                                        Morphism.identity(d.cell(-j))),
        lambda i, j: induced_tensor_map(ten_at(i, j), ten_at(i, j + 1),
                                        Morphism.identity(c.cell(-i)),
                                        d.diff(-j)))


# -- complete resolutions over Z/m ------------------------------------------


def _zm_factors(m, module):
    if m < 2:
        raise NotAModule("complete resolutions need a modulus of at least 2")
    if module.modulus != m:
        raise NotAModule("the group's modulus context is %d, expected %d"
                         % (module.modulus, m))
    factors = module.invariant_factors
    for f in factors:
        if m % f:
            raise NotAModule("invariant factor %d does not divide %d"
                             % (f, m))
    return factors


def _strand_complex(m, factors, convention):
    """The 2-periodic free strand sum: d_0 = diag(d), d_1 = diag(m/d)."""
    k = len(factors)
    cell = FpGroup.free(m, k)
    d0 = make_morphism(cell, cell,
                       IntMatrix.diagonal(list(factors), rows=k, cols=k))
    d1 = make_morphism(cell, cell,
                       IntMatrix.diagonal([m // f for f in factors],
                                          rows=k, cols=k))
    return Complex.periodic(convention, m, 2, [cell, cell], {0: d0, 1: d1})


def _cycle_witness(complex_, degree, module, factors, m):
    """Package Z at `degree` as a group plus the iso onto the module.

    A cycle's i-th coordinate is a multiple of m/d_i; dividing out the
    scale sends the generator (m/d_i) e_i to the module's i-th cyclic
    generator.
    """
    cell = complex_.cell(degree)
    packaged = subquotient(cell, cycles(complex_, degree),
                           Subgroup.zero(cell))
    basis = module.cyclic_decomposition().from_cyclic
    cols = []
    for g in packaged.group.generators():
        lifted = cell.reduce(packaged.lift(g).coords)
        weights = [lifted[i] // (m // f) for i, f in enumerate(factors)]
        cols.append(basis.mul_vector(weights))
    mat = IntMatrix.from_columns(cols, rows=module.ambient_rank)
    return make_morphism(packaged.group, module, mat)


def _checked_exact(c, what):
    report = is_exact(c)
    if report:
        raise ConventionViolation("%s failed its exactness check: %r"
                                  % (what, report))
    return c


def complete_projective_resolution(m, module):
    """(P, witness) with P the 2-periodic free strand sum for the module's
    invariant factors and witness : Z_0(P) -> module an isomorphism.

    ker d_0 = ker diag(d) is exactly (+) (m/d) Z/m = (+) Z/d, so Z_0
    recovers the module; free factors d = m contribute a 0/1-alternating
    strand that is exact and invisible to every Tate group.
    """
    factors = _zm_factors(m, module)
    p = _checked_exact(_strand_complex(m, factors, HOMOLOGICAL),
                       "complete projective resolution")
    return p, _cycle_witness(p, 0, module, factors, m)


def complete_injective_resolution(m, module):
    """(E, witness): the strand sum read cohomologically, d^0 = diag(d),
    with witness : Z^0(E) -> module.  Free = injective over Z/m."""
    factors = _zm_factors(m, module)
    e = _checked_exact(_strand_complex(m, factors, COHOMOLOGICAL),
                       "complete injective resolution")
    return e, _cycle_witness(e, 0, module, factors, m)


# -- randomized exact complexes ---------------------------------------------


def _transvection(n, i, j, k):
    rows = [[1 if a == b else 0 for b in range(n)] for a in range(n)]
    rows[i][j] = k
    return IntMatrix(rows, cols=n)


def _unimodular_pair(rng, n, steps=8):
    """(U, U^-1) accumulated from the same random elementary moves."""
    u = IntMatrix.identity(n)
    uinv = IntMatrix.identity(n)
    if n < 2:
        return u, uinv
    for _ in range(steps):
        i = rng.randrange(n)
        j = rng.randrange(n - 1)
        if j >= i:
            j += 1
        k = rng.randint(-2, 2)
        u = _transvection(n, i, j, k) @ u
        uinv = uinv @ _transvection(n, i, j, -k)
    return u, uinv


def _strand_sum(m, rng, blocks, convention):
    if blocks == 0:
        return Complex.periodic(convention, m, 2,
                                [FpGroup(m, 0), FpGroup(m, 0)])
    divisors = [d for d in range(1, m + 1) if m % d == 0]
    picks = [rng.choice(divisors) for _ in range(blocks)]
    cell = FpGroup.free(m, blocks)
    d0 = IntMatrix.diagonal(picks, rows=blocks, cols=blocks)
    d1 = IntMatrix.diagonal([m // d for d in picks],
                            rows=blocks, cols=blocks)
    u0, u0inv = _unimodular_pair(rng, blocks)
    u1, u1inv = _unimodular_pair(rng, blocks)
    return Complex.periodic(
        convention, m, 2, [cell, cell],
        {0: make_morphism(cell, cell, u1 @ d0 @ u0inv),
         1: make_morphism(cell, cell, u0 @ d1 @ u1inv)})


def _disc_sum(m, rng, blocks, convention):
    if blocks == 0:
        return Complex.zero(convention, m)
    bases = sorted(rng.randrange(0, blocks + 2) for _ in range(blocks))
    lo, hi = bases[0], bases[-1] + 1
    slots = {n: [] for n in range(lo, hi + 1)}
    for b, t in enumerate(bases):
        slots[t].append((b, 0))
        slots[t + 1].append((b, 1))
    cells = {n: FpGroup.free(m, len(slots[n])) for n in slots}
    pairs = {n: _unimodular_pair(rng, len(slots[n])) for n in slots}
    diffs = {}
    for n in slots:
        tgt = n - 1 if convention == HOMOLOGICAL else n + 1
        if tgt not in slots:
            continue
        # identity on each disc, aimed along the convention's direction
        row_tag, col_tag = (0, 1) if convention == HOMOLOGICAL else (1, 0)
        mat = [[1 if rs[0] == cs[0] and rs[1] == row_tag and cs[1] == col_tag
                else 0 for cs in slots[n]] for rs in slots[tgt]]
        conjugated = (pairs[tgt][0]
                      @ IntMatrix(mat, cols=len(slots[n])) @ pairs[n][1])
        diffs[n] = make_morphism(cells[n], cells[tgt], conjugated)
    return Complex.window(convention, m, lo, hi, cells, diffs)


def random_exact_complex(m, seed, blocks=3, kind="periodic",
                         convention=HOMOLOGICAL):
    """A seeded exact complex of free Z/m modules.

    kind "periodic": a rank-`blocks` 2-periodic divisor strand sum;
    kind "window": `blocks` two-cell discs at seeded positions, genuinely
    zero outside.  Every degree is conjugated by a seeded unimodular
    change of basis, which preserves freeness and exactness but not the
    diagonal shape; exactness is re-checked before returning.
    """
    if m < 2:
        raise ValueError("modulus must be at least 2")
    rng = Random(seed)
    if kind == "periodic":
        c = _strand_sum(m, rng, blocks, convention)
    elif kind == "window":
        c = _disc_sum(m, rng, blocks, convention)
    else:
        raise ValueError("kind must be 'periodic' or 'window'")
    return _checked_exact(c, "random exact complex")


# -- kernel identification witnesses ----------------------------------------


def _verify_inverse_pair(forward, backward, name):
    if backward.compose(forward) != Morphism.identity(forward.source) or \
            forward.compose(backward) != Morphism.identity(forward.target):
        raise InternalChaseFailure(
            "%s: the composites are not the identity" % name)


def _packaged(parent, subgroup):
    return subquotient(parent, subgroup, Subgroup.zero(parent))


def zprime_witness(c, d, bidegree):
    """Mutually inverse maps between Z' of Hom(C, D) at (i, j) and
    Hom(Z_{i-1}(C), D^j).

    A d'-cocycle kills B_i(C), and exactness at i and i-1 lets d_i identify
    C_i/B_i(C) with Z_{i-1}(C); note the cycle degree really is i-1 --
    restricting along the differential lowers the degree by one, which
    periodic examples cannot see.  Verified to compose to the identity
    both ways before returning.
    """
    i, j = bidegree
    for n in (i, i - 1):
        h = homology(c, n)
        if not h.group.is_trivial():
            raise HypothesisViolated(
                "the first factor must be exact at degree %d; found %s"
                % (n, h.group.describe()))
    hom_cell = hom_group(c.cell(i), d.cell(j))
    dprime = induced_hom_map(hom_cell, hom_group(c.cell(i + 1), d.cell(j)),
                             precompose=c.diff(i + 1))
    zp, _ = kernel_image(dprime)
    z_side = _packaged(hom_cell.group, zp)
    cyc_side = _packaged(c.cell(i - 1), cycles(c, i - 1))
    target_hom = hom_group(cyc_side.group, d.cell(j))
    t_rank = d.cell(j).ambient_rank
    fwd_cols = []
    for g in z_side.group.generators():
        f = hom_cell.realize(z_side.lift(g))
        cols = []
        for zgen in cyc_side.group.generators():
            w = preimage_element(c.diff(i), cyc_side.lift(zgen))
            if w is None:
                raise InternalChaseFailure(
                    "no differential preimage for a cycle at degree %d"
                    % (i - 1,))
            cols.append(f(w).coords)
        restricted = make_morphism(cyc_side.group, d.cell(j),
                                   IntMatrix.from_columns(cols, rows=t_rank))
        fwd_cols.append(target_hom.element_of(restricted).coords)
    forward = make_morphism(
        z_side.group, target_hom.group,
        IntMatrix.from_columns(fwd_cols,
                               rows=target_hom.group.ambient_rank))
    bwd_cols = []
    for e in target_hom.group.generators():
        g = target_hom.realize(e)
        cols = [g(cyc_side.project(c.diff(i)(b))).coords
                for b in c.cell(i).generators()]
        spread = make_morphism(c.cell(i), d.cell(j),
                               IntMatrix.from_columns(cols, rows=t_rank))
        bwd_cols.append(z_side.project(hom_cell.element_of(spread)).coords)
    backward = make_morphism(
        target_hom.group, z_side.group,
        IntMatrix.from_columns(bwd_cols, rows=z_side.group.ambient_rank))
    _verify_inverse_pair(forward, backward, "zprime_witness")
    return forward, backward


def zsecond_witness(c, d, bidegree):
    """Mutually inverse maps between Z'' of Hom(C, D) at (i, j) and
    Hom(C_i, Z^j(D)).

    A d''-cocycle is exactly a morphism landing inside ker d^j, so this is
    a corestriction: no exactness hypothesis and no degree shift.
    """
    i, j = bidegree
    hom_cell = hom_group(c.cell(i), d.cell(j))
    dsecond = induced_hom_map(hom_cell, hom_group(c.cell(i), d.cell(j + 1)),
                              postcompose=d.diff(j))
    zs, _ = kernel_image(dsecond)
    z_side = _packaged(hom_cell.group, zs)
    cyc_side = _packaged(d.cell(j), cycles(d, j))
    target_hom = hom_group(c.cell(i), cyc_side.group)
    fwd_cols = []
    for g in z_side.group.generators():
        f = hom_cell.realize(z_side.lift(g))
        cols = [cyc_side.project(f(b)).coords
                for b in c.cell(i).generators()]
        corestricted = make_morphism(
            c.cell(i), cyc_side.group,
            IntMatrix.from_columns(cols,
                                   rows=cyc_side.group.ambient_rank))
        fwd_cols.append(target_hom.element_of(corestricted).coords)
    forward = make_morphism(
        z_side.group, target_hom.group,
        IntMatrix.from_columns(fwd_cols,
                               rows=target_hom.group.ambient_rank))
    bwd_cols = []
    for e in target_hom.group.generators():
        g = target_hom.realize(e)
        cols = [cyc_side.lift(g(b)).coords for b in c.cell(i).generators()]
        included = make_morphism(
            c.cell(i), d.cell(j),
            IntMatrix.from_columns(cols, rows=d.cell(j).ambient_rank))
        bwd_cols.append(z_side.project(hom_cell.element_of(included)).coords)
    backward = make_morphism(
        target_hom.group, z_side.group,
        IntMatrix.from_columns(bwd_cols, rows=z_side.group.ambient_rank))
    _verify_inverse_pair(forward, backward, "zsecond_witness")
    return forward, backward
