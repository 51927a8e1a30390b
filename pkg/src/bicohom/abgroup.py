"""Finitely presented abelian groups over Z or Z/m.

A group is Z^r modulo the column lattice of its relation matrix (plus the
implicit m*e_i when the modulus m is positive).  Morphisms, Hom and tensor
groups, intersections and subquotients all reduce to the lattice arithmetic
in the snf module, so elements stay exact integer vectors throughout.  For
Z/m-modules this is lossless: module maps and module tensor products agree
with the underlying abelian-group ones once both sides are killed by m.
"""

from collections import namedtuple
from itertools import product
from math import gcd
from operator import index as _as_int

from . import backend
from .errors import IllDefined, NotContained, ParentMismatch
from .snf import (IntMatrix, _normalize_columns, kernel_basis,
                  lattice_intersect, smith_normal_form, solve_mod)

# orders: one entry per cyclic summand, 0 meaning a Z summand, each other
# entry >= 2 and dividing the next nonzero one; to_cyclic/from_cyclic are the
# transition matrices between ambient and cyclic coordinates.
CyclicForm = namedtuple("CyclicForm", ["orders", "to_cyclic", "from_cyclic"])


def _check_group_modulus(m):
    m = _as_int(m)
    if m < 0 or m == 1:
        raise ValueError("modulus must be 0 (meaning Z) or at least 2")
    return m


def _shared_modulus(g, h):
    # 0 mixes freely with one positive modulus; two distinct positive
    # moduli have no common coefficient ring in scope.
    if g.modulus and h.modulus and g.modulus != h.modulus:
        raise ValueError("incompatible moduli %d and %d"
                         % (g.modulus, h.modulus))
    return max(g.modulus, h.modulus)


class FpGroup:
    """Z^ambient_rank modulo the column lattice of `relations` (and m*e_i)."""

    def __init__(self, modulus, ambient_rank, relations=None):
        self.modulus = _check_group_modulus(modulus)
        self.ambient_rank = _as_int(ambient_rank)
        if self.ambient_rank < 0:
            raise ValueError("ambient rank must be nonnegative")
        if relations is None:
            relations = IntMatrix.zeros(self.ambient_rank, 0)
        elif not isinstance(relations, IntMatrix):
            relations = IntMatrix(relations)
        if relations.rows != self.ambient_rank:
            raise ValueError("relations need one row per ambient generator")
        self.relations = relations
        self._full = None
        self._cyclic = None
        self._echelon = None

    @classmethod
    def free(cls, modulus, rank):
        """Free module of the given rank (Z^rank, or (Z/m)^rank)."""
        return cls(modulus, rank)

    @classmethod
    def from_factors(cls, modulus, factors):
        """Direct sum of cyclic groups; a factor of 0 means a Z summand."""
        factors = [_as_int(d) for d in factors]
        return cls(modulus, len(factors), IntMatrix.diagonal(factors))

    @property
    def full_relations(self):
        if self._full is None:
            rel = self.relations
            if self.modulus:
                rel = rel.hstack(IntMatrix.diagonal(
                    [self.modulus] * self.ambient_rank))
            self._full = rel
        return self._full

    def cyclic_decomposition(self):
        """CyclicForm of this group; cached, and pure so the cache is safe."""
        if self._cyclic is None:
            res = smith_normal_form(self.full_relations)
            diag = res.diagonal
            kept, orders = [], []
            for i in range(self.ambient_rank):
                d = diag[i] if i < len(diag) else 0
                if d != 1:
                    kept.append(i)
                    orders.append(d)
            to_c = IntMatrix([list(res.U.row(i)) for i in kept],
                             cols=self.ambient_rank)
            from_c = IntMatrix.from_columns(
                [res.Uinv.column(i) for i in kept], rows=self.ambient_rank)
            self._cyclic = CyclicForm(tuple(orders), to_c, from_c)
        return self._cyclic

    @property
    def invariant_factors(self):
        return tuple(d for d in self.cyclic_decomposition().orders if d)

    @property
    def free_rank(self):
        return self.cyclic_decomposition().orders.count(0)

    def is_trivial(self):
        return not self.cyclic_decomposition().orders

    def order(self):
        """Number of elements, or None when the group is infinite."""
        if self.free_rank:
            return None
        n = 1
        for d in self.invariant_factors:
            n *= d
        return n

    def describe(self):
        parts = ["Z/%d" % d for d in self.invariant_factors]
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append("Z^%d" % self.free_rank)
        return " (+) ".join(parts) if parts else "0"

    def _reduction(self):
        if self._echelon is None:
            h, _, pivots = backend.col_echelon(
                self.full_relations.to_lists(), False)
            self._echelon = (h, pivots)
        return self._echelon

    def reduce(self, coords):
        """Canonical representative of coords modulo the relation lattice."""
        h, pivots = self._reduction()
        residue, _ = backend.reduce_columns(h, pivots, list(coords))
        return tuple(residue)

    def element(self, coords):
        return Element(self, coords)

    def zero(self):
        return Element(self, (0,) * self.ambient_rank)

    def generators(self):
        """The ambient basis images e_0, ..., e_{r-1}."""
        out = []
        for i in range(self.ambient_rank):
            coords = [0] * self.ambient_rank
            coords[i] = 1
            out.append(Element(self, coords))
        return out

    def elements(self):
        """Iterate every element exactly once; finite groups only."""
        form = self.cyclic_decomposition()
        if 0 in form.orders:
            raise ValueError("cannot enumerate an infinite group")
        for combo in product(*(range(d) for d in form.orders)):
            yield Element(self, form.from_cyclic.mul_vector(combo))

    def __eq__(self, other):
        return (isinstance(other, FpGroup)
                and self.modulus == other.modulus
                and self.ambient_rank == other.ambient_rank
                and self.relations == other.relations)

    def __hash__(self):
        return hash((self.modulus, self.ambient_rank, self.relations))

    def __repr__(self):
        return ("FpGroup(m=%d, rank=%d, relations=%dx%d)"
                % (self.modulus, self.ambient_rank,
                   self.relations.rows, self.relations.cols))


class Element:
    """A coset representative; equality is modulo the parent's relations."""

    __slots__ = ("parent", "coords")

    def __init__(self, parent, coords):
        coords = tuple(_as_int(c) for c in coords)
        if len(coords) != parent.ambient_rank:
            raise ValueError("coordinate length differs from ambient rank")
        self.parent = parent
        self.coords = coords

    def reduced(self):
        return Element(self.parent, self.parent.reduce(self.coords))

    def is_zero(self):
        return not any(self.parent.reduce(self.coords))

    def _check_peer(self, other):
        if not isinstance(other, Element) or other.parent != self.parent:
            raise ParentMismatch("elements live in different groups")

    def __add__(self, other):
        self._check_peer(other)
        return Element(self.parent,
                       tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other):
        self._check_peer(other)
        return Element(self.parent,
                       tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self):
        return Element(self.parent, tuple(-c for c in self.coords))

    def __rmul__(self, k):
        k = _as_int(k)
        return Element(self.parent, tuple(k * c for c in self.coords))

    def __eq__(self, other):
        if not isinstance(other, Element) or other.parent != self.parent:
            return NotImplemented
        return (self.parent.reduce(self.coords)
                == self.parent.reduce(other.coords))

    def __hash__(self):
        return hash(self.parent.reduce(self.coords))

    def __repr__(self):
        return "Element%r" % (self.parent.reduce(self.coords),)


class Morphism:
    """A group morphism given by an integer matrix on ambient coordinates.

    The raw constructor does not verify well-definedness; make_morphism is
    the checked entry point for matrices from outside.
    """

    __slots__ = ("source", "target", "matrix")

    def __init__(self, source, target, matrix):
        if matrix.rows != target.ambient_rank or \
                matrix.cols != source.ambient_rank:
            raise ValueError("matrix shape %dx%d does not map rank %d to %d"
                             % (matrix.rows, matrix.cols,
                                source.ambient_rank, target.ambient_rank))
        self.source = source
        self.target = target
        self.matrix = matrix

    @classmethod
    def identity(cls, group):
        return cls(group, group, IntMatrix.identity(group.ambient_rank))

    @classmethod
    def zero(cls, source, target):
        return cls(source, target,
                   IntMatrix.zeros(target.ambient_rank, source.ambient_rank))

    def __call__(self, elt):
        if elt.parent != self.source:
            raise ParentMismatch("element is not in the morphism's source")
        return Element(self.target, self.matrix.mul_vector(elt.coords))

    def compose(self, other):
        """self after other."""
        if other.target != self.source:
            raise ParentMismatch("composition endpoints do not match")
        return Morphism(other.source, self.target, self.matrix @ other.matrix)

    def __add__(self, other):
        if self.source != other.source or self.target != other.target:
            raise ParentMismatch("morphism sum endpoints do not match")
        return Morphism(self.source, self.target, self.matrix + other.matrix)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return Morphism(self.source, self.target, -self.matrix)

    def is_well_defined(self):
        image = self.matrix @ self.source.full_relations
        return all(not any(self.target.reduce(image.column(j)))
                   for j in range(image.cols))

    def is_zero(self):
        return all(not any(self.target.reduce(self.matrix.column(j)))
                   for j in range(self.matrix.cols))

    def __eq__(self, other):
        if not isinstance(other, Morphism):
            return NotImplemented
        if self.source != other.source or self.target != other.target:
            return False
        return (self - other).is_zero()

    def __hash__(self):
        raise TypeError("morphisms compare semantically; not hashable")

    def __repr__(self):
        return "Morphism(%r)" % (self.matrix,)


def make_morphism(source, target, matrix):
    """Checked constructor: IllDefined when relations are not respected."""
    if not isinstance(matrix, IntMatrix):
        matrix = IntMatrix(matrix, cols=source.ambient_rank)
    f = Morphism(source, target, matrix)
    if not f.is_well_defined():
        raise IllDefined(
            "matrix does not carry source relations into target relations")
    return f


class Subgroup:
    """A subgroup of an FpGroup, recorded by a finite generating set."""

    __slots__ = ("parent", "generators", "_lattice")

    def __init__(self, parent, generators=()):
        gens = []
        for g in generators:
            if isinstance(g, Element):
                if g.parent != parent:
                    raise ParentMismatch("generator is not in the parent")
                gens.append(g)
            else:
                gens.append(Element(parent, g))
        self.parent = parent
        self.generators = tuple(gens)
        self._lattice = None

    @classmethod
    def zero(cls, parent):
        return cls(parent, ())

    @classmethod
    def full(cls, parent):
        return cls(parent, parent.generators())

    def as_matrix(self):
        return IntMatrix.from_columns([g.coords for g in self.generators],
                                      rows=self.parent.ambient_rank)

    def _reduction(self):
        # echelon of generators + parent relations: the lifted lattice in Z^r
        if self._lattice is None:
            mat = self.as_matrix().hstack(self.parent.full_relations)
            h, _, pivots = backend.col_echelon(mat.to_lists(), False)
            self._lattice = (h, pivots)
        return self._lattice

    def contains(self, elt):
        if elt.parent != self.parent:
            raise ParentMismatch("element is not in the parent group")
        h, pivots = self._reduction()
        residue, _ = backend.reduce_columns(h, pivots, list(elt.coords))
        return not any(residue)

    def __contains__(self, elt):
        return self.contains(elt)

    def includes(self, other):
        """Whether other is a subgroup of self (generator by generator)."""
        if other.parent != self.parent:
            raise ParentMismatch("subgroups of different groups")
        return all(self.contains(g) for g in other.generators)

    def is_zero(self):
        return all(g.is_zero() for g in self.generators)

    def __eq__(self, other):
        if not isinstance(other, Subgroup):
            return NotImplemented
        if other.parent != self.parent:
            return False
        return self.includes(other) and other.includes(self)

    __hash__ = None

    def __repr__(self):
        return "Subgroup(%d generators)" % len(self.generators)


def kernel_image(f):
    """(kernel, image) of a morphism, as subgroups of source and target.

    The kernel generators span the full preimage of the target relation
    lattice: every x with f(x) == 0 appears, including the source relations
    themselves (which are then zero as elements).
    """
    src, tgt = f.source, f.target
    stacked = f.matrix.hstack(tgt.full_relations)
    ker = kernel_basis(stacked, 0)
    gens = []
    for j in range(ker.cols):
        x = tuple(ker[(i, j)] for i in range(src.ambient_rank))
        if any(x):
            elt = Element(src, x)
            if not elt.is_zero():
                gens.append(elt)
    kernel = Subgroup(src, gens)
    image = Subgroup(tgt, [g for g in (f(e) for e in src.generators())
                           if not g.is_zero()])
    return kernel, image


class Subquotient:
    """num/den packaged with its projection and lifting maps."""

    __slots__ = ("group", "parent", "_num_matrix")

    def __init__(self, group, parent, num_matrix):
        self.group = group
        self.parent = parent
        self._num_matrix = num_matrix

    def project(self, elt):
        """Class of a parent element lying in the numerator subgroup."""
        if elt.parent != self.parent:
            raise ParentMismatch("element is not in the ambient group")
        stacked = self._num_matrix.hstack(self.parent.full_relations)
        sol = solve_mod(stacked, elt.coords, 0)
        if sol is None:
            raise NotContained("element is outside the numerator subgroup")
        return Element(self.group, sol[:self.group.ambient_rank])

    def lift(self, elt):
        """A parent-group representative of a class."""
        if elt.parent != self.group:
            raise ParentMismatch("element is not a class of this subquotient")
        return Element(self.parent, self._num_matrix.mul_vector(elt.coords))


def subquotient(parent, num, den):
    """The group num/den for subgroups den <= num of parent.

    Ambient generators of the result are num's generators; relations are
    every integer combination of them that lands in den plus the parent
    relations.  project/lift on the returned object invert one another up
    to den, and lift(project(x)) == x holds in the parent.
    """
    if num.parent != parent or den.parent != parent:
        raise ParentMismatch("subgroups of a different group")
    if not num.includes(den):
        raise NotContained("denominator is not inside the numerator")
    num_mat = num.as_matrix()
    t = num_mat.cols
    stacked = num_mat.hstack(den.as_matrix()).hstack(parent.full_relations)
    ker = kernel_basis(stacked, 0)
    rel_cols = [col for col in
                ((tuple(ker[(i, j)] for i in range(t)))
                 for j in range(ker.cols)) if any(col)]
    rels = _normalize_columns(rel_cols, t)
    group = FpGroup(parent.modulus, t, rels)
    return Subquotient(group, parent, num_mat)


class HomGroup:
    """Hom(source, target) as an FpGroup with a realize/element_of pair.

    Components come from the cyclic decompositions: Hom(Z/a, Z/b) is cyclic
    of order gcd(a, b), generated by 1 |-> b/gcd(a, b); Hom(Z, H) is H;
    Hom(Z/a, Z) vanishes for a > 0.  Trivial components are dropped.
    """

    __slots__ = ("source", "target", "group", "_pairs", "_scales")

    def __init__(self, source, target):
        modulus = _shared_modulus(source, target)
        s_orders = source.cyclic_decomposition().orders
        t_orders = target.cyclic_decomposition().orders
        pairs, orders, scales = [], [], []
        for i, a in enumerate(s_orders):
            for j, b in enumerate(t_orders):
                if b == 0 and a != 0:
                    continue
                o = gcd(a, b)
                s = b // o if b else 1
                if o == 1:
                    continue
                pairs.append((i, j))
                orders.append(o)
                scales.append(s)
        self.source = source
        self.target = target
        self.group = FpGroup(modulus, len(pairs), IntMatrix.diagonal(orders))
        self._pairs = tuple(pairs)
        self._scales = tuple(scales)

    def realize(self, elt):
        """The homomorphism source -> target that an element encodes."""
        if elt.parent != self.group:
            raise ParentMismatch("element is not in this hom group")
        s_form = self.source.cyclic_decomposition()
        t_form = self.target.cyclic_decomposition()
        ks, kt = len(s_form.orders), len(t_form.orders)
        body = [[0] * ks for _ in range(kt)]
        for v, (i, j), s in zip(elt.coords, self._pairs, self._scales):
            body[j][i] += s * v
        mat = (t_form.from_cyclic @ IntMatrix(body, cols=ks)
               @ s_form.to_cyclic)
        return Morphism(self.source, self.target, mat)

    def element_of(self, f):
        """Inverse of realize on well-defined morphisms source -> target."""
        if f.source != self.source or f.target != self.target:
            raise ParentMismatch("morphism endpoints do not match")
        s_form = self.source.cyclic_decomposition()
        t_form = self.target.cyclic_decomposition()
        body = t_form.to_cyclic @ f.matrix @ s_form.from_cyclic
        coords = []
        for (i, j), s in zip(self._pairs, self._scales):
            # well-definedness of f forces exact divisibility by the scale
            q, r = divmod(body[(j, i)], s)
            if r:
                raise IllDefined("morphism does not respect the relations")
            coords.append(q)
        return Element(self.group, coords)


def hom_group(source, target):
    return HomGroup(source, target)


def induced_hom_map(src_hom, dst_hom, precompose=None, postcompose=None):
    """phi |-> postcompose . phi . precompose between two hom groups.

    precompose: dst_hom.source -> src_hom.source (None for identity);
    postcompose: src_hom.target -> dst_hom.target (None for identity).
    """
    if precompose is None:
        precompose = Morphism.identity(src_hom.source)
    if postcompose is None:
        postcompose = Morphism.identity(src_hom.target)
    if precompose.source != dst_hom.source or \
            precompose.target != src_hom.source:
        raise ParentMismatch("precomposition map endpoints do not match")
    if postcompose.source != src_hom.target or \
            postcompose.target != dst_hom.target:
        raise ParentMismatch("postcomposition map endpoints do not match")
    cols = []
    for e in src_hom.group.generators():
        phi = src_hom.realize(e)
        psi = postcompose.compose(phi.compose(precompose))
        cols.append(dst_hom.element_of(psi).coords)
    mat = IntMatrix.from_columns(cols, rows=dst_hom.group.ambient_rank)
    return make_morphism(src_hom.group, dst_hom.group, mat)


class TensorGroup:
    """source (x) target as an FpGroup with the bilinear `pure` map.

    Z/a (x) Z/b is cyclic of order gcd(a, b) with gcd(0, 0) = 0; the (i, j)
    coordinate of pure(x, y) is the product of the i-th and j-th cyclic
    coordinates.  Trivial components are dropped.
    """

    __slots__ = ("source", "target", "group", "_pairs")

    def __init__(self, source, target):
        modulus = _shared_modulus(source, target)
        s_orders = source.cyclic_decomposition().orders
        t_orders = target.cyclic_decomposition().orders
        pairs, orders = [], []
        for i, a in enumerate(s_orders):
            for j, b in enumerate(t_orders):
                o = gcd(a, b)
                if o == 1:
                    continue
                pairs.append((i, j))
                orders.append(o)
        self.source = source
        self.target = target
        self.group = FpGroup(modulus, len(pairs), IntMatrix.diagonal(orders))
        self._pairs = tuple(pairs)

    def pure(self, x, y):
        """The elementary tensor x (x) y."""
        if x.parent != self.source or y.parent != self.target:
            raise ParentMismatch("factors are not in the tensor's factors")
        xc = self.source.cyclic_decomposition().to_cyclic.mul_vector(x.coords)
        yc = self.target.cyclic_decomposition().to_cyclic.mul_vector(y.coords)
        return Element(self.group, [xc[i] * yc[j] for (i, j) in self._pairs])


def tensor_group(source, target):
    return TensorGroup(source, target)


def induced_tensor_map(src_tensor, dst_tensor, f, g):
    """f (x) g between tensor groups: pure(x, y) |-> pure(f(x), g(y))."""
    if f.source != src_tensor.source or f.target != dst_tensor.source:
        raise ParentMismatch("left factor map endpoints do not match")
    if g.source != src_tensor.target or g.target != dst_tensor.target:
        raise ParentMismatch("right factor map endpoints do not match")
    s_from = src_tensor.source.cyclic_decomposition().from_cyclic
    t_from = src_tensor.target.cyclic_decomposition().from_cyclic
    cols = []
    for (i, j) in src_tensor._pairs:
        x = Element(src_tensor.source, s_from.column(i))
        y = Element(src_tensor.target, t_from.column(j))
        cols.append(dst_tensor.pure(f(x), g(y)).coords)
    mat = IntMatrix.from_columns(cols, rows=dst_tensor.group.ambient_rank)
    return make_morphism(src_tensor.group, dst_tensor.group, mat)


def intersect(s1, s2):
    """The subgroup s1 ∩ s2 of their shared parent."""
    if s1.parent != s2.parent:
        raise ParentMismatch("subgroups of different groups")
    parent = s1.parent
    full = parent.full_relations
    lat1 = s1.as_matrix().hstack(full)
    lat2 = s2.as_matrix().hstack(full)
    meet = lattice_intersect(lat1, lat2)
    gens = [Element(parent, meet.column(j)) for j in range(meet.cols)]
    return Subgroup(parent, [g for g in gens if not g.is_zero()])


def preimage_element(f, target_elt):
    """Some x with f(x) == target_elt, or None when none exists."""
    if target_elt.parent != f.target:
        raise ParentMismatch("element is not in the morphism's target")
    stacked = f.matrix.hstack(f.target.full_relations)
    sol = solve_mod(stacked, target_elt.coords, 0)
    if sol is None:
        return None
    x = Element(f.source, sol[:f.source.ambient_rank])
    assert f(x) == target_elt
    return x


def direct_sum(g, h):
    """(G ⊕ H, (inject_g, inject_h), (project_g, project_h))."""
    if g.modulus != h.modulus:
        raise ValueError("direct summands must share a modulus")
    rg, rh = g.ambient_rank, h.ambient_rank
    top = g.relations.hstack(IntMatrix.zeros(rg, h.relations.cols))
    bot = IntMatrix.zeros(rh, g.relations.cols).hstack(h.relations)
    total = FpGroup(g.modulus, rg + rh, top.vstack(bot))
    eye_g = IntMatrix.identity(rg)
    eye_h = IntMatrix.identity(rh)
    inj_g = Morphism(g, total, eye_g.vstack(IntMatrix.zeros(rh, rg)))
    inj_h = Morphism(h, total, IntMatrix.zeros(rg, rh).vstack(eye_h))
    proj_g = Morphism(total, g, eye_g.hstack(IntMatrix.zeros(rg, rh)))
    proj_h = Morphism(total, h, IntMatrix.zeros(rh, rg).hstack(eye_h))
    return total, (inj_g, inj_h), (proj_g, proj_h)


def invert_isomorphism(f):
    """The two-sided inverse of an isomorphism; ValueError otherwise."""
    cols = []
    for e in f.target.generators():
        x = preimage_element(f, e)
        if x is None:
            raise ValueError("morphism is not surjective")
        cols.append(x.coords)
    back = IntMatrix.from_columns(cols, rows=f.source.ambient_rank)
    g = Morphism(f.target, f.source, back)
    if not g.is_well_defined():
        raise ValueError("morphism is not injective")
    if g.compose(f) != Morphism.identity(f.source) or \
            f.compose(g) != Morphism.identity(f.target):
        raise ValueError("morphism is not an isomorphism")
    return g
