"""Mapping-class action on the r-spin structures of a fixed smooth surface.

An r-spin structure is a splitting of the end of the Gysin sequence
0 -> Z/r -> H_1(L^o) -> H_1(X) -> 0, written relative to the tangential
lifts B~_i of a chain basis B_1..B_{2g} as s(B_i) = B~_i + xi_i * lambda~.
So the set of structures is (Z/r)^{2g} with coordinate ``xi``.

A Dehn twist about a curve of class c with lift c~ = sum c_i B~_i + k lambda~
acts on H_1(L^o) by s~ -> s~ + <s, c> c~. Transporting the splitting
through it gives

    xi'_j = xi_j + (k - sum_i xi_i c_i) * <B_j, c>.

Chain curves B_i are their own tangential lifts, so k = 0 for them. A
bounding pair acts as the translation by (2 g1 - sum_{S} m_k) times the
dual of the curve, and a separating twist acts trivially.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, product
from math import gcd
from typing import Iterable, Iterator, Sequence

from .arith import LevelParams, _check_twists, divisors, ell, exists_spin, gcd_all

Vec = tuple[int, ...]


@dataclass(frozen=True)
class ChainForm:
    """Intersection form of the chain basis: <B_i, B_{i+1}> = 1, all others zero."""

    g: int
    r: int

    @property
    def dim(self) -> int:
        return 2 * self.g

    def entry(self, i: int, j: int) -> int:
        if j == i + 1:
            return 1 % self.r
        if i == j + 1:
            return -1 % self.r
        return 0

    @property
    def matrix(self) -> list[list[int]]:
        return [[self.entry(i, j) for j in range(self.dim)] for i in range(self.dim)]

    def apply(self, c: Sequence[int]) -> Vec:
        """The vector (<B_j, c>)_j."""
        n, r = self.dim, self.r
        out = [0] * n
        for j in range(n):
            if j + 1 < n:
                out[j] += c[j + 1]
            if j > 0:
                out[j] -= c[j - 1]
        return tuple(x % r for x in out)


def pairing(form: ChainForm, c1: Sequence[int], c2: Sequence[int]) -> int:
    if len(c1) != form.dim or len(c2) != form.dim:
        raise ValueError(f"vectors must have length {form.dim}")
    return sum(a * b for a, b in zip(c1, form.apply(c2))) % form.r


def basis_vector(i: int, dim: int) -> Vec:
    return tuple(int(j == i) for j in range(dim))


@dataclass(frozen=True)
class SpinCoordinates:
    xi: Vec
    r: int

    def __post_init__(self):
        if len(self.xi) % 2:
            raise ValueError("spin coordinates need an even number of entries")
        object.__setattr__(self, "xi", tuple(x % self.r for x in self.xi))

    @property
    def g(self) -> int:
        return len(self.xi) // 2


@dataclass(frozen=True)
class TwistGenerator:
    """One mapping class: ``curve_twist``, ``translation`` or ``separating``.

    Calling the generator on a coordinate tuple returns its image.
    """

    kind: str
    g: int
    r: int
    c: Vec = ()
    k: int = 0
    t: Vec = ()
    _dual: Vec = field(default=(), repr=False, compare=False)

    def __post_init__(self):
        dim = 2 * self.g
        if self.kind == "curve_twist":
            if len(self.c) != dim:
                raise ValueError(f"curve class must have length {dim}")
            object.__setattr__(self, "c", tuple(x % self.r for x in self.c))
            object.__setattr__(self, "k", self.k % self.r)
            object.__setattr__(self, "_dual", ChainForm(self.g, self.r).apply(self.c))
        elif self.kind == "translation":
            if len(self.t) != dim:
                raise ValueError(f"translation vector must have length {dim}")
            object.__setattr__(self, "t", tuple(x % self.r for x in self.t))
        elif self.kind != "separating":
            raise ValueError(f"unknown generator kind {self.kind!r}")

    @classmethod
    def curve_twist(cls, g: int, r: int, c: Sequence[int], k: int = 0) -> "TwistGenerator":
        return cls("curve_twist", g, r, c=tuple(c), k=k)

    @classmethod
    def translation(cls, g: int, r: int, t: Sequence[int]) -> "TwistGenerator":
        return cls("translation", g, r, t=tuple(t))

    @classmethod
    def separating(cls, g: int, r: int) -> "TwistGenerator":
        return cls("separating", g, r)

    def __call__(self, xi: Vec) -> Vec:
        r = self.r
        if self.kind == "curve_twist":
            a = (self.k - sum(x * y for x, y in zip(xi, self.c))) % r
            if not a:
                return xi
            return tuple((x + a * d) % r for x, d in zip(xi, self._dual))
        if self.kind == "translation":
            return tuple((x + y) % r for x, y in zip(xi, self.t))
        return xi

    def inverse(self) -> "TwistGenerator":
        if self.kind == "translation":
            return TwistGenerator.translation(self.g, self.r, [-x for x in self.t])
        if self.kind == "separating":
            return self
        return _InverseTwist(self)


class _InverseTwist:
    """Inverse of a curve twist: xi'_j = xi_j - (k - xi.c) <B_j, c>.

    Valid because the shift vector <B_., c> is orthogonal to c under the dot
    product (sum_j c_j <B_j, c> = <c, c> = 0), so xi.c is unchanged.
    """

    def __init__(self, twist: TwistGenerator):
        self.twist = twist
        self.kind = "inverse_curve_twist"

    def __call__(self, xi: Vec) -> Vec:
        tw = self.twist
        a = (tw.k - sum(x * y for x, y in zip(xi, tw.c))) % tw.r
        return tuple((x - a * d) % tw.r for x, d in zip(xi, tw._dual))


def twist_action(gen: TwistGenerator, xi: SpinCoordinates) -> SpinCoordinates:
    if gen.g != xi.g or gen.r != xi.r:
        raise ValueError(f"generator (g={gen.g}, r={gen.r}) does not act on (g={xi.g}, r={xi.r})")
    return SpinCoordinates(gen(xi.xi), xi.r)


@dataclass(frozen=True)
class BoundingPairSpec:
    """Bounding pair dual to B_i cutting off genus g1 carrying the marked points in S.

    ``i`` and the entries of ``S`` are 0-based.
    """

    i: int
    g1: int
    S: frozenset[int] = frozenset()

    def coefficient(self, r: int, m: Sequence[int]) -> int:
        return (2 * self.g1 - sum(m[k] for k in self.S)) % r


def bounding_pair_generator(spec: BoundingPairSpec, params: LevelParams, m: Sequence[int]) -> TwistGenerator:
    _check_twists(params, m)
    g, r = params.g, params.r
    if not 0 <= spec.g1 <= g - 1:
        raise ValueError(f"g1={spec.g1} out of range 0..{g - 1}")
    if not 0 <= spec.i < 2 * g:
        raise ValueError(f"basis index {spec.i} out of range 0..{2 * g - 1}")
    if any(not 0 <= k < len(m) for k in spec.S):
        raise ValueError(f"marked-point subset {sorted(spec.S)} out of range")
    a = spec.coefficient(r, m)
    column = ChainForm(g, r).apply(basis_vector(spec.i, 2 * g))
    return TwistGenerator.translation(g, r, [a * x for x in column])


def mod2_offset(c: Sequence[int]) -> int:
    """Lift offset k_c = 1 + sum c_i + sum_{i<j} c_i c_j J_ij (mod 2) of a curve of class c.

    This is the offset that makes q(c) = phi(c~) + 1 a quadratic refinement
    of the mod-2 chain form; it vanishes on the chain basis.
    """
    n = len(c)
    cross = sum(c[i] * c[i + 1] for i in range(n - 1))
    return (1 + sum(c) + cross) % 2


def generator_set(params: LevelParams, m: Sequence[int], mode: str = "paper") -> list[TwistGenerator]:
    """Generators of the monodromy action.

    ``paper``: chain twists, every bounding-pair translation, and one
    separating twist. ``mod2_full`` (r = 2 only): the twist about every
    nonzero class with its quadratic-refinement offset.
    """
    _check_twists(params, m)
    g, r = params.g, params.r
    dim = 2 * g
    if mode == "mod2_full":
        if r != 2:
            raise ValueError(f"mode mod2_full requires r=2, got r={r}")
        return [
            TwistGenerator.curve_twist(g, r, c, mod2_offset(c))
            for c in product((0, 1), repeat=dim)
            if any(c)
        ]
    if mode != "paper":
        raise ValueError(f"unknown generator mode {mode!r}")
    gens = [TwistGenerator.curve_twist(g, r, basis_vector(i, dim)) for i in range(dim)]
    gens.extend(translation_generators(params, m))
    gens.append(TwistGenerator.separating(g, r))
    return gens


def translation_generators(params: LevelParams, m: Sequence[int]) -> list[TwistGenerator]:
    """All bounding-pair translations, one per (basis index, g1, subset)."""
    g = params.g
    gens = []
    for i in range(2 * g):
        for g1 in range(g):
            for size in range(len(m) + 1):
                for subset in combinations(range(len(m)), size):
                    spec = BoundingPairSpec(i, g1, frozenset(subset))
                    gens.append(bounding_pair_generator(spec, params, m))
    return gens


@dataclass(frozen=True)
class OrbitClass:
    label: object
    size: int
    members: tuple[Vec, ...] | None = None


@dataclass(frozen=True)
class OrbitPartition:
    """Disjoint classes covering an ambient set of ``ambient`` elements."""

    classes: tuple[OrbitClass, ...]
    ambient: int

    def __len__(self) -> int:
        return len(self.classes)

    def sizes(self) -> list[int]:
        return [c.size for c in self.classes]

    def labels(self) -> list[object]:
        return [c.label for c in self.classes]

    def as_sets(self) -> set[frozenset[Vec]]:
        if any(c.members is None for c in self.classes):
            raise ValueError("partition was built without member lists")
        return {frozenset(c.members) for c in self.classes}


def all_vectors(r: int, dim: int) -> Iterator[Vec]:
    return product(range(r), repeat=dim)


def _encode(xi: Vec, r: int) -> int:
    out = 0
    for x in xi:
        out = out * r + x
    return out


def orbits(generators: Sequence[TwistGenerator], params: LevelParams) -> OrbitPartition:
    """Orbits of the group generated by ``generators`` on (Z/r)^{2g}.

    Each generator is a bijection of a finite set, so the orbits are the
    connected components of the graph xi -- gen(xi); these are found with a
    union-find. Classes are labelled 0, 1, ... in order of smallest member.
    """
    g, r = params.g, params.r
    for gen in generators:
        if gen.g != g or gen.r != r:
            raise ValueError("all generators must share (g, r) with params")
    dim = 2 * g
    points = list(all_vectors(r, dim))
    parent = list(range(len(points)))

    def find(a: int) -> int:
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    active = [gen for gen in generators if gen.kind != "separating"]
    for idx, xi in enumerate(points):
        for gen in active:
            j = _encode(gen(xi), r)
            a, b = find(idx), find(j)
            if a != b:
                parent[max(a, b)] = min(a, b)
    groups: dict[int, list[Vec]] = {}
    for idx, xi in enumerate(points):
        groups.setdefault(find(idx), []).append(xi)
    ordered = sorted(groups.values(), key=lambda ms: ms[0])
    classes = tuple(OrbitClass(n, len(ms), tuple(ms)) for n, ms in enumerate(ordered))
    return OrbitPartition(classes, len(points))


def quadratic_value(q_basis: Sequence[int], c: Sequence[int]) -> int:
    """q(c) for the refinement with q(B_i) = q_basis[i] of the mod-2 chain form."""
    lin = sum(a * b for a, b in zip(q_basis, c))
    cross = sum(c[i] * c[i + 1] for i in range(len(c) - 1))
    return (lin + cross) % 2


def _form2(a: Sequence[int], b: Sequence[int]) -> int:
    n = len(a)
    return sum(a[i] * b[i + 1] + a[i + 1] * b[i] for i in range(n - 1)) % 2


def symplectic_basis_mod2(dim: int, order: Sequence[int] | None = None) -> list[tuple[Vec, Vec]]:
    """Symplectic pairs (a_k, b_k) for the mod-2 chain form by Gram-Schmidt reduction.

    ``order`` permutes the starting basis, so different calls can produce
    different symplectic bases.
    """
    idx = list(order) if order is not None else list(range(dim))
    pool = [basis_vector(i, dim) for i in idx]
    pairs = []
    while pool:
        a = pool.pop(0)
        partner = next((j for j, w in enumerate(pool) if _form2(a, w)), None)
        if partner is None:
            raise ValueError("form is degenerate")
        b = pool.pop(partner)
        reduced = []
        for w in pool:
            wa, wb = _form2(w, a), _form2(w, b)
            reduced.append(tuple((x + wb * ai + wa * bi) % 2 for x, ai, bi in zip(w, a, b)))
        pool = reduced
        pairs.append((a, b))
    return pairs


def arf(xi: Sequence[int], g: int, order: Sequence[int] | None = None) -> int:
    """Arf invariant of q_xi with q_xi(B_i) = xi_i + 1 (mod 2); 1 means odd."""
    if len(xi) != 2 * g:
        raise ValueError(f"expected {2 * g} coordinates, got {len(xi)}")
    q_basis = [(x + 1) % 2 for x in xi]
    total = 0
    for a, b in symplectic_basis_mod2(2 * g, order):
        total += quadratic_value(q_basis, a) * quadratic_value(q_basis, b)
    return total % 2


def reduce_level(xi: Sequence[int], r: int, s: int) -> Vec:
    """Image under the level-lowering map [r/s]: reduction mod s."""
    if s < 1 or r % s:
        raise ValueError(f"s={s} does not divide r={r}")
    return tuple(x % s for x in xi)


def component_label(xi: Sequence[int], params: LevelParams, m: Sequence[int]) -> object:
    """Label of the component containing ``xi`` (see :func:`component_partition`)."""
    lvl = ell(params, m)
    if params.g == 0 or lvl == 1:
        return 1
    if params.g == 1:
        return gcd_all(lvl, *reduce_level(xi, params.r, lvl))
    return "odd" if arf(reduce_level(xi, params.r, 2), params.g) else "even"


def component_partition(params: LevelParams, m: Sequence[int], members: bool = False) -> OrbitPartition:
    """Partition of the spin structures of one surface by irreducible component.

    Labels: divisors of ell in genus 1 (largest first), even/odd when
    g >= 2 and ell = 2, and 1 for a single component. Empty when the degree
    obstruction fails.
    """
    _check_twists(params, m)
    g, r = params.g, params.r
    ambient = r ** (2 * g)
    if not exists_spin(params, m):
        return OrbitPartition((), 0)
    lvl = ell(params, m)
    if g == 0 or lvl == 1:
        labels = [1]
    elif g == 1:
        labels = sorted(divisors(lvl), reverse=True)
    else:
        labels = ["even", "odd"]
    if members:
        groups = {lab: [] for lab in labels}
        for xi in all_vectors(r, 2 * g):
            groups[component_label(xi, params, m)].append(xi)
        classes = tuple(OrbitClass(lab, len(groups[lab]), tuple(groups[lab])) for lab in labels)
        return OrbitPartition(classes, ambient)
    # Membership depends only on xi mod lvl, so count there and scale by the fibre.
    fibre = (r // lvl) ** (2 * g)
    counts = {lab: 0 for lab in labels}
    for xi in all_vectors(lvl, 2 * g):
        counts[component_label(xi, LevelParams(g, lvl, params.n), [x % lvl for x in m])] += 1
    return OrbitPartition(tuple(OrbitClass(lab, counts[lab] * fibre) for lab in labels), ambient)


def _lattice_index(vectors: Iterable[Sequence[int]], r: int, dim: int) -> tuple[list[list[int]], int]:
    """Hermite form of the lattice spanned by ``vectors`` and r*Z^dim.

    Returns the upper-triangular basis and the index [Z^dim : L].
    """
    rows = [[x % r for x in v] for v in vectors if any(x % r for x in v)]
    rows += [[r * (i == j) for j in range(dim)] for i in range(dim)]
    basis = []
    for col in range(dim):
        live = [row for row in rows if row[col]]
        rest = [row for row in rows if not row[col]]
        while len(live) > 1:
            live.sort(key=lambda row: abs(row[col]))
            pivot = live[0]
            nxt = [pivot]
            for row in live[1:]:
                q = row[col] // pivot[col]
                new = [a - q * b for a, b in zip(row, pivot)]
                (nxt if new[col] else rest).append(new)
            live = nxt
        pivot = live[0]
        if pivot[col] < 0:
            pivot = [-a for a in pivot]
        basis.append(pivot)
        # Entries right of the pivot may be reduced mod r as long as r*e_j stays in L.
        rows = [[a % r if j > col else a for j, a in enumerate(row)] for row in rest]
        rows += [[r * (i == j) for j in range(dim)] for i in range(col + 1, dim)]
    index = 1
    for i, row in enumerate(basis):
        index *= row[i]
    return basis, index


def translation_subgroup_index(params: LevelParams, m: Sequence[int]) -> int:
    """Index in (Z/r)^{2g} of the subgroup generated by the bounding-pair translations."""
    dim = 2 * params.g
    if dim == 0:
        return 1
    vectors = {gen.t for gen in translation_generators(params, m)}
    _, index = _lattice_index(vectors, params.r, dim)
    return index


def verify_fiber_transitivity(params: LevelParams, m: Sequence[int]) -> bool:
    """Translation orbits are exactly the fibres of reduction mod ell.

    The translations generate a subgroup H; its orbits are cosets of H, and
    the fibres are cosets of ell*(Z/r)^{2g}. They agree iff H lies inside
    ell*(Z/r)^{2g} and has the same index ell^{2g}.
    """
    _check_twists(params, m)
    g = params.g
    if g == 0:
        return True
    lvl = ell(params, m)
    gens = translation_generators(params, m)
    if any(x % lvl for gen in gens for x in gen.t):
        return False
    return translation_subgroup_index(params, m) == lvl ** (2 * g)


def translation_orbits(params: LevelParams, m: Sequence[int]) -> OrbitPartition:
    return orbits(translation_generators(params, m), params)


def fibres(params: LevelParams, s: int) -> set[frozenset[Vec]]:
    groups: dict[Vec, list[Vec]] = {}
    for xi in all_vectors(params.r, 2 * params.g):
        groups.setdefault(reduce_level(xi, params.r, s), []).append(xi)
    return {frozenset(v) for v in groups.values()}


def _check_bezout(s: int, t: int, a: int, b: int) -> None:
    if s < 1 or t < 1:
        raise ValueError("moduli must be positive")
    if gcd(s, t) != 1:
        raise ValueError(f"moduli {s} and {t} are not coprime")
    if a * t + b * s != 1:
        raise ValueError(f"Bezout identity fails: {a}*{t} + {b}*{s} != 1")


def crt_join(alpha: Sequence[int], beta: Sequence[int], s: int, t: int, a: int, b: int) -> Vec:
    """The vector mod s*t congruent to alpha mod s and beta mod t, via a*t + b*s = 1."""
    _check_bezout(s, t, a, b)
    if len(alpha) != len(beta):
        raise ValueError("alpha and beta must have the same length")
    n = s * t
    return tuple((x * a * t + y * b * s) % n for x, y in zip(alpha, beta))


def crt_split(xi: Sequence[int], s: int, t: int) -> tuple[Vec, Vec]:
    if gcd(s, t) != 1:
        raise ValueError(f"moduli {s} and {t} are not coprime")
    return tuple(x % s for x in xi), tuple(x % t for x in xi)


def involution_class_count(r: int) -> int:
    """Orbits of xi -> -xi on (Z/r)^2 for odd r, counted directly."""
    if r % 2 == 0:
        raise ValueError(f"r must be odd, got r={r}")
    seen = set()
    count = 0
    for xi in all_vectors(r, 2):
        if xi in seen:
            continue
        count += 1
        seen.add(xi)
        seen.add(tuple((-x) % r for x in xi))
    return count
