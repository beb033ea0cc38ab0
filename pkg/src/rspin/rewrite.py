"""Monomial rewriting over the nodal local ring A = base[x, y, t]/(xy - t^s).

Elements of the target modules E_{u',v'} are integer combinations of
monomials x^a y^b t^c * g with g a generator tag. The presentation

    x*z2 = t^{v'} z1,    y*z1 = t^{u'} z2,    xy = t^s

is oriented as a rewriting system that strictly lowers the (x, y)-degree;
the only critical pairs (x*y*z1, x*y*z2) resolve to t^s z1 and t^s z2 both
ways, so normal forms are unique. In a non-free ring a normal monomial is
x^a t^c z1 or y^b t^c z2. The free module E_{0,0} identifies z1 = z2 = z
and keeps only xy -> t^s.

Monomials are plain tuples ``(x, y, t, gen)``. Here ``t`` stands for tau.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable, Iterable, Iterator, NamedTuple, Sequence

from .localroot import power_exponents

Mono = tuple[int, int, int, str]

Z1, Z2, Z = "z1", "z2", "z"


@dataclass(frozen=True)
class Rule:
    name: str
    matches: Callable[[Mono], bool]
    apply: Callable[[Mono], Mono]


@dataclass(frozen=True)
class LocalRing:
    """Base ring with t^s = pi acting on the target module E_{u',v'}."""

    s: int
    u_t: int = 0
    v_t: int = 0

    def __post_init__(self):
        if self.s < 0 or self.u_t < 0 or self.v_t < 0:
            raise ValueError("ring parameters must be non-negative")
        if not self.free and self.u_t + self.v_t != self.s:
            raise ValueError(f"target exponents ({self.u_t}, {self.v_t}) must sum to 0 or s={self.s}")

    @property
    def free(self) -> bool:
        return self.u_t == 0 and self.v_t == 0

    @property
    def rules(self) -> tuple[Rule, ...]:
        s, ut, vt = self.s, self.u_t, self.v_t
        xy = Rule(
            "xy",
            lambda m: m[0] > 0 and m[1] > 0,
            lambda m: (m[0] - 1, m[1] - 1, m[2] + s, m[3]),
        )
        if self.free:
            return (
                xy,
                Rule("z1", lambda m: m[3] == Z1, lambda m: (m[0], m[1], m[2], Z)),
                Rule("z2", lambda m: m[3] == Z2, lambda m: (m[0], m[1], m[2], Z)),
            )
        return (
            xy,
            Rule("xz2", lambda m: m[0] > 0 and m[3] == Z2, lambda m: (m[0] - 1, m[1], m[2] + vt, Z1)),
            Rule("yz1", lambda m: m[1] > 0 and m[3] == Z1, lambda m: (m[0], m[1] - 1, m[2] + ut, Z2)),
        )

    def check(self, mono: Mono) -> None:
        if self.free and mono[3] not in (Z1, Z2, Z):
            raise ValueError(f"unknown generator {mono[3]!r}")
        if not self.free and mono[3] not in (Z1, Z2):
            raise ValueError(f"generator {mono[3]!r} is not in the non-free module")


@dataclass(frozen=True)
class ModuleElement:
    """Finite integer combination of monomials; zero coefficients are dropped."""

    terms: tuple[tuple[Mono, int], ...] = ()

    @classmethod
    def from_dict(cls, terms: dict[Mono, int]) -> "ModuleElement":
        return cls(tuple(sorted((m, c) for m, c in terms.items() if c)))

    @classmethod
    def monomial(cls, x: int = 0, y: int = 0, t: int = 0, gen: str = Z1, coeff: int = 1) -> "ModuleElement":
        if min(x, y, t) < 0:
            raise ValueError("exponents must be non-negative")
        return cls.from_dict({(x, y, t, gen): coeff})

    @classmethod
    def zero(cls) -> "ModuleElement":
        return cls()

    def as_dict(self) -> dict[Mono, int]:
        return dict(self.terms)

    def __iter__(self) -> Iterator[tuple[Mono, int]]:
        return iter(self.terms)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __add__(self, other: "ModuleElement") -> "ModuleElement":
        out = self.as_dict()
        for m, c in other.terms:
            out[m] = out.get(m, 0) + c
        return ModuleElement.from_dict(out)

    def __neg__(self) -> "ModuleElement":
        return ModuleElement(tuple((m, -c) for m, c in self.terms))

    def __sub__(self, other: "ModuleElement") -> "ModuleElement":
        return self + (-other)

    def times(self, x: int = 0, y: int = 0, t: int = 0, coeff: int = 1) -> "ModuleElement":
        """Multiply by the ring monomial coeff * x^x y^y t^t."""
        return ModuleElement.from_dict(
            {(a + x, b + y, c + t, g): k * coeff for (a, b, c, g), k in self.terms}
        )

    def at_tau_zero(self) -> "ModuleElement":
        return ModuleElement(tuple((m, c) for m, c in self.terms if m[2] == 0))

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for (a, b, c, g), k in self.terms:
            factors = []
            for sym, e in (("x", a), ("y", b), ("t", c)):
                if e == 1:
                    factors.append(sym)
                elif e > 1:
                    factors.append(f"{sym}^{e}")
            factors.append(g)
            word = "*".join(factors)
            if k == 1:
                parts.append(word)
            elif k == -1:
                parts.append(f"-{word}")
            else:
                parts.append(f"{k}*{word}")
        return " + ".join(parts).replace("+ -", "- ")


def reduce_monomial(mono: Mono, ring: LocalRing, rng: random.Random | None = None) -> tuple[Mono, list[str]]:
    """Rewrite one monomial to normal form; returns it with the rule trace."""
    ring.check(mono)
    rules = ring.rules
    trace = []
    while True:
        live = [rule for rule in rules if rule.matches(mono)]
        if not live:
            return mono, trace
        rule = rng.choice(live) if rng is not None else live[0]
        mono = rule.apply(mono)
        trace.append(rule.name)


def normal_form(e: ModuleElement, ring: LocalRing, rng: random.Random | None = None) -> ModuleElement:
    """Exhaustive rule application.

    With ``rng`` the applicable rule is chosen at random at every step;
    confluence means the result does not depend on it.
    """
    out: dict[Mono, int] = {}
    for mono, c in e.terms:
        nf, _ = reduce_monomial(mono, ring, rng)
        out[nf] = out.get(nf, 0) + c
    return ModuleElement.from_dict(out)


def is_normal(e: ModuleElement, ring: LocalRing) -> bool:
    return all(not rule.matches(m) for m, _ in e.terms for rule in ring.rules)


@dataclass(frozen=True)
class SymGenerator:
    """delta_i = xi1^{d-i} xi2^i in Sym^d; equivalently epsilon_{d-i}."""

    index: int
    d: int

    def __post_init__(self):
        if not 0 <= self.index <= self.d:
            raise ValueError(f"generator index {self.index} out of range 0..{self.d}")

    @property
    def epsilon_index(self) -> int:
        return self.d - self.index

    def __str__(self) -> str:
        return f"delta_{self.index}"


def delta(i: int, d: int) -> SymGenerator:
    return SymGenerator(i, d)


def epsilon(j: int, d: int) -> SymGenerator:
    return SymGenerator(d - j, d)


def target_ring(u: int, v: int, d: int) -> LocalRing:
    pe = power_exponents(u, v, d)
    return LocalRing(pe.s, pe.u_prime, pe.v_prime)


def _delta_formula(u: int, v: int, d: int, i: int) -> ModuleElement | None:
    pe = power_exponents(u, v, d)
    if i > pe.u_dprime:
        return None
    return ModuleElement.monomial(x=pe.u_dprime - i, t=i * v, gen=Z1)


def _epsilon_formula(u: int, v: int, d: int, j: int) -> ModuleElement | None:
    pe = power_exponents(u, v, d)
    if j > pe.v_dprime:
        return None
    return ModuleElement.monomial(y=pe.v_dprime - j, t=j * u, gen=Z2)


def power_map_image(u: int, v: int, d: int, gen: SymGenerator) -> ModuleElement:
    """Image of a degree-d symmetric generator under the d-th power map.

    delta_i -> x^{u''-i} t^{iv} z1 for i <= u'', epsilon_j -> y^{v''-j} t^{ju} z2
    for j <= v''; these ranges cover every generator. The free module
    E_{0,0} maps z^d -> z.
    """
    if gen.d != d:
        raise ValueError(f"generator lives in Sym^{gen.d}, not Sym^{d}")
    ring = target_ring(u, v, d)
    if u == 0 and v == 0:
        return ModuleElement.monomial(gen=Z)
    image = _delta_formula(u, v, d, gen.index)
    if image is None:
        image = _epsilon_formula(u, v, d, gen.epsilon_index)
    if image is None:
        return ModuleElement.zero()
    return normal_form(image, ring)


class RelationCheck(NamedTuple):
    relation: str
    lhs: str
    rhs: str
    ok: bool


class PowerMapReport(NamedTuple):
    verified: bool
    checks: list[RelationCheck]


def verify_power_map(u: int, v: int, d: int) -> PowerMapReport:
    """Check that the d-th power map respects the relations of Sym^d E_{u,v}.

    Source relations x*xi2 = p*xi1, y*xi1 = q*xi2 with p = t^v, q = t^u
    generate, in Sym^d, x*delta_{i+1} = p*delta_i and y*delta_i = q*delta_{i+1}
    for 0 <= i < d (the first is x*eps_j = p*eps_{j+1} in the epsilon
    indexing). Where both defining formulas apply to one generator (free
    target, i = u'') they must agree as well.
    """
    if u < 1 or v < 1:
        raise ValueError(f"verification needs u, v > 0, got ({u}, {v})")
    ring = target_ring(u, v, d)
    images = [power_map_image(u, v, d, delta(i, d)) for i in range(d + 1)]
    checks = []

    def record(name: str, lhs: ModuleElement, rhs: ModuleElement) -> None:
        lhs, rhs = normal_form(lhs, ring), normal_form(rhs, ring)
        checks.append(RelationCheck(name, str(lhs), str(rhs), lhs == rhs))

    for i in range(d + 1):
        by_delta = _delta_formula(u, v, d, i)
        by_eps = _epsilon_formula(u, v, d, d - i)
        if by_delta is not None and by_eps is not None:
            record(f"phi(delta_{i}) = phi(epsilon_{d - i})", by_delta, by_eps)
        if by_delta is None and by_eps is None:
            checks.append(RelationCheck(f"delta_{i} covered", "undefined", "defined", False))
    for i in range(d):
        record(f"x*phi(delta_{i + 1}) = p*phi(delta_{i})", images[i + 1].times(x=1), images[i].times(t=v))
        record(f"y*phi(delta_{i}) = q*phi(delta_{i + 1})", images[i].times(y=1), images[i + 1].times(t=u))
    return PowerMapReport(all(c.ok for c in checks), checks)


def _target_basis_at_zero(ring: LocalRing, degree: int) -> list[Mono]:
    if ring.free:
        return [(0, 0, 0, Z)] + [(a, 0, 0, Z) for a in range(1, degree + 1)] + [
            (0, b, 0, Z) for b in range(1, degree + 1)
        ]
    return [(a, 0, 0, Z1) for a in range(degree + 1)] + [(0, b, 0, Z2) for b in range(degree + 1)]


def cokernel_basis_at_zero(u: int, v: int, d: int) -> list[Mono]:
    """Monomial basis of coker(phi_d) on the central fibre t = 0.

    The image submodule is generated by the t = 0 parts of the images of the
    generators; in every degree above d each branch is already an image, so
    the basis is read off from monomials of degree at most d + 1.
    """
    if u == 0 and v == 0:
        return []
    ring = target_ring(u, v, d)
    bound = d + 1
    seeds = []
    for i in range(d + 1):
        for mono, _ in power_map_image(u, v, d, delta(i, d)).at_tau_zero():
            seeds.append(mono)
    span = set()
    stack = list(seeds)
    while stack:
        mono = stack.pop()
        if mono in span or mono[0] + mono[1] > bound:
            continue
        span.add(mono)
        for dx, dy in ((1, 0), (0, 1)):
            nf, _ = reduce_monomial((mono[0] + dx, mono[1] + dy, mono[2], mono[3]), ring)
            if nf[2] == 0:
                stack.append(nf)
    basis = _target_basis_at_zero(ring, bound)
    cokernel = [m for m in basis if m not in span]
    if any(m[0] + m[1] == bound for m in cokernel):
        raise AssertionError("cokernel does not stabilise below the degree bound")
    return cokernel


def _product_images(factors: Sequence[ModuleElement]) -> Iterable[tuple[Mono, int, int]]:
    """Expand a product of module elements into (ring part, coefficient, #z2)."""
    partial = [((0, 0, 0, ""), 1, 0)]
    for factor in factors:
        nxt = []
        for (a, b, c, _), k, n2 in partial:
            for (x, y, t, g), coeff in factor.terms:
                nxt.append(((a + x, b + y, c + t, ""), k * coeff, n2 + (g == Z2)))
        partial = nxt
    return partial


def compose_power_maps(u: int, v: int, t: int, f: int, k: int, split: Sequence[int] | None = None) -> ModuleElement:
    """phi_f(phi_t x ... x phi_t) applied to delta_k in Sym^{t f} E_{u,v}.

    ``split`` writes delta_k as a product of f degree-t generators
    delta_{k_1} ... delta_{k_f} with sum k_i = k; the default is greedy.
    """
    d = t * f
    if not 0 <= k <= d:
        raise ValueError(f"generator index {k} out of range 0..{d}")
    if split is None:
        split, rest = [], k
        for _ in range(f):
            take = min(t, rest)
            split.append(take)
            rest -= take
    if len(split) != f or sum(split) != k or not all(0 <= ki <= t for ki in split):
        raise ValueError(f"invalid split {split} of delta_{k} into {f} factors of degree {t}")
    mid = power_exponents(u, v, t)
    images = [power_map_image(u, v, t, delta(ki, t)) for ki in split]
    mid_u, mid_v = (0, 0) if mid.free_target else (mid.u_prime, mid.v_prime)
    final = target_ring(u, v, d)
    out = ModuleElement.zero()
    for (a, b, c, _), coeff, n2 in _product_images(images):
        index = 0 if mid.free_target else n2
        outer = power_map_image(mid_u, mid_v, f, delta(index, f))
        out = out + outer.times(x=a, y=b, t=c, coeff=coeff)
    return normal_form(out, final)


def random_element(rng: random.Random, ring: LocalRing, terms: int = 4, max_exp: int = 5) -> ModuleElement:
    gens = (Z1, Z2, Z) if ring.free else (Z1, Z2)
    out: dict[Mono, int] = {}
    for _ in range(terms):
        mono = (rng.randint(0, max_exp), rng.randint(0, max_exp), rng.randint(0, max_exp), rng.choice(gens))
        out[mono] = out.get(mono, 0) + rng.randint(-3, 3)
    return ModuleElement.from_dict(out)


def confluence_trials(ring: LocalRing, trials: int = 1000, seed: int = 0) -> int:
    """Number of random elements whose randomized normal form differs from the canonical one."""
    rng = random.Random(seed)
    failures = 0
    for _ in range(trials):
        e = random_element(rng, ring)
        canonical = normal_form(e, ring)
        if normal_form(e, ring, rng) != canonical or not is_normal(canonical, ring):
            failures += 1
    return failures
