"""Integer calculus of orders and power maps at a node.

An order is the unordered pair {u, v} of vanishing orders of a root map on
the two branches through a node; {0, 0} marks a locally free root. The
d-th power of the local module E_{u,v} lands in E_{u',v'} where u', v' are
the least residues of du, dv modulo s = u + v, and u'' = (du - u')/s,
v'' = (dv - v')/s are the exponents appearing in the map itself.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import NamedTuple


def _check_pair(u: int, v: int) -> None:
    if u < 0 or v < 0:
        raise ValueError(f"exponents must be non-negative, got ({u}, {v})")
    if (u == 0) != (v == 0):
        raise ValueError(f"exponents must be both zero or both positive, got ({u}, {v})")


@dataclass(frozen=True)
class Order:
    """Unordered order {u_tilde, v_tilde}, stored sorted."""

    u_tilde: int
    v_tilde: int

    def __post_init__(self):
        _check_pair(self.u_tilde, self.v_tilde)
        if self.u_tilde > self.v_tilde:
            lo, hi = self.v_tilde, self.u_tilde
            object.__setattr__(self, "u_tilde", lo)
            object.__setattr__(self, "v_tilde", hi)

    @property
    def locally_free(self) -> bool:
        return self.u_tilde == 0

    @property
    def ell(self) -> int:
        """gcd of the entries; 0 only for the locally free order."""
        return gcd(self.u_tilde, self.v_tilde)

    @property
    def primitive(self) -> tuple[int, int]:
        if self.locally_free:
            return (0, 0)
        return (self.u_tilde // self.ell, self.v_tilde // self.ell)

    @property
    def s(self) -> int:
        u, v = self.primitive
        return u + v

    def as_tuple(self) -> tuple[int, int]:
        return (self.u_tilde, self.v_tilde)


@dataclass(frozen=True)
class PowerExponents:
    u_prime: int
    v_prime: int
    u_dprime: int
    v_dprime: int
    d: int
    s: int

    @property
    def free_target(self) -> bool:
        return self.u_prime == 0 and self.v_prime == 0

    def as_tuple(self) -> tuple[int, int, int, int]:
        return (self.u_prime, self.v_prime, self.u_dprime, self.v_dprime)


def power_exponents(u: int, v: int, d: int) -> PowerExponents:
    """Exponent data (u', v', u'', v'') of the d-th power of E_{u,v}."""
    _check_pair(u, v)
    if d < 1:
        raise ValueError(f"power must be positive, got d={d}")
    s = u + v
    if s == 0:
        return PowerExponents(0, 0, 0, 0, d, 0)
    u1, v1 = (d * u) % s, (d * v) % s
    return PowerExponents(u1, v1, (d * u - u1) // s, (d * v - v1) // s, d, s)


def _check_root_order(order: Order, r: int) -> None:
    if not order.locally_free and order.u_tilde + order.v_tilde != r:
        raise ValueError(f"order {order.as_tuple()} is not an order of an r-th root for r={r}")


def order_of_root(order: Order, r: int, d: int) -> Order:
    """Order of the d-th root in the net: {u mod d, v mod d}."""
    if d < 1 or r % d:
        raise ValueError(f"d={d} does not divide r={r}")
    _check_root_order(order, r)
    return Order(order.u_tilde % d, order.v_tilde % d)


def order_via_power_map(order: Order, r: int, d: int) -> Order:
    """Same as :func:`order_of_root`, computed through the power map.

    E_d is the (r/d)-th power of the primitive module E_{u,v}; its target
    E_{u',v'} carries a d-th power map to the free module of order
    {d u'/s, d v'/s}.
    """
    if d < 1 or r % d:
        raise ValueError(f"d={d} does not divide r={r}")
    _check_root_order(order, r)
    if order.locally_free:
        return Order(0, 0)
    u, v = order.primitive
    pe = power_exponents(u, v, r // d)
    s = u + v
    return Order(d * pe.u_prime // s, d * pe.v_prime // s)


class RootSolution(NamedTuple):
    exists: bool
    solution: tuple[int, int] | None


def root_exists(i: int, j: int, d: int) -> RootSolution:
    """Whether E_{i,j} has a d-th root: dx = i, dy = j (mod i+j) with x, y > 0.

    When gcd(d, i+j) = 1 the solution with x + y = i + j is unique and is
    returned as well.
    """
    _check_pair(i, j)
    if d < 1:
        raise ValueError(f"power must be positive, got d={d}")
    s = i + j
    if s == 0:
        return RootSolution(True, (0, 0))
    g = gcd(d, s)
    if i % g or j % g:
        return RootSolution(False, None)
    if g != 1:
        return RootSolution(True, None)
    inv = pow(d, -1, s)
    return RootSolution(True, ((i * inv) % s, (j * inv) % s))


def ramification_index(order: Order, r: int) -> int:
    """r / gcd(u, v), the local degree t = tau^{r_i} of the deformation cover."""
    if order.locally_free:
        raise ValueError("ramification index is defined for singular orders only")
    _check_root_order(order, r)
    return r // order.ell


def gluing_multiplicity(order: Order) -> int:
    """Number of gluing choices (mu_ell) at a non-separating node."""
    if order.locally_free:
        raise ValueError("gluing multiplicity is defined for singular orders only")
    return order.ell


def cokernel_length(u: int, v: int, d: int) -> int:
    pe = power_exponents(u, v, d)
    if u == 0:
        return 0
    if pe.free_target:
        return pe.u_dprime + pe.v_dprime - 1
    return pe.u_dprime + pe.v_dprime


def coherence_check(u: int, v: int, t: int, f: int) -> bool:
    """Power t followed by power f lands where power t*f does."""
    first = power_exponents(u, v, t)
    direct = power_exponents(u, v, t * f)
    if first.free_target:
        return direct.free_target
    second = power_exponents(first.u_prime, first.v_prime, f)
    return (second.u_prime, second.v_prime) == (direct.u_prime, direct.v_prime)
