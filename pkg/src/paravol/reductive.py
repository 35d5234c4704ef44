"""Orders of finite reductive groups and reductive quotients of parahorics.

Orders are kept as exact integer polynomials in the residue size q, stored
lowest coefficient first, so equal covolume can be certified symbolically.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from . import diagram as dg
from . import roots
from .errors import InvalidResidueError


class OrderPolynomial:
    """Integer polynomial in q, coefficients lowest first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        coeffs = list(coeffs)
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        self.coeffs = tuple(coeffs)

    @classmethod
    def one(cls):
        return cls((1,))

    @classmethod
    def monomial(cls, degree, coeff=1):
        return cls((0,) * degree + (coeff,))

    @classmethod
    def q_power_minus_one(cls, d):
        return cls((-1,) + (0,) * (d - 1) + (1,))

    @classmethod
    def q_power_minus_sign(cls, i):
        # q^i - (-1)^i, the unitary analogue of q^i - 1
        return cls((-((-1) ** i),) + (0,) * (i - 1) + (1,))

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def __mul__(self, other):
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return OrderPolynomial(out)

    def __pow__(self, n):
        result = OrderPolynomial.one()
        for _ in range(n):
            result = result * self
        return result

    def __call__(self, q):
        value = 0
        for c in reversed(self.coeffs):
            value = value * q + c
        return value

    def __eq__(self, other):
        return isinstance(other, OrderPolynomial) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"OrderPolynomial({list(self.coeffs)})"

    def to_json(self):
        return list(self.coeffs)


def label_positive_roots(label):
    """Exponent of q in the order: positive roots of the ambient root system."""
    if label.form == "unitary":
        return label.rank * (label.rank + 1) // 2
    return roots.num_positive_roots(label.family, label.rank)


def label_dimension(label):
    return label.rank + 2 * label_positive_roots(label)


@lru_cache(maxsize=None)
def order_polynomial(label):
    """Order of the finite group of Lie type with this label, as a polynomial."""
    n_pos = label_positive_roots(label)
    poly = OrderPolynomial.monomial(n_pos)
    if label.form == "unitary":
        for i in range(2, label.rank + 2):
            poly = poly * OrderPolynomial.q_power_minus_sign(i)
    else:
        degrees = roots.fundamental_degrees(label.family, label.rank)
        assert sum(d - 1 for d in degrees) == n_pos
        for d in degrees:
            poly = poly * OrderPolynomial.q_power_minus_one(d)
    assert poly.degree == label_dimension(label)
    return poly


@dataclass(frozen=True)
class ReductiveQuotientDescriptor:
    """Reductive quotient of a parahoric over the residue field."""

    components: tuple  # FiniteTypeLabel, sorted
    torus_rank: int
    dim: int
    order: OrderPolynomial


Q_MINUS_ONE = OrderPolynomial.q_power_minus_one(1)


def quotient_descriptor(d, t):
    """Components, central torus rank, dimension and order for a type."""
    t = d.check_proper(t)
    if d.residual_table is not None:
        components, torus_rank = d.residual_table[t.vertices]
    else:
        components = dg.induced_subdiagram(d, t)
        torus_rank = d.relative_rank - sum(c.rank for c in components)
    order = Q_MINUS_ONE ** torus_rank
    dim = torus_rank
    for c in components:
        order = order * order_polynomial(c)
        dim += label_dimension(c)
    assert order.degree == dim
    return ReductiveQuotientDescriptor(components, torus_rank, dim, order)


def is_prime(n):
    if n < 2:
        return False
    k = 2
    while k * k <= n:
        if n % k == 0:
            return False
        k += 1
    return True


def prime_power_base(q):
    """The prime p with q = p^k, or None if q is not a prime power."""
    if q < 2:
        return None
    p = 2
    while p * p <= q:
        if q % p == 0:
            m = q
            while m % p == 0:
                m //= p
            return p if m == 1 else None
        p += 1
    return q  # q itself prime


def evaluate_order(poly, q):
    """Exact order at a prime power residue size."""
    if prime_power_base(q) is None:
        raise InvalidResidueError(f"invalid residue size: {q} is not a prime power")
    return poly(q)
