"""Diagonal-kernel functional Hilbert spaces (weighted Hardy spaces).

A space is fixed by weights ``a_j > 0`` with ``a_0 = 1``: the kernel is
``sum_j a_j (z conj(w))**j``, monomials are orthogonal and
``||z**j||**2 = 1/a_j``.  Multiplication by ``z`` is the weighted shift with
weights ``sqrt(a_j / a_{j+1})``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Callable, Optional, Sequence, Union

from .errors import Divergent, InvalidSpace, PreconditionViolation
from .series import ComplexRational, Geometric, PowerSeries

SAMPLE_RANGE = 4096


class Kind(str, Enum):
    HARDY = "hardy"
    BERGMAN = "bergman"
    DIRICHLET = "dirichlet"
    CUSTOM = "custom"


_NAMED_RULES = {
    Kind.HARDY: (lambda j: Fraction(1), Fraction(1), Fraction(1)),
    Kind.BERGMAN: (lambda j: Fraction(j + 1), Fraction(1, 2), Fraction(1)),
    Kind.DIRICHLET: (lambda j: Fraction(1, j + 1), Fraction(1), Fraction(2)),
}


@dataclass(frozen=True)
class WeightSequence:
    """Kernel weights ``a_j`` plus declared bounds on ``a_j / a_{j+1}``."""

    kind: Kind
    rule: Callable[[int], Fraction] = field(repr=False, compare=False)
    rho_min: Fraction
    rho_max: Fraction
    label: str = ""
    _cache: list = field(default_factory=list, repr=False, compare=False)

    @property
    def name(self) -> str:
        return self.label or self.kind.value

    @property
    def named(self) -> bool:
        return self.kind is not Kind.CUSTOM

    def a(self, j: int) -> Fraction:
        cache = self._cache
        while len(cache) <= j:
            cache.append(Fraction(self.rule(len(cache))))
        return cache[j]

    def weights(self, n: int) -> list:
        if n:
            self.a(n - 1)
        return self._cache[:n]

    def norm_sq_monomial(self, j: int) -> Fraction:
        return 1 / self.a(j)

    def shift_weights(self, n: int) -> list:
        """Float weights ``w_j = sqrt(a_j / a_{j+1})`` for ``j < n``."""
        return [math.sqrt(self.a(j) / self.a(j + 1)) for j in range(n)]

    def sqrt_weights(self, n: int) -> list:
        """Float ``sqrt(a_j)``; orthonormal basis is ``u_j = sqrt(a_j) z**j``."""
        return [math.sqrt(self.a(j)) for j in range(n)]

    def kernel(self, z: complex, w: complex, terms: int = 400) -> complex:
        """Truncated float evaluation of ``sum_j a_j (z conj(w))**j``."""
        t = z * complex(w).conjugate()
        return sum(float(self.a(j)) * t ** j for j in range(terms))

    def inner(self, h: PowerSeries, k: PowerSeries) -> ComplexRational:
        """Exact ``<h, k>`` when at least one side is a polynomial."""
        if k.is_polynomial:
            n = len(k.prefix)
        elif h.is_polynomial:
            n = len(h.prefix)
        else:
            raise PreconditionViolation("exact inner product needs a polynomial argument")
        acc = ComplexRational(0)
        for j in range(n):
            hj, kj = h.coeff(j), k.coeff(j)
            if hj and kj:
                acc = acc + hj * kj.conjugate() / self.a(j)
        return acc


def make_space(kind, params: Optional[dict] = None) -> WeightSequence:
    """Build and validate a weight sequence.

    ``kind`` is one of hardy / bergman / dirichlet / custom.  Custom spaces
    take ``rule`` (callable ``j -> a_j``) or ``table`` (``a_0..a_m``, continued
    with the last ratio), and must declare ``rho_min`` and ``rho_max``.
    """
    params = dict(params or {})
    kind = Kind(kind.lower() if isinstance(kind, str) else kind)
    if kind is not Kind.CUSTOM:
        if params:
            raise InvalidSpace(f"{kind.value} takes no parameters")
        rule, lo, hi = _NAMED_RULES[kind]
        return WeightSequence(kind, rule, lo, hi)
    try:
        lo = Fraction(params.pop("rho_min"))
        hi = Fraction(params.pop("rho_max"))
    except KeyError as exc:
        raise InvalidSpace("custom space must declare rho_min and rho_max") from exc
    if not 0 < lo <= hi:
        raise InvalidSpace("need 0 < rho_min <= rho_max")
    rule = params.pop("rule", None)
    table = params.pop("table", None)
    label = params.pop("label", "custom")
    if params:
        raise InvalidSpace(f"unknown custom-space parameters: {sorted(params)}")
    if (rule is None) == (table is None):
        raise InvalidSpace("custom space needs exactly one of rule / table")
    if table is not None:
        rule = _table_rule([Fraction(x) for x in table])
    space = WeightSequence(Kind.CUSTOM, rule, lo, hi, label=label)
    _validate(space)
    return space


def _table_rule(table: Sequence[Fraction]) -> Callable[[int], Fraction]:
    if not table:
        raise InvalidSpace("empty weight table")
    if len(table) == 1:
        ratio = Fraction(1)
    else:
        ratio = table[-2] / table[-1] if table[-1] else Fraction(1)
    last = len(table) - 1

    def rule(j):
        if j <= last:
            return table[j]
        return table[last] / ratio ** (j - last)

    return rule


def _validate(space: WeightSequence) -> None:
    if space.a(0) != 1:
        raise InvalidSpace(f"a_0 must be 1 (kernel normalized at the origin), got {space.a(0)}")
    for j in range(SAMPLE_RANGE + 1):
        if space.a(j) <= 0:
            raise InvalidSpace(f"weight a_{j} = {space.a(j)} is not positive")
    for j in range(SAMPLE_RANGE):
        r = space.a(j) / space.a(j + 1)
        if not space.rho_min <= r <= space.rho_max:
            raise InvalidSpace(
                f"ratio a_{j}/a_{j+1} = {r} outside declared [{space.rho_min}, {space.rho_max}]"
            )


# --------------------------------------------------------------------------
# norms and membership
# --------------------------------------------------------------------------


class Status(str, Enum):
    MEMBER = "Member"
    NON_MEMBER = "NonMember"
    INCONCLUSIVE = "Inconclusive"


@dataclass(frozen=True)
class MembershipVerdict:
    status: Status
    norm_sq: Optional[Union[Fraction, float]] = None
    reason: str = ""

    @property
    def member(self) -> Optional[bool]:
        if self.status is Status.INCONCLUSIVE:
            return None
        return self.status is Status.MEMBER


@dataclass(frozen=True)
class NormSq:
    value: Union[Fraction, float]
    exact: bool
    tail_bound: Union[Fraction, float] = 0


def _tail_ratio_class(q2: Fraction, space: WeightSequence) -> Optional[bool]:
    """Ratio test on ``|q|^2 a_j/a_{j+1}``; None inside the undecided band."""
    if q2 * space.rho_max < 1:
        return True
    if q2 * space.rho_min > 1:
        return False
    return None


def membership(h: PowerSeries, space: WeightSequence) -> MembershipVerdict:
    """Decide whether ``sum_j |h_j|^2 / a_j`` converges."""
    t = h.tail
    if t is None or not t.scale:
        return MembershipVerdict(Status.MEMBER, norm_sq(h, space).value, "finite sum")
    q2 = t.ratio.abs2()
    verdict = _tail_ratio_class(q2, space)
    if verdict is True:
        reason = f"ratio test: |q|^2 * rho_max = {q2 * space.rho_max} < 1"
        return MembershipVerdict(Status.MEMBER, norm_sq(h, space).value, reason)
    if verdict is False:
        reason = f"ratio test: |q|^2 * rho_min = {q2 * space.rho_min} > 1, terms grow"
        return MembershipVerdict(Status.NON_MEMBER, None, reason)
    if space.named:
        if q2 < 1:
            reason = f"{space.name}: |q| < 1, dominated by a convergent series"
            return MembershipVerdict(Status.MEMBER, norm_sq(h, space).value, reason)
        comparison = {
            Kind.HARDY: "terms |s|^2 |q|^(2j) >= |s|^2 do not tend to 0",
            Kind.BERGMAN: "terms >= |s|^2/(j+1): harmonic comparison diverges",
            Kind.DIRICHLET: "terms >= |s|^2 (j+1) do not tend to 0",
        }[space.kind]
        return MembershipVerdict(Status.NON_MEMBER, None, f"{space.name}: |q| >= 1, {comparison}")
    return MembershipVerdict(
        Status.INCONCLUSIVE, None,
        "custom space: tail ratio in the boundary band, weight asymptotics unknown",
    )


def resolvent_membership(b, space: WeightSequence) -> MembershipVerdict:
    """Membership of ``1/(b - z) = sum_j b^-(j+1) z^j``."""
    b = ComplexRational.coerce(b)
    if not b:
        raise ZeroDivisionError("resolvent needs b != 0")
    inv = 1 / b
    return membership(PowerSeries((), Geometric(inv, inv, 0)), space)


def norm_sq(h: PowerSeries, space: WeightSequence, D: Optional[int] = None) -> NormSq:
    """``||h||^2`` for a series with no tail or a geometric tail.

    Polynomials and Hardy-space geometric tails are summed exactly.  Other
    convergent tails give the partial sum through ``D`` (default 4096) as a
    float, with a geometric bound on the remainder.
    """
    t = h.tail
    if t is None or not t.scale:
        n = len(h.prefix) if D is None else min(len(h.prefix), D + 1)
        total = Fraction(0)
        for j in range(n):
            total += h.prefix[j].abs2() / space.a(j)
        return NormSq(total, True, 0)
    q2 = t.ratio.abs2()
    verdict = _tail_ratio_class(q2, space)
    if verdict is None and space.named:
        verdict = q2 < 1
    if verdict is not True:
        raise Divergent(f"series is not in {space.name} (tail |q|^2 = {q2})")
    head = Fraction(0)
    for j in range(len(h.prefix)):
        head += h.prefix[j].abs2() / space.a(j)
    s2 = t.scale.abs2()
    if space.kind is Kind.HARDY:
        return NormSq(head + s2 / (1 - q2), True, 0)
    D = SAMPLE_RANGE if D is None else D
    start = t.start
    partial = float(head)
    # step by term ratios |q|^2 a_j / a_{j+1} so huge or tiny weights never hit float range
    term = float(s2 / space.a(start))
    for j in range(start, D + 1):
        partial += term
        term *= float(q2 * space.a(j) / space.a(j + 1))
    next_term = term  # the term at D + 1
    rate = float(q2 * space.rho_max)
    if rate >= 1:
        # named-space ratios are monotone in j with limit 1
        rate = float(q2) * max(1.0, float(space.a(D + 1) / space.a(D + 2)))
    bound = next_term / (1 - rate) if rate < 1 else math.inf
    return NormSq(partial, False, bound)
