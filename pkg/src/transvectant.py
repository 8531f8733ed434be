"""
Transvection Engine - ground forms, Omega-process transvectants and the SLOCC invariants built from them
"""
import logging
from collections import namedtuple
from dataclasses import dataclass
from fractions import Fraction

from .polynomial import (
    AMPLITUDE_NAMES, BINARY_NAMES, PRIMED_NAMES, DOUBLE_PRIMED_NAMES, SLOTS,
    VARIABLE_INDEX, Poly, make_monomial,
)

logger = logging.getLogger(__name__)

_UNPRIMED = [VARIABLE_INDEX[n] for n in BINARY_NAMES]
_PRIMED = [VARIABLE_INDEX[n] for n in PRIMED_NAMES]
_DOUBLE = [VARIABLE_INDEX[n] for n in DOUBLE_PRIMED_NAMES]
_TO_PRIMED = dict(zip(_UNPRIMED, _PRIMED))
_TO_DOUBLE = dict(zip(_UNPRIMED, _DOUBLE))
_TRACE = {**dict(zip(_PRIMED, _UNPRIMED)), **dict(zip(_DOUBLE, _UNPRIMED))}


class ShapeError(ValueError):
    """Raised when a covariant does not have the multidegree an operation requires"""


def slot_position(slot):
    """Accept 'x'..'u' or 0..4 and return the slot position"""
    if isinstance(slot, int) and 0 <= slot < len(SLOTS):
        return slot
    if slot in SLOTS:
        return SLOTS.index(slot)
    raise ValueError(f"Unknown slot {slot!r}; expected one of {', '.join(SLOTS)}")


def slot_variables(slot):
    """Registry indices (s0, s1) of the binary pair of a slot"""
    position = slot_position(slot)
    return _UNPRIMED[2 * position], _UNPRIMED[2 * position + 1]


@dataclass(frozen=True)
class Covariant:
    """A covariant: body polynomial plus its amplitude degree and slot multidegree"""
    body: Poly
    a_degree: int
    multidegree: tuple

    @property
    def is_zero(self):
        return self.body.is_zero()

    @property
    def is_invariant(self):
        return all(m == 0 for m in self.multidegree)


@dataclass(frozen=True)
class GroundForm:
    """The state as a quintilinear form f = sum A_i x_i1 y_i2 z_i3 t_i4 u_i5"""
    coefficients: tuple
    slots: tuple = SLOTS

    @property
    def is_symbolic(self):
        return self.coefficients is None

    def as_covariant(self):
        body = {}
        for index in range(32):
            bits = f"{index:05b}"
            exponents = [(f"{slot}{bit}", 1) for slot, bit in zip(self.slots, bits)]
            if self.is_symbolic:
                exponents.append((AMPLITUDE_NAMES[index], 1))
                coeff = Fraction(1)
            else:
                coeff = self.coefficients[index]
            body[make_monomial(exponents)] = coeff
        return Covariant(Poly(body), 1, (1, 1, 1, 1, 1))


@dataclass(frozen=True)
class TransvectionSignature:
    """Per-slot Omega exponents (eps_x, eps_y, eps_z, eps_t, eps_u)"""
    eps: tuple

    def __post_init__(self):
        eps = tuple(self.eps)
        if len(eps) != len(SLOTS) or any(not isinstance(e, int) or e < 0 for e in eps):
            raise ValueError(f"Transvection signature needs five non-negative integers, got {self.eps!r}")
        object.__setattr__(self, 'eps', eps)

    @classmethod
    def parse(cls, text):
        if len(text) != len(SLOTS) or not text.isdigit():
            raise ValueError(f"Transvection signature must be five digits, got {text!r}")
        return cls(tuple(int(ch) for ch in text))

    def __str__(self):
        return ''.join(str(e) for e in self.eps)


def ground_form(source=None):
    """Build the ground form.

    Args:
        source: None for symbolic amplitudes, a PureState5, or any sequence of
            32 scalars (Fraction, QuadExt or Jet) indexed by the bitstring i1..i5

    Returns:
        GroundForm
    """
    if source is None:
        return GroundForm(None)
    amplitudes = getattr(source, 'amplitudes', source)
    amplitudes = tuple(amplitudes)
    if len(amplitudes) != 32:
        raise ValueError(f"Ground form needs 32 amplitudes, got {len(amplitudes)}")
    return GroundForm(amplitudes)


def _as_covariant(form):
    return form.as_covariant() if isinstance(form, GroundForm) else form


def _omega(poly, position):
    a0, a1 = _PRIMED[2 * position], _PRIMED[2 * position + 1]
    b0, b1 = _DOUBLE[2 * position], _DOUBLE[2 * position + 1]
    return poly.partial(a0).partial(b1) - poly.partial(a1).partial(b0)


def transvect(P, Q, signature):
    """Transvectant (P, Q)^eps computed by the literal Omega process.

    The variables of P are primed and those of Q double-primed, the Omega
    operator of each slot is applied eps_s times to the product, and both
    copies are then identified with the plain variables. No normalization
    factor is applied.
    """
    P, Q = _as_covariant(P), _as_covariant(Q)
    if not isinstance(signature, TransvectionSignature):
        signature = TransvectionSignature(tuple(signature))
    eps = signature.eps
    multidegree = tuple(p + q - 2 * e for p, q, e in zip(P.multidegree, Q.multidegree, eps))
    a_degree = P.a_degree + Q.a_degree
    if any(m < 0 for m in multidegree) or P.is_zero or Q.is_zero:
        return Covariant(Poly(), a_degree, multidegree)

    product = P.body.rename(_TO_PRIMED) * Q.body.rename(_TO_DOUBLE)
    for position, count in enumerate(eps):
        for _ in range(count):
            if product.is_zero():
                break
            product = _omega(product, position)
    body = product.rename(_TRACE)
    logger.debug(f"Transvectant ^{signature}: {len(P.body)} x {len(Q.body)} terms -> {len(body)} terms")
    return Covariant(body, a_degree, multidegree)


def slot_quadratic(f, slot):
    """Quadratic binary form b_s = (f, f)^eps with eps_s = 0 and 1 on the other four slots"""
    position = slot_position(slot)
    eps = tuple(0 if i == position else 1 for i in range(len(SLOTS)))
    return transvect(f, f, TransvectionSignature(eps))


def _collapse(poly):
    """Scalar if no variable remains, else the polynomial itself"""
    if poly.is_constant():
        return poly.constant_value()
    return poly


def discriminant(b):
    """c1^2 - 4*c2*c0 of b = c2*s0^2 + c1*s0*s1 + c0*s1^2"""
    shape = [m for m in b.multidegree if m != 0]
    if shape != [2]:
        raise ShapeError(f"Discriminant needs a quadratic in exactly one slot, got multidegree {b.multidegree}")
    position = next(i for i, m in enumerate(b.multidegree) if m == 2)
    s0, s1 = slot_variables(position)
    groups = b.body.split({s0, s1})
    leftover = set(groups) - {((s0, 2),), ((s0, 1), (s1, 1)), ((s1, 2),)}
    if leftover:
        raise ShapeError(f"Body is not homogeneous quadratic in slot {SLOTS[position]}")
    c2 = groups.get(((s0, 2),), Poly())
    c1 = groups.get(((s0, 1), (s1, 1)), Poly())
    c0 = groups.get(((s1, 2),), Poly())
    return _collapse(c1 * c1 - c2 * c0 * 4)


def invariant_D(source, slot):
    """Degree-4 invariant D_s: discriminant of the slot quadratic b_s"""
    f = ground_form(source) if not isinstance(source, GroundForm) else source
    return discriminant(slot_quadratic(f, slot))


CovariantChain = namedtuple('CovariantChain', ['B22020', 'C31111', 'D22200', 'E11111'])

CHAIN_SIGNATURES = (
    TransvectionSignature((0, 0, 1, 0, 1)),
    TransvectionSignature((0, 1, 0, 1, 0)),
    TransvectionSignature((1, 0, 0, 1, 1)),
    TransvectionSignature((1, 1, 1, 0, 0)),
)


def covariant_chain(source):
    """B = (f,f)^00101, C = (B,f)^01010, D = (C,f)^10011, E = (D,f)^11100"""
    f = ground_form(source) if not isinstance(source, GroundForm) else source
    B = transvect(f, f, CHAIN_SIGNATURES[0])
    C = transvect(B, f, CHAIN_SIGNATURES[1])
    D = transvect(C, f, CHAIN_SIGNATURES[2])
    E = transvect(D, f, CHAIN_SIGNATURES[3])
    logger.debug(f"Covariant chain sizes: B={len(B.body)} C={len(C.body)} D={len(D.body)} E={len(E.body)}")
    return CovariantChain(B, C, D, E)


def invariant_F(source, chain=None):
    """Degree-6 invariant F = (E11111, f)^11111"""
    f = ground_form(source) if not isinstance(source, GroundForm) else source
    if chain is None:
        chain = covariant_chain(f)
    F = transvect(chain.E11111, f, TransvectionSignature((1, 1, 1, 1, 1)))
    return _collapse(F.body)
