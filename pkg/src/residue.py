"""
Iterated Residues - Molien-Weyl constant-term extraction for k-qubit invariant algebras

Factors are stored as signed monomials: the key (s, m) stands for (1 - s*m)
with s in {+1, -1} and m a Laurent monomial in t, u_1..u_k.
"""
import itertools
import logging
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction

import sympy as sp

from .polynomial import (
    ONE, VARIABLES, VARIABLE_INDEX, Poly, mono_drop, mono_exponent, mono_mul, mono_pow,
)

logger = logging.getLogger(__name__)

T_INDEX = VARIABLE_INDEX['t']
MAX_QUBITS = 5
LONG_RUN_QUBITS = 5


class UnsupportedDegeneracyError(ValueError):
    """Raised when an inside pole falls outside the supported factor class"""


def u_name(j):
    return f"u_{j}"


# signed monomial helpers

def _smul(a, b):
    return (a[0] * b[0], mono_mul(a[1], b[1]))


def _spow(a, exponent):
    return (a[0] if exponent % 2 else 1, mono_pow(a[1], exponent))


def _spoly(a, coefficient=Fraction(1)):
    return Poly({a[1]: coefficient * a[0]})


def _sdrop(a, index):
    return (a[0], mono_drop(a[1], {index}))


def _factor_str(key):
    sign, mono = key
    body = '*'.join(VARIABLES[i] if e == 1 else f"{VARIABLES[i]}^{e}" for i, e in mono) or '1'
    return f"(1 {'-' if sign > 0 else '+'} {body})"


@dataclass
class FactoredTerm:
    """numerator / prod (1 - s*m)^mult over the factor multiset"""
    numerator: Poly
    factors: dict = field(default_factory=dict)

    def times(self, other):
        factors = dict(self.factors)
        for key, mult in other.factors.items():
            factors[key] = factors.get(key, 0) + mult
        return FactoredTerm(self.numerator * other.numerator, factors)

    def variables(self):
        found = set(self.numerator.variables())
        for _, mono in self.factors:
            found.update(i for i, _ in mono)
        return found


class FactoredRational:
    """Sum of FactoredTerms; closed under the residue steps used here"""

    def __init__(self, terms):
        self.terms = list(terms)

    def __len__(self):
        return len(self.terms)

    def variables(self):
        found = set()
        for term in self.terms:
            found |= term.variables()
        return {VARIABLES[i] for i in found}

    def _t_only_terms(self):
        """Rewrite every term with only positive-exponent t factors and scalar factors folded in"""
        normalized = []
        for term in self.terms:
            numerator = term.numerator
            if numerator.variables() - {T_INDEX}:
                raise ValueError("Numerator still depends on a torus variable")
            factors = []
            for (sign, mono), mult in term.factors.items():
                if any(i != T_INDEX for i, _ in mono):
                    raise ValueError(f"Factor {_factor_str((sign, mono))} still depends on a torus variable")
                exponent = mono_exponent(mono, T_INDEX)
                if exponent == 0:
                    if sign > 0:
                        raise ZeroDivisionError("Factor (1 - 1) in the denominator")
                    numerator = numerator * Fraction(1, 2 ** mult)
                    continue
                if exponent < 0:
                    inverse = _spow((sign, mono), -1)
                    numerator = numerator * _spoly(_spow(inverse, mult), Fraction((-1) ** mult))
                    sign, exponent = inverse[0], -exponent
                factors.extend([(exponent, sign)] * mult)
            normalized.append((numerator, factors))
        return normalized

    def series(self, n_max):
        """Exact Taylor coefficients in t through degree n_max"""
        totals = defaultdict(Fraction)
        for numerator, factors in self._t_only_terms():
            low = min([0] + [mono_exponent(m, T_INDEX) for m in numerator.terms])
            length = n_max - low
            expansion = [Fraction(0)] * (length + 1)
            expansion[0] = Fraction(1)
            for exponent, sign in factors:
                for i in range(exponent, length + 1):
                    expansion[i] += sign * expansion[i - exponent]
            for mono, coeff in numerator.terms.items():
                shift = mono_exponent(mono, T_INDEX)
                for i in range(0, n_max - shift + 1):
                    totals[i + shift] += coeff * expansion[i]
        leftovers = {d: c for d, c in totals.items() if d < 0 and c}
        if leftovers:
            raise ArithmeticError(f"Negative powers of t survive: {leftovers}")
        return [totals.get(d, Fraction(0)) for d in range(n_max + 1)]

    def to_sympy(self, simplify=True):
        symbols = {}

        def monomial_expr(mono):
            expr = sp.Integer(1)
            for index, exponent in mono:
                name = VARIABLES[index]
                symbols.setdefault(name, sp.Symbol(name))
                expr *= symbols[name] ** exponent
            return expr

        total = sp.Integer(0)
        for term in self.terms:
            numerator = sum((sp.Rational(str(Fraction(c))) * monomial_expr(m)
                             for m, c in term.numerator.terms.items()), sp.Integer(0))
            denominator = sp.Integer(1)
            for (sign, mono), mult in term.factors.items():
                denominator *= (1 - sign * monomial_expr(mono)) ** mult
            total += numerator / denominator
        return sp.factor(sp.together(total)) if simplify else total


@dataclass(frozen=True)
class ContourOrder:
    """Magnitude hierarchy, smallest first: (t, ...) with t strictly smallest"""
    variables: tuple

    def __post_init__(self):
        names = tuple(self.variables)
        if not names or names[0] != 't':
            raise ValueError(f"Contour order must start with 't', got {names!r}")
        if len(set(names)) != len(names):
            raise ValueError(f"Contour order repeats a variable: {names!r}")
        expected = {u_name(j) for j in range(1, len(names))}
        if set(names[1:]) != expected:
            raise ValueError(f"Contour order must hold t and u_1..u_{len(names) - 1}, got {names!r}")
        object.__setattr__(self, 'variables', names)

    @classmethod
    def default(cls, k):
        """|t| << |u_k| << ... << |u_1| << 1"""
        return cls(('t',) + tuple(u_name(j) for j in range(k, 0, -1)))

    @property
    def qubits(self):
        return len(self.variables) - 1

    @property
    def indices(self):
        return tuple(VARIABLE_INDEX[name] for name in self.variables)

    def integration_sequence(self):
        """Torus variables from the largest contour inwards"""
        return tuple(reversed(self.variables[1:]))

    def is_small(self, mono):
        """True iff the monomial tends to 0 under the hierarchy"""
        for index in self.indices:
            exponent = mono_exponent(mono, index)
            if exponent:
                return exponent > 0
        return False


def build_integrand(k, weyl_sign=-1):
    """Molien-Weyl integrand for k qubits with the measure du/u absorbed.

    Numerator prod_i (u_i^-1 + weyl_sign * u_i^-3); factors (1 - t*u^a) for
    a in {+1,-1}^k. weyl_sign=-1 is the Weyl factor prod(1 - u_i^-2);
    weyl_sign=+1 is the printed prod(1 + u_i^-2).
    """
    if not 1 <= k <= MAX_QUBITS:
        raise ValueError(f"Number of qubits must be in 1..{MAX_QUBITS}, got {k}")
    if weyl_sign not in (-1, 1):
        raise ValueError(f"weyl_sign must be +1 or -1, got {weyl_sign}")
    numerator = Poly.constant(Fraction(1))
    for j in range(1, k + 1):
        u = VARIABLE_INDEX[u_name(j)]
        numerator = numerator * Poly({((u, -1),): Fraction(1), ((u, -3),): Fraction(weyl_sign)})
    factors = {}
    for signs in itertools.product((1, -1), repeat=k):
        mono = tuple(sorted([(T_INDEX, 1)] + [(VARIABLE_INDEX[u_name(j)], s)
                                             for j, s in zip(range(1, k + 1), signs)]))
        factors[(1, mono)] = 1
    return FactoredRational([FactoredTerm(numerator, factors)])


def _halve(terms, index):
    """Substitute v^2 -> v when the integrand (with its measure) is even in v"""
    for term in terms:
        if any((mono_exponent(m, index) + 1) % 2 for m in term.numerator.terms):
            return terms
        if any(mono_exponent(mono, index) % 2 for _, mono in term.factors):
            return terms

    def halve_factor(mono):
        return tuple((i, e // 2 if i == index else e) for i, e in mono)

    halved = []
    for term in terms:
        numerator = {}
        for mono, coeff in term.numerator.terms.items():
            exponent = mono_exponent(mono, index)
            reduced = mono_drop(mono, {index})
            new_exponent = (exponent + 1) // 2 - 1
            if new_exponent:
                reduced = mono_mul(reduced, ((index, new_exponent),))
            numerator[reduced] = numerator.get(reduced, 0) + coeff
        factors = {}
        for (sign, mono), mult in term.factors.items():
            key = (sign, halve_factor(mono))
            factors[key] = factors.get(key, 0) + mult
        halved.append(FactoredTerm(Poly(numerator), factors))
    logger.debug(f"Halved {VARIABLES[index]}")
    return halved


def _binomial_series(exponent, n):
    """Coefficients of (1+w)^exponent through w^n"""
    coefficients = [Fraction(1)]
    for i in range(n):
        coefficients.append(coefficients[-1] * Fraction(exponent - i, i + 1))
    return coefficients


def _series_mul(a, b, n):
    out = [[] for _ in range(n + 1)]
    for i in range(n + 1):
        for j in range(n + 1 - i):
            for x in a[i]:
                for y in b[j]:
                    out[i + j].append(x.times(y))
    return out


def _collect(terms):
    grouped = {}
    for term in terms:
        key = frozenset(term.factors.items())
        if key in grouped:
            grouped[key].numerator = grouped[key].numerator + term.numerator
        else:
            grouped[key] = FactoredTerm(term.numerator, dict(term.factors))
    return [t for t in grouped.values() if not t.numerator.is_zero()]


def _prepare_poles(term, index, order):
    """Split a term's factors into v-free ones and normalized v-poles [key, r, mult]"""
    numerator = term.numerator
    fixed = {}
    poles = []
    for (sign, mono), mult in term.factors.items():
        exponent = mono_exponent(mono, index)
        if exponent == 0:
            fixed[(sign, mono)] = fixed.get((sign, mono), 0) + mult
            continue
        if exponent < 0:
            # 1/(1-M)^m = (-M^-1)^m / (1-M^-1)^m
            inverse = _spow((sign, mono), -1)
            numerator = numerator * _spoly(_spow(inverse, mult), Fraction((-1) ** mult))
            poles.append([inverse, -exponent, mult])
        else:
            poles.append([(sign, mono), exponent, mult])

    split = []
    for key, r, mult in poles:
        c = _sdrop(key, index)
        if r == 2 and c[0] > 0 and order.is_small(mono_pow(c[1], -1)) and all(e % 2 == 0 for _, e in c[1]):
            root = mono_mul(tuple((i, e // 2) for i, e in c[1]), ((index, 1),))
            split.extend([[(1, root), 1, mult], [(-1, root), 1, mult]])
        else:
            split.append([key, r, mult])

    merged = {}
    for key, r, mult in split:
        if key in merged:
            merged[key][2] += mult
        else:
            merged[key] = [key, r, mult]
    return numerator, fixed, list(merged.values())


def _residue_at_zero(numerator, fixed, poles, index):
    low = min([0] + [mono_exponent(m, index) for m in numerator.terms])
    if low >= 0:
        return None
    n = -1 - low
    expansion = [Poly.constant(Fraction(1))] + [Poly() for _ in range(n)]
    for key, r, mult in poles:
        c = _sdrop(key, index)
        geometric = [Poly() for _ in range(n + 1)]
        for q in range(0, n // r + 1):
            geometric[q * r] = _spoly(_spow(c, q))
        for _ in range(mult):
            expansion = [sum((expansion[a] * geometric[i - a] for a in range(i + 1)), Poly())
                         for i in range(n + 1)]
    result = Poly()
    for mono, coeff in numerator.terms.items():
        position = -1 - mono_exponent(mono, index)
        if 0 <= position <= n:
            result = result + Poly({mono_drop(mono, {index}): coeff}) * expansion[position]
    if result.is_zero():
        return None
    return FactoredTerm(result, dict(fixed))


def _residue_at_pole(numerator, fixed, poles, position, index, order):
    key, r, mult = poles[position]
    c = _sdrop(key, index)
    location = _spow(c, -1)
    if not order.is_small(location[1]):
        return []
    if r != 1:
        raise UnsupportedDegeneracyError(
            f"Inside pole of {_factor_str(key)} has exponent {r} in {VARIABLES[index]}")
    n = mult - 1

    # numerator at v = p(1+w), as a series in w
    coefficients = [dict() for _ in range(n + 1)]
    for mono, coeff in numerator.terms.items():
        exponent = mono_exponent(mono, index)
        base = _smul((1, mono_drop(mono, {index})), _spow(location, exponent))
        for j, b in enumerate(_binomial_series(exponent, n)):
            value = coefficients[j].get(base[1], 0) + coeff * b * base[0]
            coefficients[j][base[1]] = value
    series = []
    for c_j in coefficients:
        poly = Poly(c_j)
        series.append([FactoredTerm(poly)] if poly else [])

    for other, (key2, r2, mult2) in enumerate(poles):
        if other == position:
            continue
        q = _smul(_sdrop(key2, index), _spow(location, r2))
        if q == (1, ONE):
            raise UnsupportedDegeneracyError(
                f"Coincident poles {_factor_str(key)} and {_factor_str(key2)}")
        # (1 - q(1+w)^r2)^-1 = sum_k q^k ((1+w)^r2 - 1)^k / (1-q)^(k+1)
        shifted = _binomial_series(r2, n)
        shifted[0] = Fraction(0)
        power = [Fraction(1)] + [Fraction(0)] * n
        inverse = [[] for _ in range(n + 1)]
        for depth in range(n + 1):
            for j in range(n + 1):
                if power[j]:
                    inverse[j].append(FactoredTerm(_spoly(_spow(q, depth), power[j]), {q: depth + 1}))
            power = [sum((power[x] * shifted[j - x] for x in range(j + 1)), Fraction(0))
                     for j in range(n + 1)]
        for _ in range(mult2):
            series = _series_mul(series, inverse, n)

    sign = Fraction((-1) ** mult)
    out = []
    for term in series[n]:
        factors = dict(fixed)
        for k2, m2 in term.factors.items():
            factors[k2] = factors.get(k2, 0) + m2
        out.append(FactoredTerm(term.numerator * _spoly(location, sign), factors))
    return out


def inner_residue(F, var, order):
    """Sum of residues in one torus variable at the poles inside its contour.

    Args:
        F: FactoredRational (or list of FactoredTerms)
        var: torus variable name, e.g. 'u_2'
        order: ContourOrder deciding which pole locations are small

    Returns:
        FactoredRational free of var
    """
    index = VARIABLE_INDEX[var]
    terms = F.terms if isinstance(F, FactoredRational) else list(F)
    terms = _halve(terms, index)
    out = []
    for term in terms:
        numerator, fixed, poles = _prepare_poles(term, index, order)
        at_zero = _residue_at_zero(numerator, fixed, poles, index)
        if at_zero is not None:
            out.append(at_zero)
        for position in range(len(poles)):
            out.extend(_residue_at_pole(numerator, fixed, poles, position, index, order))
    result = _collect(out)
    logger.info(f"Residue in {var}: {len(terms)} terms -> {len(result)} terms")
    return FactoredRational(result)


def hilbert_series_residue(k, order=None, allow_long=False, weyl_sign=-1):
    """Hilbert series of the k-qubit invariant algebra as a FactoredRational in t"""
    if not 1 <= k <= MAX_QUBITS:
        raise ValueError(f"Number of qubits must be in 1..{MAX_QUBITS}, got {k}")
    if k >= LONG_RUN_QUBITS and not allow_long:
        raise ValueError(f"Residue evaluation for {k} qubits is long-running; pass allow_long")
    order = order or ContourOrder.default(k)
    if order.qubits != k:
        raise ValueError(f"Contour order covers {order.qubits} qubits, expected {k}")
    F = build_integrand(k, weyl_sign)
    for var in order.integration_sequence():
        F = inner_residue(F, var, order)
    return F


def naive_constant_term(k, d, weyl_sign=1):
    """Constant term of A(u) times the t^d coefficient of the all-geometric expansion of 1/B.

    Counts multisets of d vectors from {+1,-1}^k whose sum has every
    coordinate in {0, 2}, weighted by weyl_sign per coordinate equal to 2.
    """
    if k < 1 or d < 0:
        raise ValueError(f"Need k >= 1 and d >= 0, got k={k}, d={d}")
    vectors = list(itertools.product((1, -1), repeat=k))
    total = 0
    for multiset in itertools.combinations_with_replacement(vectors, d):
        sums = [sum(v[i] for v in multiset) for i in range(k)]
        if all(s in (0, 2) for s in sums):
            total += weyl_sign ** sum(1 for s in sums if s == 2)
    return total
