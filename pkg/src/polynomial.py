"""
Sparse Polynomial Arithmetic - exact multivariate (Laurent) polynomials over pluggable scalars
"""
import logging
from fractions import Fraction

logger = logging.getLogger(__name__)

SLOTS = ('x', 'y', 'z', 't', 'u')

AMPLITUDE_NAMES = tuple(f"A{i:05b}" for i in range(32))
BINARY_NAMES = tuple(f"{slot}{bit}" for slot in SLOTS for bit in (0, 1))
PRIMED_NAMES = tuple(f"{name}'" for name in BINARY_NAMES)
DOUBLE_PRIMED_NAMES = tuple(f"{name}''" for name in BINARY_NAMES)
RESIDUE_NAMES = ('t',) + tuple(f"u_{j}" for j in range(1, 6))

# Fixed engine-wide registry: the index of a name is its canonical sort key.
VARIABLES = AMPLITUDE_NAMES + BINARY_NAMES + PRIMED_NAMES + DOUBLE_PRIMED_NAMES + RESIDUE_NAMES
VARIABLE_INDEX = {name: index for index, name in enumerate(VARIABLES)}

ONE = ()


def var_index(variable):
    """Resolve a registered variable name (or index) to its registry index"""
    if isinstance(variable, int):
        if not 0 <= variable < len(VARIABLES):
            raise ValueError(f"Variable index {variable} is not registered")
        return variable
    try:
        return VARIABLE_INDEX[variable]
    except KeyError:
        raise ValueError(f"Variable '{variable}' is not registered") from None


def make_monomial(exponents):
    """Build a canonical monomial from a mapping or iterable of (variable, exponent)"""
    items = exponents.items() if isinstance(exponents, dict) else exponents
    merged = {}
    for variable, exponent in items:
        index = var_index(variable)
        merged[index] = merged.get(index, 0) + exponent
    return tuple(sorted((i, e) for i, e in merged.items() if e))


def mono_mul(a, b):
    if not a:
        return b
    if not b:
        return a
    merged = dict(a)
    for index, exponent in b:
        total = merged.get(index, 0) + exponent
        if total:
            merged[index] = total
        else:
            del merged[index]
    return tuple(sorted(merged.items()))


def mono_pow(m, power):
    if power == 0:
        return ONE
    return tuple((i, e * power) for i, e in m)


def mono_exponent(m, index):
    for i, e in m:
        if i == index:
            return e
    return 0


def mono_drop(m, indices):
    """Remove the listed variables from a monomial"""
    return tuple((i, e) for i, e in m if i not in indices)


def mono_str(m):
    if not m:
        return '1'
    return '*'.join(VARIABLES[i] if e == 1 else f"{VARIABLES[i]}^{e}" for i, e in m)


class Poly:
    """Sparse polynomial: a map from canonical monomial to a nonzero scalar.

    Scalars may be Fraction, QuadExt or Jet; anything supporting +, *, unary -
    and truthiness as a zero test works. Negative exponents are accepted so the
    residue engine can use the same type for Laurent polynomials.
    """

    __slots__ = ('terms',)

    def __init__(self, terms=None):
        self.terms = {m: c for m, c in (terms or {}).items() if c}

    @classmethod
    def _wrap(cls, terms):
        poly = cls.__new__(cls)
        poly.terms = terms
        return poly

    @classmethod
    def constant(cls, value):
        return cls({ONE: value})

    @classmethod
    def variable(cls, name, coefficient=Fraction(1)):
        return cls({((var_index(name), 1),): coefficient})

    @classmethod
    def monomial(cls, exponents, coefficient=Fraction(1)):
        return cls({make_monomial(exponents): coefficient})

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def __iter__(self):
        return iter(self.terms.items())

    def _accumulate(self, target, mono, coeff):
        if mono in target:
            total = target[mono] + coeff
            if total:
                target[mono] = total
            else:
                del target[mono]
        elif coeff:
            target[mono] = coeff

    def __add__(self, other):
        if not isinstance(other, Poly):
            other = Poly.constant(other)
        result = dict(self.terms)
        for mono, coeff in other.terms.items():
            self._accumulate(result, mono, coeff)
        return Poly._wrap(result)

    __radd__ = __add__

    def __neg__(self):
        return Poly._wrap({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, Poly):
            other = Poly.constant(other)
        return self + (-other)

    def __rsub__(self, other):
        return Poly.constant(other) - self

    def __mul__(self, other):
        if not isinstance(other, Poly):
            return Poly({m: c * other for m, c in self.terms.items()})
        result = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                self._accumulate(result, mono_mul(m1, m2), c1 * c2)
        return Poly._wrap(result)

    def __rmul__(self, other):
        return Poly({m: other * c for m, c in self.terms.items()})

    def __pow__(self, exponent):
        if not isinstance(exponent, int) or exponent < 0:
            return NotImplemented
        result = Poly.constant(Fraction(1))
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __eq__(self, other):
        if not isinstance(other, Poly):
            other = Poly.constant(other)
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def partial(self, variable):
        """Exact formal derivative; zero if the variable is absent"""
        index = var_index(variable)
        result = {}
        for mono, coeff in self.terms.items():
            exponent = mono_exponent(mono, index)
            if exponent:
                reduced = mono_mul(mono, ((index, -1),))
                self._accumulate(result, reduced, coeff * exponent)
        return Poly._wrap(result)

    def evaluate(self, assignment):
        """Substitute scalars or polynomials for registered variables.

        Unassigned variables stay symbolic; the result is always a Poly.
        """
        values = {var_index(v): value for v, value in assignment.items()}
        result = Poly()
        for mono, coeff in self.terms.items():
            kept = []
            poly_factor = None
            for index, exponent in mono:
                if index not in values:
                    kept.append((index, exponent))
                    continue
                value = values[index]
                if isinstance(value, Poly):
                    power = value ** exponent
                    poly_factor = power if poly_factor is None else poly_factor * power
                else:
                    coeff = coeff * value ** exponent
            term = Poly({tuple(kept): coeff})
            if poly_factor is not None:
                term = term * poly_factor
            result = result + term
        return result

    def rename(self, mapping):
        """Relabel variables by an index -> index mapping (collisions multiply out)"""
        result = {}
        for mono, coeff in self.terms.items():
            renamed = make_monomial((mapping.get(i, i), e) for i, e in mono)
            self._accumulate(result, renamed, coeff)
        return Poly._wrap(result)

    def variables(self):
        return {index for mono in self.terms for index, _ in mono}

    def degrees_in(self, indices):
        """Set of total degrees in the given variables across all terms"""
        indices = set(indices)
        return {sum(e for i, e in mono if i in indices) for mono in self.terms}

    def split(self, indices):
        """Group terms by their sub-monomial in the given variables.

        Returns a dict mapping that sub-monomial to the Poly of the remaining factors.
        """
        indices = set(indices)
        groups = {}
        for mono, coeff in self.terms.items():
            key = tuple((i, e) for i, e in mono if i in indices)
            rest = tuple((i, e) for i, e in mono if i not in indices)
            bucket = groups.setdefault(key, {})
            self._accumulate(bucket, rest, coeff)
        return {key: Poly._wrap(bucket) for key, bucket in groups.items() if bucket}

    def coefficient(self, exponents):
        return self.terms.get(make_monomial(exponents), Fraction(0))

    def is_constant(self):
        return all(not mono for mono in self.terms)

    def constant_value(self):
        """Scalar value of a polynomial with no variables left"""
        if not self.is_constant():
            raise ValueError(f"Polynomial still depends on {sorted(VARIABLES[i] for i in self.variables())}")
        return self.terms.get(ONE, Fraction(0))

    def __str__(self):
        if not self.terms:
            return '0'
        return ' + '.join(f"({c})*{mono_str(m)}" for m, c in sorted(self.terms.items()))

    def __repr__(self):
        return f"Poly({len(self.terms)} terms)"


def poly_mul(p, q):
    """Exact product of two polynomials in canonical form"""
    return p * q


def poly_partial(p, variable):
    """Formal partial derivative with respect to a registered variable"""
    return p.partial(variable)


def poly_eval(p, assignment):
    """Substitute values; returns a scalar when no variable remains, else a Poly"""
    result = p.evaluate(assignment)
    if result.is_constant():
        return result.constant_value()
    return result
