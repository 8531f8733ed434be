"""
Pure States - 5-qubit amplitude tensors, state files and the Osterloh-Siewert representatives
"""
import json
import logging
import re
from dataclasses import dataclass
from fractions import Fraction

from .scalars import DomainError, QuadExt, is_square_free

logger = logging.getLogger(__name__)

BITSTRING = re.compile(r'^[01]{5}$')
EXACT_FRACTION = re.compile(r'^[+-]?\d+(/\d+)?$')

# Kets as printed; the leftmost character is i1 under the 'printed' reading.
OSTERLOH_KETS = {
    1: ({'11111': 1, '00000': 1}, 1),
    2: ({'11111': 1, '11100': 1, '00010': 1, '00001': 1}, 1),
    3: ({'11111': 'sqrt', '11000': 1, '00100': 1, '00010': 1, '00001': 1}, 2),
    4: ({'11111': 'sqrt', '10000': 1, '01000': 1, '00100': 1, '00010': 1, '00001': 1}, 3),
}

KET_READINGS = ('reversed', 'printed')


class StateFormatError(ValueError):
    """Raised for malformed state files"""


@dataclass(frozen=True)
class PureState5:
    """Unnormalized 5-qubit state: 32 QuadExt amplitudes sharing one radicand.

    Amplitude i belongs to the bitstring f"{i:05b}" = i1 i2 i3 i4 i5, with i1 the x slot.
    """
    amplitudes: tuple
    radicand: int = 1

    def __post_init__(self):
        if not isinstance(self.radicand, int) or not is_square_free(self.radicand):
            raise DomainError(f"Radicand {self.radicand!r} is not a square-free positive integer")
        amplitudes = tuple(QuadExt.coerce(a) if not isinstance(a, QuadExt) else a for a in self.amplitudes)
        if len(amplitudes) != 32 or any(a is None for a in amplitudes):
            raise ValueError("A 5-qubit state needs exactly 32 exact amplitudes")
        for amplitude in amplitudes:
            if not amplitude.is_rational and amplitude.radicand != self.radicand:
                raise DomainError(
                    f"Amplitude {amplitude} does not live over sqrt({self.radicand})")
        object.__setattr__(self, 'amplitudes', amplitudes)

    @classmethod
    def from_mapping(cls, mapping, radicand=1):
        amplitudes = [QuadExt(0)] * 32
        for bits, value in mapping.items():
            if not BITSTRING.match(bits):
                raise ValueError(f"Amplitude key {bits!r} is not a 5-bit string")
            amplitudes[int(bits, 2)] = value if isinstance(value, QuadExt) else QuadExt(value)
        return cls(tuple(amplitudes), radicand)

    def amplitude(self, bits):
        return self.amplitudes[int(bits, 2)]

    @property
    def is_zero(self):
        return not any(self.amplitudes)

    @property
    def is_rational(self):
        return all(a.is_rational for a in self.amplitudes)

    def support(self):
        return [f"{i:05b}" for i, a in enumerate(self.amplitudes) if a]

    def to_dict(self):
        return {
            'radicand': self.radicand,
            'amplitudes': {f"{i:05b}": a.to_dict() for i, a in enumerate(self.amplitudes) if a},
        }


def _parse_fraction(text, where):
    if not isinstance(text, str) or not EXACT_FRACTION.match(text.strip()):
        raise StateFormatError(f"{where}: {text!r} is not an exact fraction string")
    try:
        return Fraction(text.strip())
    except ZeroDivisionError:
        raise StateFormatError(f"{where}: zero denominator in {text!r}") from None


def parse_state(payload):
    """Build a PureState5 from the decoded JSON state format"""
    if not isinstance(payload, dict) or not isinstance(payload.get('amplitudes'), dict):
        raise StateFormatError("State must be an object with an 'amplitudes' object")
    radicand = payload.get('radicand', 1)
    if not isinstance(radicand, int) or isinstance(radicand, bool) or not is_square_free(radicand):
        raise StateFormatError(f"Radicand {radicand!r} is not a square-free positive integer")

    amplitudes = {}
    for bits, entry in payload['amplitudes'].items():
        if not BITSTRING.match(bits):
            raise StateFormatError(f"Amplitude key {bits!r} must match [01]{{5}}")
        if not isinstance(entry, dict) or 'a' not in entry and 'b' not in entry:
            raise StateFormatError(f"Amplitude {bits} must be an object with 'a' and/or 'b'")
        rat = _parse_fraction(entry.get('a', '0'), bits)
        surd = _parse_fraction(entry.get('b', '0'), bits)
        if surd and radicand == 1:
            raise StateFormatError(f"Amplitude {bits} has a surd part but the radicand is 1")
        amplitudes[bits] = QuadExt(rat, surd, radicand)
    return PureState5.from_mapping(amplitudes, radicand)


def load_state(path):
    """Load a state file {"radicand": n, "amplitudes": {"01011": {"a": "p/q", "b": "p/q"}}}"""
    try:
        with open(path, 'r') as f:
            payload = json.load(f)
    except json.JSONDecodeError as e:
        raise StateFormatError(f"{path}: invalid JSON ({e})") from e
    state = parse_state(payload)
    logger.debug(f"Loaded state {path} with support {state.support()}")
    return state


def osterloh_state(k, reading='reversed'):
    """Unnormalized Osterloh-Siewert representative |Phi_k>, k in 1..4.

    With reading='reversed' the rightmost character of each printed ket is the
    x slot; this is the reading under which the published covariant table is
    reproduced. reading='printed' takes the kets literally.
    """
    if k not in OSTERLOH_KETS:
        raise ValueError(f"Osterloh-Siewert state index must be 1..4, got {k}")
    if reading not in KET_READINGS:
        raise ValueError(f"Unknown ket reading {reading!r}; expected one of {KET_READINGS}")
    kets, radicand = OSTERLOH_KETS[k]
    mapping = {}
    for ket, value in kets.items():
        bits = ket[::-1] if reading == 'reversed' else ket
        mapping[bits] = QuadExt(0, 1, radicand) if value == 'sqrt' else QuadExt(value)
    return PureState5.from_mapping(mapping, radicand)
