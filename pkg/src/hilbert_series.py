"""
Hilbert Series Data - expansion and validation of the published P(t)/Q(t) closed form
"""
import logging
from dataclasses import dataclass, field

from .characters import dim_invariants

logger = logging.getLogger(__name__)

# Q(t) = (1-t^4)^5 (1-t^6) (1-t^8)^5 (1-t^10) (1-t^12)^5
PUBLISHED_DENOMINATOR = (4,) * 5 + (6,) + (8,) * 5 + (10,) + (12,) * 5
SECONDARY_COUNT = 3014400
NUMERATOR_DEGREE = 104


@dataclass(frozen=True)
class HilbertSeriesData:
    numerator: dict
    denominator_degrees: tuple = PUBLISHED_DENOMINATOR

    def __post_init__(self):
        if any(d < 0 or a < 0 for d, a in self.numerator.items()):
            raise ValueError("Numerator needs non-negative degrees and coefficients")
        if any(d <= 0 for d in self.denominator_degrees):
            raise ValueError("Denominator factor degrees must be positive")

    @property
    def numerator_degree(self):
        return max((d for d, a in self.numerator.items() if a), default=0)

    def p_at_one(self):
        return sum(self.numerator.values())

    def with_correction(self, correction):
        """Copy with the correction layer's entries overriding the numerator"""
        return HilbertSeriesData({**self.numerator, **correction}, self.denominator_degrees)

    def palindrome_failures(self):
        """Degrees n <= top/2 with a_n != a_{top-n}"""
        top = self.numerator_degree
        return [n for n in range(0, top // 2 + 1)
                if self.numerator.get(n, 0) != self.numerator.get(top - n, 0)]


def series_expand(data, n_max):
    """Taylor coefficients of P(t) / prod(1 - t^d) through degree n_max, by integer convolution"""
    if n_max < 0:
        raise ValueError(f"n_max must be non-negative, got {n_max}")
    coefficients = [data.numerator.get(n, 0) for n in range(n_max + 1)]
    for d in data.denominator_degrees:
        for n in range(d, n_max + 1):
            coefficients[n] += coefficients[n - d]
    return coefficients


@dataclass
class ReadingCheck:
    """Checks on one reading of the numerator table"""
    reading: str
    even: bool
    degree: int
    palindrome_failures: list
    p_at_one: int
    p_at_one_matches: bool
    negative_degrees: list
    character_mismatches: list = field(default_factory=list)

    @property
    def passed(self):
        return (self.even and self.degree == NUMERATOR_DEGREE and not self.palindrome_failures
                and self.p_at_one_matches and not self.negative_degrees
                and not self.character_mismatches)


@dataclass
class TableValidation:
    readings: list
    accepted_reading: str
    max_degree: int
    denominator_factors: int
    denominator_degree_sum: int

    @property
    def passed(self):
        accepted = [r for r in self.readings if r.reading == self.accepted_reading]
        return bool(accepted) and accepted[0].passed and self.denominator_factors == 17


def check_reading(reading, data, max_degree, target=SECONDARY_COUNT):
    expansion = series_expand(data, max_degree)
    mismatches = [d for d in range(0, max_degree + 1, 2) if expansion[d] != dim_invariants(d)]
    return ReadingCheck(
        reading=reading,
        even=all(n % 2 == 0 for n, a in data.numerator.items() if a),
        degree=data.numerator_degree,
        palindrome_failures=data.palindrome_failures(),
        p_at_one=data.p_at_one(),
        p_at_one_matches=data.p_at_one() == target,
        negative_degrees=[n for n, a in enumerate(expansion) if a < 0],
        character_mismatches=mismatches,
    )


def validate_table(verbatim, correction, max_degree=16, target=SECONDARY_COUNT):
    """Validate the numerator table under its verbatim and corrected readings.

    The accepted reading is the unique one whose P(1) equals the published
    count of secondary invariants; None if zero or both readings qualify.
    """
    data = HilbertSeriesData(dict(verbatim))
    readings = [
        check_reading('verbatim', data, max_degree, target),
        check_reading('corrected', data.with_correction(correction), max_degree, target),
    ]
    for check in readings:
        if check.palindrome_failures:
            logger.warning(f"{check.reading} table breaks palindromy at degrees {check.palindrome_failures}")
    matching = [r.reading for r in readings if r.p_at_one_matches]
    accepted = matching[0] if len(matching) == 1 else None
    if accepted is None:
        logger.error(f"P(1) = {target} holds under {len(matching)} readings; cannot resolve the table")
    else:
        logger.info(f"Accepted the {accepted} reading: P(1) = {target}")
    return TableValidation(
        readings=readings,
        accepted_reading=accepted,
        max_degree=max_degree,
        denominator_factors=len(data.denominator_degrees),
        denominator_degree_sum=sum(data.denominator_degrees),
    )


@dataclass
class DimensionReport:
    """Per-degree dimensions from each method that was run"""
    degree: int
    dim_character: int
    dim_table: int = None
    dim_residue: int = None

    @property
    def agreement(self):
        values = {v for v in (self.dim_character, self.dim_table, self.dim_residue) if v is not None}
        return len(values) == 1


def dimension_reports(max_degree, data=None, residue_coefficients=None, qubits=5):
    """Cross-method DimensionReports for degrees 0..max_degree"""
    table = series_expand(data, max_degree) if data is not None else None
    reports = []
    for d in range(max_degree + 1):
        reports.append(DimensionReport(
            degree=d,
            dim_character=dim_invariants(d, qubits),
            dim_table=table[d] if table is not None else None,
            dim_residue=residue_coefficients[d] if residue_coefficients is not None else None,
        ))
    disagreements = [r.degree for r in reports if not r.agreement]
    if disagreements:
        logger.error(f"Methods disagree at degrees {disagreements}")
    return reports
