"""
Invariant Reports - tables and JSON payloads for every command
"""
import json

import pandas as pd
from tabulate import tabulate

from .fingerprint import INVARIANT_NAMES, ROWS, NONZERO, ZERO


def render_json(payload):
    """Stable JSON: sorted keys, exact values as strings"""
    return json.dumps(payload, indent=2, sort_keys=True, default=str)


class InvariantReporter:
    """Render engine results as tabulate tables or JSON"""

    def __init__(self, format='table', tablefmt='grid'):
        if format not in ('table', 'json'):
            raise ValueError(f"Unknown output format {format!r}; expected 'table' or 'json'")
        self.format = format
        self.tablefmt = tablefmt

    def _emit(self, payload, rows, headers):
        if self.format == 'json':
            return render_json(payload)
        return tabulate(rows, headers=headers, tablefmt=self.tablefmt, disable_numparse=True)

    def dimensions(self, pairs, qubits=5, method='character'):
        """
        Degree -> dimension pairs

        Args:
            pairs: list of (degree, dimension)
            qubits: number of qubits the dimensions belong to
            method: method that produced them

        Returns:
            Formatted table string
        """
        payload = {'qubits': qubits, 'method': method,
                   'dimensions': [{'degree': d, 'dimension': str(v)} for d, v in pairs]}
        rows = [[d, str(v)] for d, v in pairs]
        return self._emit(payload, rows, ['Degree', 'Dimension'])

    def series(self, coefficients, qubits=5, method='character'):
        """Comma-separated Taylor coefficients from degree 0"""
        if self.format == 'json':
            return self.dimensions(list(enumerate(coefficients)), qubits, method)
        return ','.join(str(c) for c in coefficients)

    def dimension_reports(self, reports, qubits=5):
        """Cross-method comparison with a pandas agreement summary"""
        df = pd.DataFrame([{
            'degree': r.degree,
            'character': r.dim_character,
            'table': r.dim_table,
            'residue': r.dim_residue,
            'agreement': r.agreement,
        } for r in reports])
        df = df.dropna(axis='columns', how='all')
        disagreeing = df.loc[~df['agreement'], 'degree'].tolist()
        payload = {
            'qubits': qubits,
            'reports': [{
                'degree': r.degree,
                'agreement': r.agreement,
                **{k: str(v) for k, v in (('character', r.dim_character), ('table', r.dim_table),
                                          ('residue', r.dim_residue)) if v is not None},
            } for r in reports],
            'agreements': int(df['agreement'].sum()),
            'first_disagreement': disagreeing[0] if disagreeing else None,
        }
        if self.format == 'json':
            return render_json(payload)
        table = tabulate(df.astype(str).values.tolist(), headers=[c.title() for c in df.columns],
                         tablefmt=self.tablefmt, disable_numparse=True)
        summary = f"{payload['agreements']}/{len(df)} degrees agree"
        if disagreeing:
            summary += f"; first disagreement at degree {disagreeing[0]}"
        return f"{table}\n{summary}"

    def structure(self, data):
        """Reading of P(1) and Q(t) as secondary/primary invariant counts"""
        counts = pd.Series(data.denominator_degrees).value_counts().sort_index()
        payload = {
            'primary_degrees': {int(d): int(c) for d, c in counts.items()},
            'primary_count': len(data.denominator_degrees),
            'primary_degree_sum': sum(data.denominator_degrees),
            'numerator_degree': data.numerator_degree,
            'secondary_count': data.p_at_one(),
        }
        rows = [[f"primary invariants of degree {d}", c] for d, c in payload['primary_degrees'].items()]
        rows += [
            ['primary invariants', payload['primary_count']],
            ['sum of primary degrees', payload['primary_degree_sum']],
            ['numerator degree', payload['numerator_degree']],
            ['secondary invariants P(1)', payload['secondary_count']],
        ]
        return self._emit(payload, rows, ['Quantity', 'Value'])

    def invariant_value(self, name, value):
        """Bare canonical value, or a JSON object naming the invariant"""
        if self.format == 'json':
            return render_json({'invariant': name, 'value': str(value)})
        return str(value)

    def fingerprint(self, fp, label='state'):
        """Nine-row pattern plus the exact invariant values"""
        payload = {
            'state': label,
            'pattern': {row: NONZERO if flag else ZERO for row, flag in zip(ROWS, fp.pattern)},
            'values': {name: str(fp.values[name]) for name in INVARIANT_NAMES if name in fp.values},
            'slot_quadratics': {f"b{s}": NONZERO if flag else ZERO
                                for s, flag in zip('xyztu', fp.slot_quadratics)},
        }
        rows = []
        for row, flag in zip(ROWS, fp.pattern):
            rows.append([row, NONZERO if flag else ZERO, str(fp.values.get(row, ''))])
        return self._emit(payload, rows, ['Covariant', label, 'Value'])

    def table2(self, fingerprints, table, mismatches):
        """Computed vs published covariant table, cell by cell"""
        labels = table['states']
        payload = {
            'computed': {label: fingerprints[label].as_dict() for label in labels},
            'mismatches': mismatches,
            'matching_cells': len(ROWS) * len(labels) - len(mismatches),
            'total_cells': len(ROWS) * len(labels),
        }
        if self.format == 'json':
            return render_json(payload)
        flagged = {(m['row'], m['state']) for m in mismatches}
        rows = []
        for row in ROWS:
            cells = []
            for label, expected in zip(labels, table['rows'][row]):
                got = NONZERO if fingerprints[label].as_dict()[row] else ZERO
                cells.append(f"{got} (published {expected})" if (row, label) in flagged else got)
            rows.append([row] + cells)
        text = tabulate(rows, headers=['Covariant'] + labels, tablefmt=self.tablefmt)
        return f"{text}\n{payload['matching_cells']}/{payload['total_cells']} cells match the published table"

    def table1(self, validation):
        """Both readings of the numerator table side by side"""
        payload = {
            'accepted_reading': validation.accepted_reading,
            'max_degree': validation.max_degree,
            'denominator_factors': validation.denominator_factors,
            'denominator_degree_sum': validation.denominator_degree_sum,
            'readings': [vars(r) | {'passed': r.passed} for r in validation.readings],
            'passed': validation.passed,
        }
        if self.format == 'json':
            return render_json(payload)
        rows = []
        for check in validation.readings:
            rows.append([
                check.reading,
                'yes' if check.even else 'no',
                check.degree,
                ', '.join(str(n) for n in check.palindrome_failures) or 'none',
                check.p_at_one,
                'yes' if check.p_at_one_matches else 'no',
                ', '.join(str(n) for n in check.character_mismatches) or 'none',
            ])
        text = tabulate(rows, headers=['Reading', 'Even', 'Degree', 'Palindrome failures',
                                       'P(1)', 'P(1) = 3014400', f'Mismatches <= {validation.max_degree}'],
                        tablefmt=self.tablefmt, disable_numparse=True)
        verdict = validation.accepted_reading or 'no reading'
        return f"{text}\nAccepted reading: {verdict}; {validation.denominator_factors} denominator factors"

    def invariance(self, report):
        """Per-invariant exact counts of a seeded trial batch"""
        payload = {k: report[k] for k in ('seed', 'trials', 'invariance', 'covariance', 'passed') if k in report}
        rows = [[name, f"{c['exact']}/{c['total']} exact"] for name, c in report.get('invariance', {}).items()]
        rows += [[name, f"{c['preserved']}/{c['total']} preserved"]
                 for name, c in report.get('covariance', {}).items()]
        return self._emit(payload, rows, ['Covariant', 'Result'])

    def independence(self, report):
        payload = {k: report[k] for k in ('seed', 'independence', 'passed') if k in report}
        rows = [[r['point'], r['rank_D'], r['rank_DF']] for r in report.get('independence', [])]
        return self._emit(payload, rows, ['Point', 'rank {D}', 'rank {D, F}'])

    def closed_form(self, expression, qubits):
        payload = {'qubits': qubits, 'closed_form': str(expression)}
        return self._emit(payload, [[qubits, str(expression)]], ['Qubits', 'Hilbert series'])
