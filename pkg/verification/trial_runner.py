"""
Seeded Verification Trials - SLOCC invariance and Jacobian independence batches
"""
import json
import logging
import os
import random

import pandas as pd

from src.fingerprint import INVARIANT_NAMES, ROWS, evaluate_invariants, fingerprint, jacobian_rank
from src.polynomial import SLOTS
from src.slocc import apply_slocc, random_local_operation, random_state
from src.states import osterloh_state
from src.transvectant import ground_form

logger = logging.getLogger(__name__)

D_NAMES = INVARIANT_NAMES[:5]


class TrialRunner:
    def __init__(self, seed=7, trials=25, bound=5, jacobian_points=5):
        self.seed = seed
        self.trials = trials
        self.bound = bound
        self.jacobian_points = jacobian_points
        self.invariance_rows = []
        self.covariance_rows = []
        self.independence_rows = []

    @classmethod
    def from_config(cls, config, seed=None, trials=None):
        return cls(
            seed=config.get('seed', 7) if seed is None else seed,
            trials=config.get('trials', 25) if trials is None else trials,
            bound=config.get('random_bound', 5),
            jacobian_points=config.get('jacobian_points', 5),
        )

    def run_invariance(self):
        """Compare every invariant before and after a random unimodular local operation.

        The same operation is applied to the four reference states; their
        nine-row fingerprints and slot quadratic patterns must not change.
        """
        logger.info(f"Starting invariance run: seed={self.seed}, trials={self.trials}")
        rng = random.Random(self.seed)
        self.invariance_rows = []
        self.covariance_rows = []
        references = {}
        for k in range(1, 5):
            state = osterloh_state(k)
            references[f"phi{k}"] = (state, fingerprint(state))

        for trial in range(1, self.trials + 1):
            psi = random_state(rng, self.bound)
            g = random_local_operation(rng, self.bound)
            image = apply_slocc(g, psi)

            before = evaluate_invariants(ground_form(psi))
            after = evaluate_invariants(ground_form(image))
            for name in INVARIANT_NAMES:
                exact = before[name] == after[name]
                self.invariance_rows.append({
                    'trial': trial, 'invariant': name, 'exact': exact,
                    'before': str(before[name]), 'after': str(after[name]),
                })
                if not exact:
                    logger.error(f"Trial {trial}: {name} changed from {before[name]} to {after[name]}")

            for label, (state, base) in references.items():
                moved = fingerprint(apply_slocc(g, state))
                cells = list(zip(ROWS, base.pattern, moved.pattern))
                cells += [(f"b{s}", a, b) for s, a, b in zip(SLOTS, base.slot_quadratics, moved.slot_quadratics)]
                for row, expected, got in cells:
                    self.covariance_rows.append({
                        'trial': trial, 'state': label, 'covariant': row, 'preserved': expected == got,
                    })
                    if expected != got:
                        logger.error(f"Trial {trial}: {row} on {label} changed under SLOCC")

            logger.debug(f"Trial {trial} done")

        return self.generate_report()

    def run_independence(self, points=None):
        """Jacobian ranks of {D's} and {D's, F} at seeded rational points (plus any given points)"""
        rng = random.Random(self.seed)
        candidates = [(label, psi) for label, psi in (points or [])]
        candidates += [(f"seed{self.seed}#{i + 1}", random_state(rng, self.bound))
                       for i in range(self.jacobian_points)]
        logger.info(f"Starting independence run at {len(candidates)} points")

        self.independence_rows = []
        for label, psi in candidates:
            rank_d = jacobian_rank(D_NAMES, psi)
            rank_df = jacobian_rank(INVARIANT_NAMES, psi)
            self.independence_rows.append({
                'point': label, 'rank_D': rank_d, 'rank_DF': rank_df,
                'independent': rank_d == len(D_NAMES) and rank_df == len(INVARIANT_NAMES),
            })
            logger.debug(f"Point {label}: rank {rank_d} / {rank_df}")

        return self.generate_report()

    def generate_report(self):
        """Summarize the trials run so far"""
        report = {'seed': self.seed, 'trials': self.trials}

        if self.invariance_rows:
            df = pd.DataFrame(self.invariance_rows)
            summary = df.groupby('invariant', sort=False)['exact'].agg(['sum', 'count'])
            report['invariance'] = {
                name: {'exact': int(row['sum']), 'total': int(row['count'])}
                for name, row in summary.iterrows()
            }
            report['invariance_failures'] = df[~df['exact']].to_dict('records')
        if self.covariance_rows:
            df = pd.DataFrame(self.covariance_rows)
            summary = df.groupby('covariant', sort=False)['preserved'].agg(['sum', 'count'])
            report['covariance'] = {
                name: {'preserved': int(row['sum']), 'total': int(row['count'])}
                for name, row in summary.iterrows()
            }
        if self.independence_rows:
            report['independence'] = list(self.independence_rows)

        report['passed'] = self._passed()
        return report

    def _passed(self):
        checks = [row['exact'] for row in self.invariance_rows]
        checks += [row['preserved'] for row in self.covariance_rows]
        checks += [row['independent'] for row in self.independence_rows]
        return all(checks)

    def save_report(self, filepath):
        """Save the trial report as JSON"""
        report = self.generate_report()
        directory = os.path.dirname(filepath)
        if directory:
            os.makedirs(directory, exist_ok=True)
        with open(filepath, 'w') as f:
            json.dump(report, f, indent=2, sort_keys=True, default=str)
        logger.info(f"Trial report saved to {filepath}")
