"""
Lab package.
Generic-change predictions, seeded experiment campaigns and the gamma determinant identities.
"""
from .appendix import even_alternating_pair, odd_alternating_pair, verify_appendix
from .experiment import ExperimentOrchestrator, run_experiment
from .predictions import classify_eigenvalue, pair_up, predict, property_P

__all__ = [
    'ExperimentOrchestrator',
    'classify_eigenvalue',
    'even_alternating_pair',
    'odd_alternating_pair',
    'pair_up',
    'predict',
    'property_P',
    'run_experiment',
    'verify_appendix',
]
