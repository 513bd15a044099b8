"""Spectral toolkit for 2m-order parabolic stochastic PDEs on the 1-D torus."""

try:
    from . import _spde2m as _core  # installed wheel layout
except ImportError:  # build-tree layout: extension on sys.path
    import _spde2m as _core

__version__ = _core.__version__

enumerate_indices = _core.enumerate_indices
multiplier = _core.multiplier
lambda_star = _core.lambda_star
critical_p = _core.critical_p
differentiate = _core.differentiate
l2_norm = _core.l2_norm
evaluate = _core.evaluate
finiteness = _core.finiteness
closed_form_l2 = _core.closed_form_l2
closed_form_p_moment_odd = _core.closed_form_p_moment_odd
exact_mode = _core.exact_mode
leading_order_coeffs = _core.leading_order_coeffs
simulate_modes = _core.simulate_modes
exact_norm_samples = _core.exact_norm_samples
wiener_increments = _core.wiener_increments
divergence_scan = _core.divergence_scan
lp_omega = _core.lp_omega
holder_report = _core.holder_report
mc_p_moment = _core.mc_p_moment

__all__ = [
    "__version__",
    "enumerate_indices",
    "multiplier",
    "lambda_star",
    "critical_p",
    "differentiate",
    "l2_norm",
    "evaluate",
    "finiteness",
    "closed_form_l2",
    "closed_form_p_moment_odd",
    "exact_mode",
    "leading_order_coeffs",
    "simulate_modes",
    "exact_norm_samples",
    "wiener_increments",
    "divergence_scan",
    "lp_omega",
    "holder_report",
    "mc_p_moment",
]
