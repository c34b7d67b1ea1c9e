"""Measurement-induced entanglement laboratory (Python bindings)."""

from ._mielab import (  # noqa: F401
    bound_chain,
    count_rooted_polygons,
    count_rooted_walks,
    mie_monte_carlo,
    predicted_swap_moments,
    run_cli,
    run_criterion,
    sebd_sample,
    swap_trick_moments,
    thresholds,
    tripartite_experiment,
    zsaw,
)

__all__ = [
    "bound_chain",
    "count_rooted_polygons",
    "count_rooted_walks",
    "mie_monte_carlo",
    "predicted_swap_moments",
    "run_cli",
    "run_criterion",
    "sebd_sample",
    "swap_trick_moments",
    "thresholds",
    "tripartite_experiment",
    "zsaw",
]
