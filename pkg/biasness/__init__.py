#! /usr/bin/env python
# -*- encoding: utf-8 -*-

"""
Biasness of qubit noise channels and the entanglement that local unitaries
can save from them.

Implementation notes:

    * Channels are Kraus operator lists at a fixed noise strength p. Local
    noise on two qubits is always the same channel on both sides.

    * Entanglement is measured with the concurrence, and every optimization
    runs over pure states, with seeded multi-start Nelder-Mead searches. The
    same seed always gives the same numbers, down to the last bit.
"""

__copyright__ = "Copyright 2026 The biasness developers"
__license__ = "The GNU GPL v3 or later"
__version__ = "0.1"

from .channels import (
    FAMILIES,
    ChannelFamily,
    KrausChannel,
    amplitude_damping,
    apply,
    bit_flip,
    bit_phase_flip,
    channel_distance,
    choi_state,
    covariance_defect,
    depolarizing,
    get_family,
    identity_channel,
    local_apply,
    phase_flip,
)
from .entanglement import concurrence, spin_flip
from .measures import (
    OptimizerPair,
    cds,
    ddc,
    decompose_max_p1,
    eb_bounds,
    entanglement_capacity,
    ic,
    saved_entanglement,
)
from .optimizer import OptimizerConfig, grid_oracle, multi_start_maximize
from .states import DensityMatrix, PureState
from .sweep import RunConfig, SweepPoint, run_sweep

__all__ = (
    "amplitude_damping",
    "apply",
    "bit_flip",
    "bit_phase_flip",
    "cds",
    "channel_distance",
    "ChannelFamily",
    "choi_state",
    "concurrence",
    "covariance_defect",
    "ddc",
    "decompose_max_p1",
    "DensityMatrix",
    "depolarizing",
    "eb_bounds",
    "entanglement_capacity",
    "FAMILIES",
    "get_family",
    "grid_oracle",
    "ic",
    "identity_channel",
    "KrausChannel",
    "local_apply",
    "multi_start_maximize",
    "OptimizerConfig",
    "OptimizerPair",
    "phase_flip",
    "PureState",
    "RunConfig",
    "run_sweep",
    "saved_entanglement",
    "spin_flip",
    "SweepPoint",
)
