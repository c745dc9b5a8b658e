"""Bidirectional teleportation through correlated, time-dependent noise."""

# metrics must load before bqt: bqt pulls the closed-form negativities from it
from . import constants, errors, qmath, noise, metrics, bqt  # noqa: F401
from .bqt import (
    A_TO_B,
    B_TO_A,
    CLOSED_FORM,
    ORACLE,
    ProtocolSettings,
    PureQubit,
    TeleportedState,
    TriggerSetting,
    make_settings,
    measurement_probability,
    oracle_teleport,
    residual_state,
    resource_state,
    teleport_output,
    teleported_bloch_ad,
    teleported_bloch_dephasing,
    teleported_state,
)
from .noise import (
    ADTimeModel,
    CorrelatedChannel,
    DephasingTimeModel,
    ad_p_of_t,
    amplitude_damping_channel,
    apply_correlated,
    dephasing_channel,
    dephasing_p_of_t,
)

__version__ = "0.1.0"
