"""Frameness monotones for states under a U(1) charge superselection rule."""

from .channels import (
    ChannelReport,
    Ensemble,
    U1Channel,
    U1Kraus,
    apply_channel_density,
    apply_channel_pure,
    apply_kraus_pure,
    channel_from_dict,
    channel_to_dict,
    load_channel,
    random_channel,
    validate_channel,
)
from .convexroof import (
    RoofConfig,
    RoofResult,
    brute_force_roof,
    convex_roof,
    decomposition_from_map,
    fof_via_concurrence,
)
from .errors import (
    BadK,
    BadProbability,
    EmptyShiftSet,
    FramenessError,
    InvalidDensity,
    LengthMismatch,
    MixedOutcomeGroup,
    NonHermitianInput,
    NotIsometry,
    NotNormalized,
    NotPositive,
    NotProbabilityVector,
    OvercompleteChannel,
    RankMismatch,
    ShiftOutOfRange,
    WrongDimension,
)
from .monotones import (
    AppendixResult,
    MonotoneId,
    appendix_closed_form,
    concurrence_pure,
    elementary_symmetric,
    entropy_of_frameness,
    evaluate_pure,
    optimal_qubit_decomposition,
    preconcurrence_matrix,
    qubit_R_eigs,
    qubit_concurrence,
    qubit_fof,
    takagi,
    variance_pure,
    vidal_f,
)
from .numerics import (
    hermitian_eig,
    is_hermitian,
    is_psd,
    is_unit_trace,
    product_eig_sqrt,
    psd_sqrt,
    validate_density,
)
from .states import (
    BipartitePureState,
    NumberSpectrum,
    SectoredPureState,
    StandardState,
    density_from_dict,
    density_to_dict,
    is_gapless,
    load_density,
    load_state,
    majorizes,
    purify,
    random_density_matrix,
    random_standard_state,
    spectrum,
    standard_form,
    state_from_dict,
    twirl,
)

__version__ = "0.1.0"

__all__ = [
    "AppendixResult",
    "BadK",
    "BadProbability",
    "BipartitePureState",
    "ChannelReport",
    "EmptyShiftSet",
    "Ensemble",
    "FramenessError",
    "InvalidDensity",
    "LengthMismatch",
    "MixedOutcomeGroup",
    "MonotoneId",
    "NonHermitianInput",
    "NotIsometry",
    "NotNormalized",
    "NotPositive",
    "NotProbabilityVector",
    "NumberSpectrum",
    "OvercompleteChannel",
    "RankMismatch",
    "RoofConfig",
    "RoofResult",
    "SectoredPureState",
    "ShiftOutOfRange",
    "StandardState",
    "U1Channel",
    "U1Kraus",
    "WrongDimension",
    "appendix_closed_form",
    "apply_channel_density",
    "apply_channel_pure",
    "apply_kraus_pure",
    "brute_force_roof",
    "channel_from_dict",
    "channel_to_dict",
    "concurrence_pure",
    "convex_roof",
    "decomposition_from_map",
    "density_from_dict",
    "density_to_dict",
    "elementary_symmetric",
    "entropy_of_frameness",
    "evaluate_pure",
    "fof_via_concurrence",
    "hermitian_eig",
    "is_gapless",
    "is_hermitian",
    "is_psd",
    "is_unit_trace",
    "load_channel",
    "load_density",
    "load_state",
    "majorizes",
    "optimal_qubit_decomposition",
    "preconcurrence_matrix",
    "product_eig_sqrt",
    "psd_sqrt",
    "purify",
    "qubit_R_eigs",
    "qubit_concurrence",
    "qubit_fof",
    "random_channel",
    "random_density_matrix",
    "random_standard_state",
    "spectrum",
    "standard_form",
    "state_from_dict",
    "takagi",
    "twirl",
    "validate_density",
    "variance_pure",
    "vidal_f",
]
