from .drive_spec import DriveSpec, load_sampled_drive, monotone_segments
from .frames import (
    AdiabaticFrame,
    PictureContext,
    amplitudes_first_order,
    amplitudes_from_magnus,
    build_adiabatic,
    build_picture,
    build_region1,
    build_region2,
    classify_region,
    dynamical_phase,
    physical_propagator,
)
