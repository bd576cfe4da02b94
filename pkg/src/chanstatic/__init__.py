"""Narrowband multipath simulator for channel-static (counter-moving) antennas."""
from ._kernels import BACKEND
from .geometry import (SPEED_OF_LIGHT, Carrier, ComplexGain, DomainError, GeometryError, Vec3,
                       distance, wavelength)
from .metrics import (TraceSummary, amplitude_span_db, phase_excursion_deg, summarize,
                      unwrap_phase)
from .motion import (CompensationMode, Rail, SteppedTrajectory, antenna_position,
                     platform_displacement, static_budget_s)
from .propagation import (Environment, PathKind, PropagationPath, Scatterer, channel_gain,
                          enumerate_paths, path_doppler)
from .scenario import (ChannelTrace, Parasitic, Scenario, make_anechoic, make_office, run_scenario,
                       run_triplet)

__version__ = "0.1.0"
