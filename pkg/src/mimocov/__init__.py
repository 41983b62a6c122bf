"""Coverage probability of multi-antenna Poisson wireless networks.

The coverage probability of a maximum-ratio combined link with M antennas
reduces to the head of a single power series built from the interference
geometry; this package evaluates that series exactly (two independent
routes), simulates the same networks from scratch for validation, and
exposes the structural consequences (density response, per-antenna decay,
closed-form coefficient identities).
"""

from .errors import (
    ConfigurationError,
    CoverageRangeError,
    DomainError,
    MimocovError,
    NumericalError,
    RootNotFoundError,
    SingularityError,
    StatisticalError,
    UnsupportedConfigError,
    ValidationError,
)
from .model import (
    ADHOC,
    CELLULAR,
    METHOD_MATRIX,
    METHOD_MC,
    METHOD_RECURSION,
    CoverageEstimate,
    GeneralSignalPdf,
    InterfererGainSpec,
    NetworkScenario,
    ScenarioBundle,
    SignalGainSpec,
    bundle_from_params,
    load_config,
    parse_config,
    validate,
)
from .analytic import (
    EntrySequence,
    adhoc_coverage,
    adhoc_entries,
    adhoc_mu,
    cellular_coverage,
    cellular_entries,
    coverage,
    coverage_general_pdf,
    coverage_non_poisson,
)
from .insights import (
    DecayDiagnostics,
    DensityProfile,
    ImprovementSequence,
    PeakBound,
    adhoc_peak_bound,
    adhoc_pbar_bessel,
    adhoc_pbar_closed_form,
    cellular_decay_rate,
    density_profile,
    improvement_sequence,
    outage_decay_check,
)
from .montecarlo import SimConfig, auto_window, simulate, simulate_adhoc, simulate_cellular

__version__ = "0.1.0"

__all__ = [
    "ADHOC",
    "CELLULAR",
    "METHOD_MATRIX",
    "METHOD_MC",
    "METHOD_RECURSION",
    "ConfigurationError",
    "CoverageEstimate",
    "CoverageRangeError",
    "DecayDiagnostics",
    "DensityProfile",
    "DomainError",
    "EntrySequence",
    "GeneralSignalPdf",
    "ImprovementSequence",
    "InterfererGainSpec",
    "MimocovError",
    "NetworkScenario",
    "NumericalError",
    "PeakBound",
    "RootNotFoundError",
    "ScenarioBundle",
    "SignalGainSpec",
    "SimConfig",
    "SingularityError",
    "StatisticalError",
    "UnsupportedConfigError",
    "ValidationError",
    "adhoc_coverage",
    "adhoc_entries",
    "adhoc_mu",
    "adhoc_pbar_bessel",
    "adhoc_pbar_closed_form",
    "adhoc_peak_bound",
    "auto_window",
    "bundle_from_params",
    "cellular_coverage",
    "cellular_decay_rate",
    "cellular_entries",
    "coverage",
    "coverage_general_pdf",
    "coverage_non_poisson",
    "density_profile",
    "improvement_sequence",
    "load_config",
    "outage_decay_check",
    "parse_config",
    "simulate",
    "simulate_adhoc",
    "simulate_cellular",
    "validate",
]
