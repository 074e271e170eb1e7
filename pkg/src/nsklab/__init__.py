"""Numerical laboratory for 1-D compressible fluids with internal capillarity.

Builds viscous contact waves, smooth rarefaction fans, and their composite;
evolves perturbed data under the full capillary system in Lagrangian
coordinates; and measures the stability diagnostics (energy functionals,
ansatz residuals, decay rates, uniform bounds) the analysis predicts.
"""

from .assumptions import AssumptionReport, check_assumptions
from .burgers import BurgersWave, burgers_eval
from .coefficients import (CoefficientModel, constant_model, default_model,
                           make_coefficient_model, power_law_model)
from .composite import CompositeWave, WaveFields, build_composite_wave, build_contact_wave
from .config import RunConfig, load_config, parse_config
from .contact import ContactWave, SelfSimilarProfile, solve_selfsimilar
from .diagnostics import (DiagnosticsRecord, HeatKernelPair, basic_energy,
                          composite_residuals, contact_residuals, decay_report,
                          dissipation, fit_decay, huang_estimate_terms,
                          kanel_functionals)
from .errors import (BlowUpError, BracketError, ConfigError, ConvergenceError,
                     DomainError, ModelViolationError, NSKLabError, PositivityError)
from .grid import Grid, d1, d2, d3, integrate, l2_norm, sup_norm
from .riemann import (EndStates, MiddleStates, RarefactionWave, ends_from_middle,
                      solve_middle_states)
from .runner import run_scenario
from .solver import SolverSettings, State, capillary_work, korteweg_stress, rhs, run, step
from .thermo import (ThermoParams, effective_heat_capacity, entropy, lambda_pm,
                     phi_entropy, pressure, pressure_from_entropy, temp_from_entropy)

__version__ = "0.1.0"
