"""qmem: dynamics, efficiency and bandwidth of adiabatic single-emitter
quantum memories, plus cavity design numbers for concrete defect materials."""

from .adiabatic import (AdiabaticFrame, DarkStateDecay, adiabatic_basis,
                        asymptotic_dark_population, dark_decay_solution,
                        mixing_angles, project_to_adiabatic)
from .analysis import (AbsorptionCurve, EfficiencyResult, SweepResult,
                       bandwidth_physical, dephasing_sensitivity, detuning_scan,
                       efficiency_sweep, extract_hwhm, gaussian_write_model,
                       reading_efficiency, stirap_benchmark,
                       stirap_transfer_probability, writing_efficiency)
from .errors import ConfigError, NumericalFailure
from .integrate import (TimeWindow, Trajectory, adiabatic_window, lindblad_rhs,
                        propagate, sigmoid_crossing_time, trajectory_csv,
                        transfer_window)
from .linalg import (EigenDecomposition, dagger, expectation, hermitian_eigen,
                     projector, pure_state_density, validate_density_matrix)
from .materials import (CavitySpec, DefectRecord, MemoryDesignReport,
                        cavity_volume, coupling_constant, design_report,
                        kappa_from_quality, load_builtin_defects, load_defects,
                        quality_factor, resonant_wavelength)
from .model import (Constant, DecayRates, Gaussian, LambdaModel, PulseShape,
                    Sigmoid, model_from_config, model_from_json, pulse_value)

__version__ = "0.1.0"
