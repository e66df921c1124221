"""Reservoir computing on networks of Kuramoto phase oscillators.

A fixed network of coupled phase oscillators, relaxed into a phase-locked
state, serves as the reservoir; input enters by clamping selected node
phases to a rescaled drive signal, and a linear tap-delay readout of the
sampled phase velocities is trained by regularized least squares. Both the
classical all-to-all model and the explosive-synchronization variant
(coupling proportional to |natural frequency| on a random graph) are
supported, along with order-parameter sweeps to locate the critical
coupling where computation works best.
"""

from .dynamics import (CouplingScheme, InputBinding, OscillatorState, System,
                       initial_state, input_scaling, kuramoto_rhs,
                       median_frequency_node, relax_to_locked, run_autonomous,
                       run_driven, sample_initial_phases,
                       sample_natural_frequencies, step_rk4)
from .errors import ConfigurationError, InputRangeError
from .experiments import (ExperimentJob, JobResult, OrderSweepJob,
                          error_sweep_rows, order_sweep_rows, parallel_map,
                          run_experiment_job, run_order_sweep_job)
from .figures import FigureReport, reproduce_figure
from .order_params import (OrderParamSample, VarianceConfig, detect_critical,
                           kuramoto_r, sweep, variance_r)
from .pipeline import FitReport, Split, run_experiment
from .readout import (ReadoutConfig, ReadoutModel, build_features, evaluate,
                      fit, load_model, save_model)
from .series import TimeSeries, series_from_csv
from .signals import lorenz_series, mackey_glass_series, multisine_series
from .tasks import TaskSpec, task1_target, task2_target
from .topology import (NetworkSpec, complete_graph, connected_components,
                       erdos_renyi, from_edges, load_edge_list, save_edge_list)

__version__ = "0.1.0"
