"""Quantum search for feasible job schedules on a dense statevector simulator.

The package implements both search pipelines end to end: the naive full
search over every data pattern, and the reduced search that first prepares
— with a coined-walk construction — the superposition of per-machine feasible
paths only, leaving just the resource constraints to the oracle.
"""

from .analysis import (GATE_RULES_VERSION, RatioRow, ResourceReport,
                       basic_gate_cost, gate_count_report, qubit_report,
                       qubit_totals, ratio_curves, ratio_rows_csv)
from .circuits import (PreparedPipeline, build_initial_reflection,
                       build_marked_reflection, build_path_flags,
                       build_pipeline, build_resource_flags, build_uniform_prep,
                       build_walk_prep, dump_circuit)
from .errors import CapacityError, LayoutError, ValidationError, WiringError
from .problem import (COIN_FRESH, COIN_REUSE, FULL, REDUCED, Instance,
                      QubitLayout, Schedule, SpaceSizes, build_layout,
                      count_solutions, count_solutions_naive, decode_basis,
                      encode_schedule, enumerate_feasible_paths,
                      is_feasible_path, job_widths, load_instance, marked_mask,
                      new_instance, satisfies_resources, space_sizes)
from .qarith import (RegisterSpan, add_constant, add_register,
                     controlled_add_constant, plus_one, qft, range_check,
                     twos_complement)
from .search import (AngleSequence, SearchTrace, fixed_point_angles,
                     min_overlap, prep_support_report, required_rounds,
                     run_fixed_point, run_grover, run_search, verify_samples)
from .statevector import (MAX_QUBITS, Circuit, GateOp, StateVector, apply,
                          apply_circuit, init_state, low_wire_probabilities,
                          marked_probability, sample)

__all__ = [name for name in dir() if not name.startswith("_")]
