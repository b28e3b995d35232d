"""Irreversible entropy production of a thermally initialized, driven qubit."""

from ._core import (
    ConfigError,
    ConvergenceError,
    DriveProtocol,
    SweepConfig,
    SweepRow,
    ThermoRecord,
    analyze_protocol,
    average_work,
    bures_length,
    check_invariants,
    clausius_bound,
    coherence,
    dephase,
    drive_hamiltonian,
    effective_temperature,
    emit_csv,
    emit_svg_plot,
    entropy_decomposition,
    evolve,
    free_energy_difference,
    gibbs_state,
    irreversible_entropy,
    overlap_fidelity,
    parse_config,
    partition_function,
    pauli,
    propagator,
    relative_entropy,
    run_sweep,
    spectral_decompose,
    tpm_work_distribution,
    uhlmann_fidelity,
    von_neumann_entropy,
    wootters_length,
)

CSV_HEADER = (
    "nu_f_hz,tau_s,avg_work_hz,delta_f_hz,s_irr_work,s_irr_relent,coherence,"
    "population,bures_length,bound,jarzynski_lhs,jarzynski_rhs"
)

__version__ = "0.1.0"
