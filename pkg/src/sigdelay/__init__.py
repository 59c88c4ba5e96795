"""Exact binary-signal algebra, delay conditions and circuit simulation."""

from .stepfn import (
    Interval,
    IntervalSet,
    Pulse,
    StepFunction,
    Time,
    as_signal,
    as_time,
    chi,
    chi_point,
    parse_signal_file,
    parse_signal_literal,
    format_signal_literal,
    pulses,
    window,
    window_inf,
    window_inf_halfopen,
    window_sup,
    window_sup_halfopen,
)
from .conditions import (
    Aic,
    AicParams,
    AicPrime,
    Baidc,
    Bdc,
    BdcParams,
    BdcPrime,
    Bridc,
    CheckReport,
    Dbridc,
    DelayModel,
    Fixed,
    InconsistentModelError,
    Ric,
    RicParams,
    RicPrime,
    Sc,
    SdbridcPrime,
    Violation,
    WindowAnd,
    WindowOr,
    bdc_deterministic,
    bdc_includes,
    bdc_symmetric,
    cc_baidc,
    cc_bdc,
    cc_bridc,
    check_constancy,
    check_membership,
    check_sc,
    compose_bdc,
    convert_minmax,
    format_model,
    parse_model,
    transmission_delay,
    zeno_free,
)
from .solvers import (
    BudgetExceededError,
    GridSpec,
    SampleRetryError,
    alternating_witness,
    bdc_bounds,
    enumerate_grid_solutions,
    sample_bdc,
    sample_bridc,
    solve_dbridc,
    solve_fixed,
    solve_sdbridc,
)
from .circuit import (
    DelayElement,
    EventBudgetError,
    Gate,
    Netlist,
    ValidationError,
    WaveformSet,
    builtin,
    check_trace_conformance,
    format_netlist,
    parse_netlist,
    simulate,
    validate,
)
from .vcd import export_vcd, import_vcd
