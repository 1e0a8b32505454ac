"""Deterministic cloud task-scheduling simulator.

Scenarios (datacenters, hosts, VMs, cloudlets) are assigned to VMs by a
broker policy — fcfs, rr, or gpa — and executed either space-shared
(sequential per VM) or time-shared (egalitarian processor sharing).
Everything is a pure function of the scenario, so runs replay exactly.
"""

from .engine import (
    execute_plan,
    provision_vms,
    ps_finish_times,
    run_space_shared,
    run_time_shared,
)
from .metrics import (
    PolicyReport,
    VmLoad,
    compare,
    mean_cpu_from_plan,
    summarize,
)
from .model import (
    POLICIES,
    AssignmentPlan,
    CapacityError,
    Cloudlet,
    CloudletRecord,
    Datacenter,
    ExecutionMode,
    Host,
    Scenario,
    SimulationResult,
    ValidationError,
    Vm,
    VmUsage,
    scenario_violations,
    validate_plan,
    validate_scenario,
)
from .policies import (
    PolicyOutcome,
    assign,
    fcfs_assign,
    gpa_assign,
    rank_cloudlets_by_length,
    rank_vms_by_mips,
    rr_assign,
)
from .workload import (
    BUILTIN_NAMES,
    GeneratorSpec,
    Lcg64,
    ScenarioFormatError,
    builtin_scenario,
    derive_seed,
    generate,
    load_scenario,
    save_scenario,
    write_scenario,
)

__version__ = "0.1.0"

__all__ = [
    "AssignmentPlan",
    "BUILTIN_NAMES",
    "CapacityError",
    "Cloudlet",
    "CloudletRecord",
    "Datacenter",
    "ExecutionMode",
    "GeneratorSpec",
    "Host",
    "Lcg64",
    "POLICIES",
    "PolicyOutcome",
    "PolicyReport",
    "Scenario",
    "ScenarioFormatError",
    "SimulationResult",
    "ValidationError",
    "Vm",
    "VmLoad",
    "VmUsage",
    "assign",
    "builtin_scenario",
    "compare",
    "derive_seed",
    "execute_plan",
    "fcfs_assign",
    "generate",
    "gpa_assign",
    "load_scenario",
    "mean_cpu_from_plan",
    "provision_vms",
    "ps_finish_times",
    "rank_cloudlets_by_length",
    "rank_vms_by_mips",
    "rr_assign",
    "run_space_shared",
    "run_time_shared",
    "save_scenario",
    "scenario_violations",
    "summarize",
    "validate_plan",
    "validate_scenario",
    "write_scenario",
]
