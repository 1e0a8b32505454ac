"""Domain types shared by the whole simulator.

Everything here is an immutable value object: scenarios are validated once
and can then be shared freely between policies, engine runs and reports.
"""

from dataclasses import dataclass
from enum import Enum
from typing import Optional

POLICIES = ("fcfs", "rr", "gpa")


class ExecutionMode(Enum):
    """How a VM serves its queue: one task at a time, or all at once."""

    SPACE_SHARED = "space_shared"
    TIME_SHARED = "time_shared"


class ValidationError(ValueError):
    """Raised when a scenario breaks one or more model invariants."""

    def __init__(self, violations: list[str]):
        self.violations = list(violations)
        super().__init__("; ".join(self.violations))


class CapacityError(RuntimeError):
    """Raised when a VM cannot be placed on any host."""


@dataclass(frozen=True)
class Cloudlet:
    """One task: `length` is total work in MI (millions of instructions)."""

    id: int
    length: float
    arrival_index: int
    pe_count: int = 1


@dataclass(frozen=True)
class Vm:
    """A virtual machine rated in MIPS; `host_id` is set by provisioning."""

    id: int
    mips: float
    ram_mb: int
    pe_count: int = 1
    host_id: Optional[int] = None


@dataclass(frozen=True)
class Host:
    id: int
    datacenter_id: int
    total_mips: float
    ram_mb: int
    storage_mb: int


@dataclass(frozen=True)
class Datacenter:
    id: int
    hosts: tuple[Host, ...]


@dataclass(frozen=True)
class Scenario:
    """A complete simulation input: infrastructure, workload and policy.

    `vms` are in creation order and `cloudlets` in arrival order; both
    orders are semantically meaningful (cyclic dispatch follows them).
    `execution_mode` overrides the policy's default mode when set.
    """

    datacenters: tuple[Datacenter, ...]
    vms: tuple[Vm, ...]
    cloudlets: tuple[Cloudlet, ...]
    policy: str
    execution_mode: Optional[ExecutionMode] = None

    def hosts(self) -> tuple[Host, ...]:
        """All hosts, in datacenter order then host order."""
        return tuple(h for dc in self.datacenters for h in dc.hosts)

    def vm_by_id(self, vm_id: int) -> Vm:
        for vm in self.vms:
            if vm.id == vm_id:
                return vm
        raise KeyError(f"unknown vm id {vm_id}")

    def cloudlet_by_id(self, cloudlet_id: int) -> Cloudlet:
        for cl in self.cloudlets:
            if cl.id == cloudlet_id:
                return cl
        raise KeyError(f"unknown cloudlet id {cloudlet_id}")

    def host_by_id(self, host_id: int) -> Host:
        for host in self.hosts():
            if host.id == host_id:
                return host
        raise KeyError(f"unknown host id {host_id}")

    def with_policy(self, policy: str) -> "Scenario":
        """Same scenario rebound to another policy."""
        return Scenario(self.datacenters, self.vms, self.cloudlets,
                        policy, self.execution_mode)


@dataclass(frozen=True)
class AssignmentPlan:
    """Ordered cloudlet -> VM mapping; per-VM queue order follows entry order."""

    entries: tuple[tuple[int, int], ...]

    def vm_queues(self) -> dict[int, list[int]]:
        """Cloudlet ids queued per VM, in plan order."""
        queues: dict[int, list[int]] = {}
        for cloudlet_id, vm_id in self.entries:
            queues.setdefault(vm_id, []).append(cloudlet_id)
        return queues


@dataclass(frozen=True)
class CloudletRecord:
    """Execution outcome of one cloudlet (all times in seconds)."""

    cloudlet_id: int
    vm_id: int
    datacenter_id: int
    cpu_time: float
    start_time: float
    finish_time: float


@dataclass(frozen=True)
class VmUsage:
    """Per-VM accounting attached to a result."""

    vm_id: int
    datacenter_id: int
    mips: float
    busy_time: float


@dataclass(frozen=True)
class SimulationResult:
    mode: ExecutionMode
    records: tuple[CloudletRecord, ...]
    vm_usage: tuple[VmUsage, ...]

    @property
    def mean_cpu_time(self) -> float:
        return sum(r.cpu_time for r in self.records) / len(self.records)

    @property
    def makespan(self) -> float:
        return max(r.finish_time for r in self.records)


def scenario_violations(scenario: Scenario) -> list[str]:
    """All invariant violations in `scenario`, one message per offender.

    Pure and idempotent; an empty list means the scenario is valid.
    """
    problems: list[str] = []

    if not scenario.cloudlets:
        problems.append("empty cloudlet set")
    if not scenario.vms:
        problems.append("empty vm set")
    if not scenario.datacenters:
        problems.append("no datacenters")
    if scenario.policy not in POLICIES:
        problems.append(f"unknown policy {scenario.policy!r}")

    seen_dc: set[int] = set()
    seen_host: set[int] = set()
    for dc in scenario.datacenters:
        if dc.id in seen_dc:
            problems.append(f"duplicate datacenter id {dc.id}")
        seen_dc.add(dc.id)
        if not dc.hosts:
            problems.append(f"datacenter {dc.id} has no hosts")
        for host in dc.hosts:
            if host.id in seen_host:
                problems.append(f"duplicate host id {host.id}")
            seen_host.add(host.id)
            if host.datacenter_id != dc.id:
                problems.append(
                    f"host {host.id} declares datacenter {host.datacenter_id} "
                    f"but sits in datacenter {dc.id}")
            if host.total_mips <= 0:
                problems.append(f"non-positive mips on host {host.id}")
            if host.ram_mb <= 0:
                problems.append(f"non-positive ram on host {host.id}")
            if host.storage_mb <= 0:
                problems.append(f"non-positive storage on host {host.id}")

    seen_vm: set[int] = set()
    for vm in scenario.vms:
        if vm.id <= 0:
            problems.append(f"non-positive vm id {vm.id}")
        if vm.id in seen_vm:
            problems.append(f"duplicate vm id {vm.id}")
        seen_vm.add(vm.id)
        if vm.mips <= 0:
            problems.append(f"non-positive mips on vm {vm.id}")
        if vm.ram_mb <= 0:
            problems.append(f"non-positive ram on vm {vm.id}")
        if vm.pe_count <= 0:
            problems.append(f"non-positive pe count on vm {vm.id}")
        if vm.host_id is not None and vm.host_id not in seen_host:
            problems.append(f"vm {vm.id} references unknown host {vm.host_id}")

    seen_cl: set[int] = set()
    arrivals: list[int] = []
    for cl in scenario.cloudlets:
        if cl.id <= 0:
            problems.append(f"non-positive cloudlet id {cl.id}")
        if cl.id in seen_cl:
            problems.append(f"duplicate cloudlet id {cl.id}")
        seen_cl.add(cl.id)
        if cl.length <= 0:
            problems.append(f"non-positive length on cloudlet {cl.id}")
        if cl.pe_count <= 0:
            problems.append(f"non-positive pe count on cloudlet {cl.id}")
        arrivals.append(cl.arrival_index)

    if arrivals and sorted(arrivals) != list(range(len(arrivals))):
        problems.append("arrival indices do not form a contiguous 0..n-1 sequence")

    return problems


def validate_scenario(scenario: Scenario) -> Scenario:
    """Return `scenario` unchanged if valid, else raise ValidationError."""
    problems = scenario_violations(scenario)
    if problems:
        raise ValidationError(problems)
    return scenario


def validate_plan(scenario: Scenario, plan: AssignmentPlan) -> AssignmentPlan:
    """Check a plan covers every cloudlet exactly once on existing VMs."""
    problems: list[str] = []
    vm_ids = {vm.id for vm in scenario.vms}
    planned = [cid for cid, _ in plan.entries]
    expected = sorted(cl.id for cl in scenario.cloudlets)
    if sorted(planned) != expected:
        problems.append("plan entries are not a permutation of the cloudlets")
    for cloudlet_id, vm_id in plan.entries:
        if vm_id not in vm_ids:
            problems.append(f"plan assigns cloudlet {cloudlet_id} to unknown vm {vm_id}")
    if problems:
        raise ValidationError(problems)
    return plan
