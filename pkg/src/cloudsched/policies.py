"""Broker policies mapping cloudlets to VMs.

Three policies, each a pure function of the scenario:

* fcfs - arrival order dealt cyclically over VMs, run space-shared;
* rr   - same cyclic deal over the VM ring, run time-shared;
* gpa  - longest cloudlets first onto the VM with the earliest estimated
         finish, run space-shared.

All tie-breaks are total and documented, so each plan is deterministic.
"""

from dataclasses import dataclass

from .model import (
    AssignmentPlan,
    Cloudlet,
    ExecutionMode,
    Scenario,
    Vm,
)


@dataclass(frozen=True)
class PolicyOutcome:
    """A plan plus its execution mode and the priority orders behind it."""

    plan: AssignmentPlan
    mode: ExecutionMode
    vm_ranking: tuple[int, ...]
    cloudlet_ranking: tuple[int, ...]


def rank_vms_by_mips(vms: tuple[Vm, ...]) -> list[int]:
    """VM ids by descending MIPS; ties broken by ascending id."""
    return [vm.id for vm in sorted(vms, key=lambda v: (-v.mips, v.id))]


def rank_cloudlets_by_length(cloudlets: tuple[Cloudlet, ...]) -> list[int]:
    """Cloudlet ids by descending length; ties broken by arrival order."""
    ranked = sorted(cloudlets, key=lambda c: (-c.length, c.arrival_index))
    return [cl.id for cl in ranked]


def _by_arrival(scenario: Scenario) -> list[Cloudlet]:
    return sorted(scenario.cloudlets, key=lambda c: c.arrival_index)


def _cyclic_plan(scenario: Scenario) -> AssignmentPlan:
    """Cloudlet k (arrival order) -> VM k mod m (declared VM order)."""
    vms = scenario.vms
    entries = tuple(
        (cl.id, vms[k % len(vms)].id)
        for k, cl in enumerate(_by_arrival(scenario))
    )
    return AssignmentPlan(entries)


def fcfs_assign(scenario: Scenario) -> PolicyOutcome:
    """First-come-first-serve: cyclic deal in creation order, space-shared."""
    return PolicyOutcome(
        plan=_cyclic_plan(scenario),
        mode=ExecutionMode.SPACE_SHARED,
        vm_ranking=tuple(vm.id for vm in scenario.vms),
        cloudlet_ranking=tuple(cl.id for cl in _by_arrival(scenario)),
    )


def rr_assign(scenario: Scenario) -> PolicyOutcome:
    """Round robin: cyclic deal over the VM ring, time-shared.

    The ring is the scenario's declared VM order; reorder the VMs in the
    scenario to change the ring.
    """
    return PolicyOutcome(
        plan=_cyclic_plan(scenario),
        mode=ExecutionMode.TIME_SHARED,
        vm_ranking=tuple(vm.id for vm in scenario.vms),
        cloudlet_ranking=tuple(cl.id for cl in _by_arrival(scenario)),
    )


def gpa_assign(scenario: Scenario) -> PolicyOutcome:
    """Greedy list scheduling: longest cloudlet to earliest estimated finish.

    Cloudlets are processed longest-first; each goes to the VM minimizing
    (already assigned work + length) / mips, ties broken by higher MIPS
    then lower VM id, and the chosen VM's assigned work is updated. With
    every VM empty this sends the first cloudlet to the fastest VM.
    """
    cloudlets = {cl.id: cl for cl in scenario.cloudlets}
    ranked = rank_cloudlets_by_length(scenario.cloudlets)
    assigned_work = {vm.id: 0.0 for vm in scenario.vms}

    entries = []
    for cloudlet_id in ranked:
        length = cloudlets[cloudlet_id].length
        best = min(
            scenario.vms,
            key=lambda vm: ((assigned_work[vm.id] + length) / vm.mips,
                            -vm.mips, vm.id),
        )
        entries.append((cloudlet_id, best.id))
        assigned_work[best.id] += length

    return PolicyOutcome(
        plan=AssignmentPlan(tuple(entries)),
        mode=ExecutionMode.SPACE_SHARED,
        vm_ranking=tuple(rank_vms_by_mips(scenario.vms)),
        cloudlet_ranking=tuple(ranked),
    )


_POLICY_FNS = {
    "fcfs": fcfs_assign,
    "rr": rr_assign,
    "gpa": gpa_assign,
}


def assign(scenario: Scenario) -> PolicyOutcome:
    """Dispatch to the scenario's policy, applying any mode override."""
    try:
        policy_fn = _POLICY_FNS[scenario.policy]
    except KeyError:
        raise ValueError(f"unknown policy {scenario.policy!r}") from None
    outcome = policy_fn(scenario)
    if scenario.execution_mode is not None:
        outcome = PolicyOutcome(outcome.plan, scenario.execution_mode,
                                outcome.vm_ranking, outcome.cloudlet_ranking)
    return outcome
