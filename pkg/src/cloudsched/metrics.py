"""Aggregation of simulation results into comparable reports.

Space-shared runs are compared on mean CPU (service) time, time-shared
runs on mean completion time; a report carries both so either view can be
read off directly. Nothing here rounds - formatting happens at output.
"""

from dataclasses import dataclass

from .model import AssignmentPlan, ExecutionMode, Scenario, SimulationResult


@dataclass(frozen=True)
class VmLoad:
    vm_id: int
    busy_time: float
    utilization: float


@dataclass(frozen=True)
class PolicyReport:
    policy: str
    mode: ExecutionMode
    n_cloudlets: int
    mean_cpu_time: float
    mean_completion_time: float
    makespan: float
    vm_loads: tuple[VmLoad, ...]
    total_work: float

    @property
    def headline_mean(self) -> float:
        """The comparison metric: CPU time when space-shared, completion
        time when time-shared."""
        if self.mode is ExecutionMode.SPACE_SHARED:
            return self.mean_cpu_time
        return self.mean_completion_time

    @property
    def mean_utilization(self) -> float:
        return sum(v.utilization for v in self.vm_loads) / len(self.vm_loads)


def summarize(result: SimulationResult, policy: str = "") -> PolicyReport:
    """Aggregate one run into a PolicyReport."""
    if not result.records:
        raise ValueError("empty result")
    n = len(result.records)
    makespan = result.makespan
    loads = tuple(
        VmLoad(u.vm_id, u.busy_time, u.busy_time / makespan)
        for u in result.vm_usage
    )
    return PolicyReport(
        policy=policy,
        mode=result.mode,
        n_cloudlets=n,
        mean_cpu_time=result.mean_cpu_time,
        mean_completion_time=sum(r.finish_time for r in result.records) / n,
        makespan=makespan,
        vm_loads=loads,
        total_work=sum(u.busy_time * u.mips for u in result.vm_usage),
    )


def mean_cpu_from_plan(scenario: Scenario, plan: AssignmentPlan) -> float:
    """Mean service time computed straight from the plan, bypassing the
    engine; cross-checks record-derived means for space-shared policies."""
    cloudlets = {cl.id: cl for cl in scenario.cloudlets}
    mips = {vm.id: vm.mips for vm in scenario.vms}
    total = sum(cloudlets[cid].length / mips[vid] for cid, vid in plan.entries)
    return total / len(plan.entries)


def compare(reports: list[PolicyReport]) -> list[dict]:
    """Side-by-side rows, with relative improvement vs the first report.

    Improvement is on the headline mean: positive means this policy beat
    the first listed one.
    """
    if len(reports) < 2:
        raise ValueError("need at least 2 reports to compare")
    counts = {r.n_cloudlets for r in reports}
    if len(counts) > 1:
        raise ValueError(f"mismatched cloudlet counts: {sorted(counts)}")

    baseline = reports[0].headline_mean
    rows = []
    for report in reports:
        rows.append({
            "policy": report.policy,
            "mode": report.mode.value,
            "n_cloudlets": report.n_cloudlets,
            "mean_cpu_time": report.mean_cpu_time,
            "mean_completion_time": report.mean_completion_time,
            "headline_mean": report.headline_mean,
            "makespan": report.makespan,
            "mean_utilization": report.mean_utilization,
            "improvement_pct": 100.0 * (baseline - report.headline_mean) / baseline,
        })
    return rows
