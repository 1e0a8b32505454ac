"""Shared test helpers: scenario builders and the PS reference integrator."""

import math
import random

import pytest

from cloudsched import (
    Cloudlet,
    Datacenter,
    Host,
    Scenario,
    Vm,
    builtin_scenario,
    validate_scenario,
)

MIPS_CHOICES = (250.0, 500.0, 750.0, 1000.0, 1250.0)


def make_scenario(vm_mips, lengths, policy="fcfs", mode=None, check=True):
    """Single-host scenario from bare MIPS and length lists."""
    vm_mips = [float(m) for m in vm_mips]
    host = Host(id=1, datacenter_id=1, total_mips=sum(vm_mips) or 1.0,
                ram_mb=max(512 * len(vm_mips), 512), storage_mb=1_000_000)
    scenario = Scenario(
        datacenters=(Datacenter(id=1, hosts=(host,)),),
        vms=tuple(Vm(id=i + 1, mips=m, ram_mb=512)
                  for i, m in enumerate(vm_mips)),
        cloudlets=tuple(Cloudlet(id=j + 1, length=float(length), arrival_index=j)
                        for j, length in enumerate(lengths)),
        policy=policy,
        execution_mode=mode,
    )
    return validate_scenario(scenario) if check else scenario


def make_random_scenario(rng: random.Random, policy=None, n_cloudlets=None,
                         max_vms=6, max_cloudlets=16):
    """Small random scenario; ids stay dense and 1-based."""
    n_vms = rng.randint(1, max_vms)
    n = n_cloudlets if n_cloudlets is not None else rng.randint(1, max_cloudlets)
    vm_mips = [rng.choice(MIPS_CHOICES) for _ in range(n_vms)]
    lengths = [rng.randint(1000, 100000) for _ in range(n)]
    chosen = policy if policy is not None else rng.choice(("fcfs", "rr", "gpa"))
    return make_scenario(vm_mips, lengths, policy=chosen)


def integrate_ps(lengths, mips, dt=0.001):
    """Fixed-timestep reference for ps_finish_times.

    Semantically the naive loop: every dt, each of the n active jobs
    advances by (mips / n) * dt; a job is retired at the end of the step
    in which its remaining work reaches zero. Steps between completions
    are batched (k steps at once), which the naive loop cannot observe
    but keeps the reference fast enough to run thousands of times.
    """
    n = len(lengths)
    remaining = [float(length) for length in lengths]
    finish = [0.0] * n
    active = list(range(n))
    steps_done = 0
    while active:
        quantum = mips / len(active) * dt
        min_left = min(remaining[i] for i in active)
        k = max(1, math.ceil(min_left / quantum))
        steps_done += k
        still_running = []
        for i in active:
            remaining[i] -= k * quantum
            if remaining[i] <= 0.0:
                finish[i] = steps_done * dt
            else:
                still_running.append(i)
        active = still_running
    return finish


@pytest.fixture
def fcfs_scenario():
    return builtin_scenario("paper12-fcfs")


@pytest.fixture
def rr_scenario():
    return builtin_scenario("paper12-rr")


@pytest.fixture
def gpa_scenario():
    return builtin_scenario("paper12-gpa")
