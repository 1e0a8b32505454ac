"""Scenario files, built-in scenarios and the seeded workload generator.

The scenario document is a single JSON object with top-level keys
`datacenters`, `vms`, `cloudlets`, `policy` (and optional
`execution_mode`); ids are explicit and field names match the domain
types. Unknown keys are rejected with their location so fixture typos
fail loudly.
"""

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

from .model import (
    Cloudlet,
    Datacenter,
    ExecutionMode,
    Host,
    Scenario,
    Vm,
    validate_scenario,
)

VM_RAM_MB = 512
BENCH_LENGTHS = (20000.0, 10000.0, 20000.0, 10000.0, 10000.0, 20000.0,
                 10000.0, 20000.0, 10000.0, 10000.0, 20000.0, 10000.0)
BENCH_VM_MIPS = (250.0, 1000.0, 250.0, 500.0, 250.0)
BENCH_LENGTH_MIX = ((20000.0, 5.0), (10000.0, 7.0))

BUILTIN_NAMES = ("paper12-fcfs", "paper12-rr", "paper12-gpa")


class ScenarioFormatError(ValueError):
    """Malformed scenario document (syntax, types, or unknown keys)."""


# ---------------------------------------------------------------------------
# pinned PRNG

MASK64 = (1 << 64) - 1
_SEED_STRIDE = 0x9E3779B97F4A7C15  # odd 64-bit constant for per-n seed spacing


class Lcg64:
    """64-bit linear congruential generator with Knuth's MMIX constants.

    state' = state * 6364136223846793005 + 1442695040888963407  (mod 2**64)

    The update rule, the unit-interval mapping (top 53 bits / 2**53) and
    the modulo range reduction are all part of the workload contract, so
    any implementation of the same integer arithmetic reproduces identical
    scenarios byte for byte.
    """

    MULTIPLIER = 6364136223846793005
    INCREMENT = 1442695040888963407

    def __init__(self, seed: int):
        self._state = seed & MASK64

    def next_u64(self) -> int:
        self._state = (self._state * self.MULTIPLIER + self.INCREMENT) & MASK64
        return self._state

    def below(self, n: int) -> int:
        """Uniform-ish integer in [0, n); modulo reduction by design."""
        if n <= 0:
            raise ValueError("below() needs n >= 1")
        return self.next_u64() % n

    def unit(self) -> float:
        """Float in [0, 1) built from the top 53 bits."""
        return (self.next_u64() >> 11) / 9007199254740992.0

    def shuffle(self, items: list) -> None:
        """In-place Fisher-Yates, walking from the last element down."""
        for i in range(len(items) - 1, 0, -1):
            j = self.below(i + 1)
            items[i], items[j] = items[j], items[i]


def derive_seed(seed: int, n: int) -> int:
    """Per-size sub-seed for sweeps: seed + n strides, mod 2**64."""
    return (seed + n * _SEED_STRIDE) & MASK64


# ---------------------------------------------------------------------------
# generator

@dataclass(frozen=True)
class GeneratorSpec:
    """Synthetic workload description.

    Lengths come either from a weighted value set (`length_values`, the
    default 20000/10000 benchmark mix) or a uniform integer range
    `length_range` = (min_mi, max_mi). With `without_replacement` the
    value-set weights are exact counts: each value appears
    n_tasks * weight / total_weight times and the multiset is shuffled.
    """

    n_tasks: int
    length_values: Optional[tuple[tuple[float, float], ...]] = None
    length_range: Optional[tuple[int, int]] = None
    seed: int = 0
    without_replacement: bool = False


def _spec_problems(spec: GeneratorSpec) -> list[str]:
    problems = []
    if spec.n_tasks < 1:
        problems.append("n_tasks must be >= 1")
    if spec.length_values is not None and spec.length_range is not None:
        problems.append("give either length_values or length_range, not both")
    if spec.length_values is not None:
        if not spec.length_values:
            problems.append("empty length value set")
        for value, weight in spec.length_values:
            if value <= 0:
                problems.append(f"non-positive length value {value}")
            if weight <= 0:
                problems.append(f"non-positive weight {weight}")
    if spec.length_range is not None:
        lo, hi = spec.length_range
        if lo <= 0:
            problems.append("length_range minimum must be positive")
        if lo > hi:
            problems.append("length_range minimum exceeds maximum")
        if spec.without_replacement:
            problems.append("without_replacement needs a finite value set")
    return problems


def _draw_lengths(spec: GeneratorSpec, rng: Lcg64) -> list[float]:
    if spec.length_range is not None:
        lo, hi = spec.length_range
        return [float(lo + rng.below(hi - lo + 1)) for _ in range(spec.n_tasks)]

    values = spec.length_values if spec.length_values is not None else BENCH_LENGTH_MIX
    total = sum(w for _, w in values)

    if spec.without_replacement:
        lengths: list[float] = []
        for value, weight in values:
            count = spec.n_tasks * weight / total
            if abs(count - round(count)) > 1e-9:
                raise ValueError(
                    f"without_replacement needs integral counts; "
                    f"value {value} would appear {count} times")
            lengths.extend([float(value)] * round(count))
        rng.shuffle(lengths)
        return lengths

    lengths = []
    for _ in range(spec.n_tasks):
        u = rng.unit() * total
        acc = 0.0
        picked = values[-1][0]
        for value, weight in values:
            acc += weight
            if u < acc:
                picked = value
                break
        lengths.append(float(picked))
    return lengths


def generate(spec: GeneratorSpec,
             vm_template: Optional[tuple[float, ...]] = None,
             policy: str = "fcfs") -> Scenario:
    """Deterministic scenario from (spec, vm_template): same seed, same bytes.

    `vm_template` is the MIPS list in VM creation order (default the
    five-VM benchmark set); all VMs get 512 MB RAM on a single exact-fit
    host.
    """
    problems = _spec_problems(spec)
    if problems:
        raise ValueError("; ".join(problems))
    template = vm_template if vm_template is not None else BENCH_VM_MIPS
    if not template or any(m <= 0 for m in template):
        raise ValueError("vm_template must be a non-empty list of positive MIPS")

    rng = Lcg64(spec.seed)
    lengths = _draw_lengths(spec, rng)

    host = Host(id=1, datacenter_id=1,
                total_mips=float(sum(template)),
                ram_mb=VM_RAM_MB * len(template),
                storage_mb=1_000_000)
    scenario = Scenario(
        datacenters=(Datacenter(id=1, hosts=(host,)),),
        vms=tuple(Vm(id=i + 1, mips=float(m), ram_mb=VM_RAM_MB)
                  for i, m in enumerate(template)),
        cloudlets=tuple(Cloudlet(id=i + 1, length=length, arrival_index=i)
                        for i, length in enumerate(lengths)),
        policy=policy,
    )
    return validate_scenario(scenario)


# ---------------------------------------------------------------------------
# built-in scenarios

def _two_dc_scenario(vm_mips: tuple[float, ...], policy: str,
                     ram_split: tuple[int, int]) -> Scenario:
    """Five VMs over two datacenters; host RAM fixes which VMs land where."""
    hosts_a = Host(id=1, datacenter_id=2, total_mips=2000.0,
                   ram_mb=ram_split[0], storage_mb=1_000_000)
    hosts_b = Host(id=2, datacenter_id=3, total_mips=2000.0,
                   ram_mb=ram_split[1], storage_mb=1_000_000)
    return Scenario(
        datacenters=(Datacenter(id=2, hosts=(hosts_a,)),
                     Datacenter(id=3, hosts=(hosts_b,))),
        vms=tuple(Vm(id=i + 1, mips=float(m), ram_mb=VM_RAM_MB)
                  for i, m in enumerate(vm_mips)),
        cloudlets=tuple(Cloudlet(id=i + 1, length=length, arrival_index=i)
                        for i, length in enumerate(BENCH_LENGTHS)),
        policy=policy,
    )


def builtin_scenario(name: str) -> Scenario:
    """One of the shipped benchmark scenarios (see BUILTIN_NAMES).

    All three share the same 12-cloudlet workload and VM MIPS multiset;
    they differ in VM declaration order (which fixes cyclic dispatch and
    the round-robin ring) and in the bound policy.
    """
    if name == "paper12-fcfs":
        scenario = _two_dc_scenario((250.0, 1000.0, 250.0, 500.0, 250.0),
                                    "fcfs", ram_split=(3 * VM_RAM_MB, 2 * VM_RAM_MB))
    elif name == "paper12-rr":
        scenario = _two_dc_scenario((250.0, 250.0, 250.0, 500.0, 1000.0),
                                    "rr", ram_split=(4 * VM_RAM_MB, 1 * VM_RAM_MB))
    elif name == "paper12-gpa":
        scenario = _two_dc_scenario((1000.0, 500.0, 250.0, 250.0, 250.0),
                                    "gpa", ram_split=(3 * VM_RAM_MB, 2 * VM_RAM_MB))
    else:
        raise ValueError(f"unknown builtin scenario {name!r}")
    return validate_scenario(scenario)


# ---------------------------------------------------------------------------
# serialization

def save_scenario(scenario: Scenario) -> str:
    """Scenario as a JSON document; fixed key order, diff-friendly."""
    doc: dict = {"policy": scenario.policy}
    if scenario.execution_mode is not None:
        doc["execution_mode"] = scenario.execution_mode.value
    doc["datacenters"] = [
        {
            "id": dc.id,
            "hosts": [
                {
                    "id": h.id,
                    "datacenter_id": h.datacenter_id,
                    "total_mips": h.total_mips,
                    "ram_mb": h.ram_mb,
                    "storage_mb": h.storage_mb,
                }
                for h in dc.hosts
            ],
        }
        for dc in scenario.datacenters
    ]
    doc["vms"] = []
    for vm in scenario.vms:
        entry: dict = {"id": vm.id, "mips": vm.mips, "ram_mb": vm.ram_mb,
                       "pe_count": vm.pe_count}
        doc["vms"].append(entry)
    doc["cloudlets"] = [
        {"id": cl.id, "length": cl.length, "arrival_index": cl.arrival_index,
         "pe_count": cl.pe_count}
        for cl in scenario.cloudlets
    ]
    return json.dumps(doc, indent=2) + "\n"


def write_scenario(scenario: Scenario, path) -> None:
    Path(path).write_text(save_scenario(scenario))


def load_scenario(source) -> Scenario:
    """Parse and validate a scenario from a file path or raw JSON text.

    A string starting with '{' is treated as the document itself;
    anything else is read as a path.
    """
    if isinstance(source, Path):
        text = source.read_text()
    elif isinstance(source, str) and source.lstrip().startswith("{"):
        text = source
    else:
        text = Path(source).read_text()

    try:
        doc = json.loads(text)
    except json.JSONDecodeError as err:
        raise ScenarioFormatError(
            f"parse error at line {err.lineno} column {err.colno}: {err.msg}"
        ) from None

    scenario = _scenario_from_doc(doc)
    return validate_scenario(scenario)


def _check_keys(obj: dict, where: str, required: tuple[str, ...],
                optional: tuple[str, ...] = ()) -> None:
    if not isinstance(obj, dict):
        raise ScenarioFormatError(f"{where}: expected an object")
    for key in obj:
        if key not in required and key not in optional:
            raise ScenarioFormatError(f"{where}: unknown key {key!r}")
    for key in required:
        if key not in obj:
            raise ScenarioFormatError(f"{where}: missing key {key!r}")


def _as_int(obj: dict, where: str, key: str, default=None):
    if key not in obj:
        return default
    value = obj[key]
    if isinstance(value, bool) or not isinstance(value, int):
        raise ScenarioFormatError(f"{where}.{key}: expected an integer")
    return value


def _as_number(obj: dict, where: str, key: str) -> float:
    value = obj[key]
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ScenarioFormatError(f"{where}.{key}: expected a number")
    return float(value)


def _scenario_from_doc(doc) -> Scenario:
    _check_keys(doc, "document",
                required=("policy", "datacenters", "vms", "cloudlets"),
                optional=("execution_mode",))
    if not isinstance(doc["policy"], str):
        raise ScenarioFormatError("document.policy: expected a string")

    mode = None
    if "execution_mode" in doc:
        try:
            mode = ExecutionMode(doc["execution_mode"])
        except ValueError:
            raise ScenarioFormatError(
                f"document.execution_mode: expected one of "
                f"{[m.value for m in ExecutionMode]}") from None

    for key in ("datacenters", "vms", "cloudlets"):
        if not isinstance(doc[key], list):
            raise ScenarioFormatError(f"document.{key}: expected a list")

    datacenters = []
    for i, dc_doc in enumerate(doc["datacenters"]):
        where = f"datacenters[{i}]"
        _check_keys(dc_doc, where, required=("id", "hosts"))
        dc_id = _as_int(dc_doc, where, "id")
        if not isinstance(dc_doc["hosts"], list):
            raise ScenarioFormatError(f"{where}.hosts: expected a list")
        hosts = []
        for j, host_doc in enumerate(dc_doc["hosts"]):
            hwhere = f"{where}.hosts[{j}]"
            _check_keys(host_doc, hwhere,
                        required=("id", "total_mips", "ram_mb", "storage_mb"),
                        optional=("datacenter_id",))
            hosts.append(Host(
                id=_as_int(host_doc, hwhere, "id"),
                datacenter_id=_as_int(host_doc, hwhere, "datacenter_id",
                                      default=dc_id),
                total_mips=_as_number(host_doc, hwhere, "total_mips"),
                ram_mb=_as_int(host_doc, hwhere, "ram_mb"),
                storage_mb=_as_int(host_doc, hwhere, "storage_mb"),
            ))
        datacenters.append(Datacenter(id=dc_id, hosts=tuple(hosts)))

    vms = []
    for i, vm_doc in enumerate(doc["vms"]):
        where = f"vms[{i}]"
        _check_keys(vm_doc, where, required=("id", "mips", "ram_mb"),
                    optional=("pe_count",))
        vms.append(Vm(
            id=_as_int(vm_doc, where, "id"),
            mips=_as_number(vm_doc, where, "mips"),
            ram_mb=_as_int(vm_doc, where, "ram_mb"),
            pe_count=_as_int(vm_doc, where, "pe_count", default=1),
        ))

    cloudlets = []
    for i, cl_doc in enumerate(doc["cloudlets"]):
        where = f"cloudlets[{i}]"
        # file_size/output_size are accepted for compatibility and ignored:
        # execution depends only on length and MIPS.
        _check_keys(cl_doc, where, required=("id", "length", "arrival_index"),
                    optional=("pe_count", "file_size", "output_size"))
        cloudlets.append(Cloudlet(
            id=_as_int(cl_doc, where, "id"),
            length=_as_number(cl_doc, where, "length"),
            arrival_index=_as_int(cl_doc, where, "arrival_index"),
            pe_count=_as_int(cl_doc, where, "pe_count", default=1),
        ))

    return Scenario(
        datacenters=tuple(datacenters),
        vms=tuple(vms),
        cloudlets=tuple(cloudlets),
        policy=doc["policy"],
        execution_mode=mode,
    )
