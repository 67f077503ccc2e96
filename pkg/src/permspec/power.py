"""Power study: estimated rejection rates over a (noise, n, snr) grid.

Each cell runs K independent replicates (fresh noise and fresh random
signal frequency every time), tests each at the given number of
permutations, and counts p-values at or below the significance level.
Cell seeds are pure functions of the master seed and the cell's position
in the grid, so cells can be computed in any order.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .permutation import PermutationPlan, run_test, wilson_interval
from .rng import seed_chain
from .signals import DISTRIBUTIONS, random_composite

_DISTRIBUTION_IDS = {name: index + 1 for index, name in enumerate(DISTRIBUTIONS)}

# Grid used in the acceptance study; runs in minutes on one core.
DESK_SCALE = dict(
    n_values=(30, 60),
    snr_values=(0.0, 0.4, 0.8, 1.0),
    replicates=500,
    permutations=200,
)

# Full reference grid; plan for hours of runtime.
FULL_SCALE = dict(
    n_values=(30, 60, 120, 240),
    snr_values=(0.0, 0.2, 0.4, 0.6, 0.8, 1.0),
    replicates=10_000,
    permutations=1_000,
)

_NOISE_ROLE = 0
_TEST_ROLE = 1


@dataclass(frozen=True)
class StudyConfig:
    distributions: tuple[str, ...] = DISTRIBUTIONS
    n_values: tuple[int, ...] = DESK_SCALE["n_values"]
    snr_values: tuple[float, ...] = DESK_SCALE["snr_values"]
    replicates: int = DESK_SCALE["replicates"]
    permutations: int = DESK_SCALE["permutations"]
    alpha: float = 0.05
    confidence: float = 0.95
    master_seed: int = 0

    def __post_init__(self):
        for name in self.distributions:
            if name not in DISTRIBUTIONS:
                raise ValueError(f"unknown noise distribution {name!r}")
        if self.replicates < 1 or self.permutations < 1:
            raise ValueError("replicates and permutations must be >= 1")
        if not 0.0 < self.alpha < 1.0:
            raise ValueError(f"alpha must be in (0, 1), got {self.alpha}")

    def cell_seed(self, distribution: str, n: int, snr: float) -> int:
        snr_index = self.snr_values.index(snr)
        return seed_chain(
            self.master_seed, _DISTRIBUTION_IDS[distribution], n, snr_index
        )


def desk_scale_config(master_seed: int = 0, **overrides) -> StudyConfig:
    return StudyConfig(master_seed=master_seed, **{**DESK_SCALE, **overrides})


def full_scale_config(master_seed: int = 0, **overrides) -> StudyConfig:
    return StudyConfig(master_seed=master_seed, **{**FULL_SCALE, **overrides})


@dataclass(frozen=True)
class PowerCell:
    """Estimated power for one (distribution, n, snr) combination."""

    distribution: str
    n: int
    snr: float
    replicates: int
    permutations: int
    alpha: float
    rejections: int
    power: float
    wilson_low: float
    wilson_high: float
    cell_seed: int


@dataclass(frozen=True)
class PowerTable:
    config: StudyConfig
    cells: tuple[PowerCell, ...] = field(default_factory=tuple)

    def cell(self, distribution: str, n: int, snr: float) -> PowerCell:
        for cell in self.cells:
            if (
                cell.distribution == distribution
                and cell.n == n
                and cell.snr == snr
            ):
                return cell
        raise KeyError(f"no cell for ({distribution!r}, n={n}, snr={snr})")


def run_cell(
    distribution: str,
    n: int,
    snr: float,
    replicates: int,
    permutations: int,
    alpha: float,
    cell_seed: int,
    confidence: float = 0.95,
) -> PowerCell:
    """Estimate power for one cell; deterministic given ``cell_seed``."""
    rejections = 0
    for replicate in range(replicates):
        composite = random_composite(
            distribution, n, snr, seed=seed_chain(cell_seed, replicate, _NOISE_ROLE)
        )
        plan = PermutationPlan(
            master_seed=seed_chain(cell_seed, replicate, _TEST_ROLE),
            n_permutations=permutations,
        )
        result = run_test(composite.series, plan, confidence)
        if result.p_value <= alpha:
            rejections += 1
    low, high = wilson_interval(rejections, replicates, confidence)
    return PowerCell(
        distribution=distribution,
        n=n,
        snr=snr,
        replicates=replicates,
        permutations=permutations,
        alpha=alpha,
        rejections=rejections,
        power=rejections / replicates,
        wilson_low=low,
        wilson_high=high,
        cell_seed=cell_seed,
    )


def run_grid(config: StudyConfig, progress=None) -> PowerTable:
    """Run every cell of the grid.

    ``progress``, if given, is called with each finished PowerCell (the
    CLI uses this to stream one line per cell).
    """
    cells = []
    for distribution in config.distributions:
        for n in config.n_values:
            for snr in config.snr_values:
                cell = run_cell(
                    distribution,
                    n,
                    snr,
                    config.replicates,
                    config.permutations,
                    config.alpha,
                    config.cell_seed(distribution, n, snr),
                    config.confidence,
                )
                if progress is not None:
                    progress(cell)
                cells.append(cell)
    return PowerTable(config=config, cells=tuple(cells))


POWER_SCHEMA = "permspec-power/1"

_CELL_FIELDS = (
    "distribution",
    "n",
    "lambda",
    "K",
    "M",
    "alpha",
    "rejections",
    "power",
    "wilson_low",
    "wilson_high",
    "cell_seed",
)


def _cell_record(cell: PowerCell) -> dict:
    return {
        "distribution": cell.distribution,
        "n": cell.n,
        "lambda": cell.snr,
        "K": cell.replicates,
        "M": cell.permutations,
        "alpha": cell.alpha,
        "rejections": cell.rejections,
        "power": cell.power,
        "wilson_low": cell.wilson_low,
        "wilson_high": cell.wilson_high,
        "cell_seed": cell.cell_seed,
    }


def render_table(table: PowerTable) -> str:
    """Results file text: a schema header line, then one JSON record per cell."""
    header = {
        "schema": POWER_SCHEMA,
        "master_seed": table.config.master_seed,
        "distributions": list(table.config.distributions),
        "n_values": list(table.config.n_values),
        "lambda_values": list(table.config.snr_values),
        "K": table.config.replicates,
        "M": table.config.permutations,
        "alpha": table.config.alpha,
        "confidence": table.config.confidence,
    }
    lines = [json.dumps(header, sort_keys=True)]
    lines.extend(
        json.dumps(_cell_record(cell), sort_keys=True) for cell in table.cells
    )
    return "\n".join(lines) + "\n"


def save_table(table: PowerTable, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as handle:
        handle.write(render_table(table))


def _parse_header(line: str) -> StudyConfig:
    header = json.loads(line)
    if header.get("schema") != POWER_SCHEMA:
        raise ValueError(
            f"unsupported results schema {header.get('schema')!r}, expected {POWER_SCHEMA!r}"
        )
    for key in (
        "master_seed",
        "distributions",
        "n_values",
        "lambda_values",
        "K",
        "M",
        "alpha",
        "confidence",
    ):
        if key not in header:
            raise ValueError(f"results header is missing field {key!r}")
    return StudyConfig(
        distributions=tuple(header["distributions"]),
        n_values=tuple(header["n_values"]),
        snr_values=tuple(header["lambda_values"]),
        replicates=header["K"],
        permutations=header["M"],
        alpha=header["alpha"],
        confidence=header["confidence"],
        master_seed=header["master_seed"],
    )


def load_table(path) -> PowerTable:
    """Parse a results file back into a PowerTable, validating the schema."""
    with open(path, "r", encoding="utf-8") as handle:
        lines = [line for line in handle.read().splitlines() if line.strip()]
    if not lines:
        raise ValueError("empty results file")
    config = _parse_header(lines[0])
    cells = []
    for index, line in enumerate(lines[1:], start=1):
        record = json.loads(line)
        for fieldname in _CELL_FIELDS:
            if fieldname not in record:
                raise ValueError(
                    f"cell record {index} is missing field {fieldname!r}"
                )
        cells.append(
            PowerCell(
                distribution=record["distribution"],
                n=record["n"],
                snr=record["lambda"],
                replicates=record["K"],
                permutations=record["M"],
                alpha=record["alpha"],
                rejections=record["rejections"],
                power=record["power"],
                wilson_low=record["wilson_low"],
                wilson_high=record["wilson_high"],
                cell_seed=record["cell_seed"],
            )
        )
    return PowerTable(config=config, cells=tuple(cells))
