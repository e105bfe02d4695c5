"""
Sweep manager module.

This module runs grids of simulations over bond dimension, circuit depth and
seed in parallel worker processes and collects the records into tables.
"""

import logging
import threading
from dataclasses import dataclass, field
from datetime import datetime
from typing import Any, Dict, List, Optional, Sequence, Tuple

import pandas as pd
from joblib import Parallel, delayed, parallel_config

from src.errors import ConfigError
from src.simulation.env_config import EnvConfig
from src.simulation.models import RunConfig, SimulationRecord, SweepCellStatus
from src.simulation.runner import run_simulation

logger = logging.getLogger(__name__)

TABLE_INDEX = ["chi", "layers", "seed"]


def cell_id(chi: int, layers: int, seed: int) -> str:
    return f"chi{chi}-k{layers}-s{seed}"


def _run_cell(cfg: RunConfig) -> Tuple[str, Optional[SimulationRecord], Optional[str]]:
    """Worker entry point; failures are returned, never raised."""
    identifier = cell_id(cfg.chi, cfg.layers, cfg.seed)
    try:
        return identifier, run_simulation(cfg), None
    except Exception as e:
        logger.error(f"Sweep cell {identifier} failed: {e}")
        return identifier, None, f"{type(e).__name__}: {e}"


@dataclass
class SweepResult:
    """
    Collected outcome of a sweep.

    Args:
        records (Dict[str, SimulationRecord]): Completed records by cell ID
        statuses (List[SweepCellStatus]): Final status of every cell in grid order
        table (pd.DataFrame): One row per cell, indexed by (chi, layers, seed)
    """

    records: Dict[str, SimulationRecord]
    statuses: List[SweepCellStatus]
    table: pd.DataFrame = field(repr=False)

    def median_fidelity(self) -> pd.DataFrame:
        """
        Median circuit fidelity over seeds.

        Returns:
            pd.DataFrame: Rows indexed by chi, columns by layers
        """
        completed = self.table[self.table["status"] == "completed"]
        medians = completed.groupby(level=["chi", "layers"])["circuit_fidelity"].median()
        return medians.unstack("layers").sort_index().sort_index(axis=1)

    @property
    def failed(self) -> List[SweepCellStatus]:
        return [s for s in self.statuses if s.status == "failed"]


class SweepManager:
    """Manager for simulation sweeps."""

    def __init__(self, env_config: EnvConfig):
        """
        Initialize sweep manager.

        Args:
            env_config (EnvConfig): Environment configuration
        """
        self.env_config = env_config
        self.cells: Dict[str, Dict[str, Any]] = {}
        self.lock = threading.Lock()

    def build_grid(
        self,
        base: RunConfig,
        chis: Sequence[int],
        layers: Sequence[int],
        seeds: Sequence[int]
    ) -> List[RunConfig]:
        """
        Expand a base configuration into one configuration per cell.

        File outputs of the base configuration are dropped; the parent process
        writes the sweep results.

        Args:
            base (RunConfig): Shared settings
            chis (Sequence[int]): Bond dimension caps
            layers (Sequence[int]): Circuit depths
            seeds (Sequence[int]): Seeds

        Returns:
            List[RunConfig]: Cell configurations ordered by chi, then layers, then seed
        """
        if not chis or not layers or not seeds:
            raise ConfigError("Sweep grid must contain at least one chi, one depth and one seed")
        grid = []
        for chi in chis:
            for k in layers:
                for seed in seeds:
                    values = base.model_dump()
                    values.update(
                        chi=chi, layers=k, seed=seed,
                        output_path=None, trace_path=None, network_path=None, circuit_path=None
                    )
                    grid.append(RunConfig(**values))
        return grid

    def run_sweep(
        self,
        base: RunConfig,
        chis: Sequence[int],
        layers: Sequence[int],
        seeds: Sequence[int],
        workers: Optional[int] = None
    ) -> SweepResult:
        """
        Run every cell of a chi x layers x seeds grid.

        Cell failures are recorded with status "failed" and do not stop the sweep.

        Args:
            base (RunConfig): Shared settings, including the deterministic flag
            chis (Sequence[int]): Bond dimension caps
            layers (Sequence[int]): Circuit depths
            seeds (Sequence[int]): Seeds
            workers (int, optional): Worker processes; capped by MERA_MAX_WORKERS

        Returns:
            SweepResult: Records, statuses and the combined table
        """
        grid = self.build_grid(base, chis, layers, seeds)
        for cfg in grid:
            self._init_cell(cfg)

        n_jobs = min(workers or self.env_config.max_workers, self.env_config.max_workers, len(grid))
        n_jobs = max(n_jobs, 1)
        logger.info(f"Running sweep of {len(grid)} cells on {n_jobs} workers (deterministic={base.deterministic})")

        records: Dict[str, SimulationRecord] = {}
        for cfg in grid:
            self._update_cell_status(cell_id(cfg.chi, cfg.layers, cfg.seed), "running", "Queued for execution")
        for identifier, record, error in self._execute(grid, n_jobs, base.deterministic):
            if record is None:
                self._update_cell_status(identifier, "failed", error)
                continue
            records[identifier] = record
            message = record.error if record.status == "aborted" else f"F={record.circuit_fidelity:.10f}"
            self._update_cell_status(identifier, record.status, message, record)
            logger.info(f"Sweep cell {identifier} {record.status}: {message}")

        statuses = [self.get_cell_status(cell_id(cfg.chi, cfg.layers, cfg.seed)) for cfg in grid]
        return SweepResult(records=records, statuses=statuses, table=sweep_table(statuses))

    def _execute(self, grid: List[RunConfig], n_jobs: int, deterministic: bool):
        if deterministic:
            with parallel_config(backend="loky", inner_max_num_threads=1):
                yield from Parallel(n_jobs=n_jobs, return_as="generator")(delayed(_run_cell)(cfg) for cfg in grid)
        else:
            yield from Parallel(n_jobs=n_jobs, return_as="generator")(delayed(_run_cell)(cfg) for cfg in grid)

    def _init_cell(self, cfg: RunConfig):
        """
        Initialize cell.

        Args:
            cfg (RunConfig): Cell configuration
        """
        with self.lock:
            self.cells[cell_id(cfg.chi, cfg.layers, cfg.seed)] = {
                "chi": cfg.chi,
                "layers": cfg.layers,
                "seed": cfg.seed,
                "status": "initialized",
                "message": "Cell initialized",
                "start_time": datetime.now(),
                "update_time": datetime.now(),
                "record": None
            }

    def _update_cell_status(
        self,
        identifier: str,
        status: str,
        message: Optional[str],
        record: Optional[SimulationRecord] = None
    ):
        """
        Update cell status.

        Args:
            identifier (str): Cell ID
            status (str): Cell status
            message (str, optional): Status message
            record (SimulationRecord, optional): Cell result
        """
        with self.lock:
            if identifier in self.cells:
                self.cells[identifier]["status"] = status
                self.cells[identifier]["message"] = message
                self.cells[identifier]["update_time"] = datetime.now()
                if record:
                    self.cells[identifier]["record"] = record

    def get_cell_status(self, identifier: str) -> Optional[SweepCellStatus]:
        """
        Get cell status.

        Args:
            identifier (str): Cell ID

        Returns:
            Optional[SweepCellStatus]: Cell status or None if the cell is unknown
        """
        with self.lock:
            if identifier in self.cells:
                cell = self.cells[identifier]
                return SweepCellStatus(
                    cell_id=identifier,
                    chi=cell["chi"],
                    layers=cell["layers"],
                    seed=cell["seed"],
                    status=cell["status"],
                    message=cell["message"],
                    record=cell["record"]
                )
            return None


def sweep_table(statuses: List[SweepCellStatus]) -> pd.DataFrame:
    """
    Flatten cell statuses into a table indexed by (chi, layers, seed).

    Args:
        statuses (List[SweepCellStatus]): Cell statuses

    Returns:
        pd.DataFrame: One row per cell; fidelity columns are NaN for failed cells
    """
    rows = []
    for status in statuses:
        record = status.record
        rows.append({
            "chi": status.chi,
            "layers": status.layers,
            "seed": status.seed,
            "status": status.status,
            "circuit_fidelity": record.circuit_fidelity if record else float("nan"),
            "gate_count": record.gate_count if record else 0,
            "average_gate_fidelity": record.average_gate_fidelity if record else float("nan"),
            "error_rate": record.error_rate if record else float("nan"),
            "exact_fidelity": record.exact_fidelity if record and record.exact_fidelity is not None else float("nan"),
            "wall_time": record.wall_time if record else float("nan"),
            "message": status.message,
        })
    return pd.DataFrame(rows).set_index(TABLE_INDEX).sort_index()
