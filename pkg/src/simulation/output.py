"""
Simulation output module.

This module writes simulation and sweep results as JSON documents and flat
CSV tables.
"""

import json
import logging
import os
from typing import List

import pandas as pd

from src.errors import ConfigError
from src.simulation.models import SimulationRecord
from src.simulation.sweep_manager import SweepResult

logger = logging.getLogger(__name__)

FORMATS = ("json", "csv", "both")


def _base_path(path: str) -> str:
    root, ext = os.path.splitext(path)
    return root if ext.lower() in (".json", ".csv") else path


def _ensure_parent(path: str):
    parent = os.path.dirname(os.path.abspath(path))
    os.makedirs(parent, exist_ok=True)


def gate_table(record: SimulationRecord) -> pd.DataFrame:
    """
    Per-gate results as a table.

    Args:
        record (SimulationRecord): Simulation record

    Returns:
        pd.DataFrame: One row per applied gate, with the running circuit fidelity
    """
    frame = pd.DataFrame(
        [
            {
                "index": gate.index,
                "qubit_a": gate.pair[0],
                "qubit_b": gate.pair[1],
                "fidelity": gate.fidelity,
                "iterations": gate.iterations,
                "wall_time": gate.wall_time,
            }
            for gate in record.gates
        ],
        columns=["index", "qubit_a", "qubit_b", "fidelity", "iterations", "wall_time"],
    )
    frame["cumulative_fidelity"] = frame["fidelity"].cumprod()
    return frame


def write_record(record: SimulationRecord, path: str, fmt: str = "json") -> List[str]:
    """
    Write a simulation record.

    Args:
        record (SimulationRecord): Simulation record
        path (str): Output path; a .json or .csv suffix is replaced per format
        fmt (str): "json", "csv" or "both"

    Returns:
        List[str]: Written files
    """
    if fmt not in FORMATS:
        raise ConfigError(f"Unknown output format {fmt!r}, expected one of {FORMATS}")
    base = _base_path(path)
    _ensure_parent(base)
    written = []
    if fmt in ("json", "both"):
        json_path = f"{base}.json"
        with open(json_path, "w") as f:
            f.write(record.model_dump_json(indent=2))
        written.append(json_path)
    if fmt in ("csv", "both"):
        csv_path = f"{base}.csv"
        gate_table(record).to_csv(csv_path, index=False)
        written.append(csv_path)
    logger.info(f"Wrote simulation record to {', '.join(written)}")
    return written


def read_record(path: str) -> SimulationRecord:
    """
    Read a simulation record written as JSON.

    Args:
        path (str): JSON file

    Returns:
        SimulationRecord: Validated record
    """
    with open(path, "r") as f:
        return SimulationRecord.model_validate_json(f.read())


def write_sweep(result: SweepResult, path: str, fmt: str = "json") -> List[str]:
    """
    Write a sweep result.

    The JSON document holds every cell status with its record and the median
    fidelity grid; the CSV holds one row per cell.

    Args:
        result (SweepResult): Sweep result
        path (str): Output path; a .json or .csv suffix is replaced per format
        fmt (str): "json", "csv" or "both"

    Returns:
        List[str]: Written files
    """
    if fmt not in FORMATS:
        raise ConfigError(f"Unknown output format {fmt!r}, expected one of {FORMATS}")
    base = _base_path(path)
    _ensure_parent(base)
    written = []
    if fmt in ("json", "both"):
        json_path = f"{base}.json"
        medians = result.median_fidelity()
        document = {
            "cells": [status.model_dump(mode="json") for status in result.statuses],
            "median_circuit_fidelity": [
                {"chi": int(chi), "layers": int(k), "median": float(value)}
                for (chi, k), value in medians.stack().items()
            ],
        }
        with open(json_path, "w") as f:
            json.dump(document, f, indent=2)
        written.append(json_path)
    if fmt in ("csv", "both"):
        csv_path = f"{base}.csv"
        result.table.reset_index().to_csv(csv_path, index=False)
        written.append(csv_path)
    logger.info(f"Wrote sweep results to {', '.join(written)}")
    return written
