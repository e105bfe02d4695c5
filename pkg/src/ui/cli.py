"""
Command-line interface module.

This module provides the batch entry point: a single simulation run, or a
sweep over bond dimension, circuit depth and seeds.
"""

import logging
import os
import sys
from typing import List, Optional

import click
from pydantic import ValidationError
from rich.console import Console
from rich.table import Table

from src.env_loader import load_environment
from src.errors import ConfigError, MeraSimError
from src.simulation import (
    ErrorRecord, RunConfig, SimulationRecord, SweepManager, SweepResult, run_simulation, write_record,
    write_sweep
)
from src.stiefel import OptimizerConfig

logger = logging.getLogger(__name__)

CONFIG_EXIT_CODE = 2
FAILURE_EXIT_CODE = 1


def _int_list(ctx, param, value: Optional[str]) -> Optional[List[int]]:
    if value is None:
        return None
    try:
        items = [int(item) for item in value.split(",") if item.strip()]
    except ValueError:
        raise click.BadParameter(f"expected comma-separated integers, got {value!r}")
    if not items:
        raise click.BadParameter("list must not be empty")
    return items


def _emit_error(e: Exception, details: Optional[dict] = None):
    record = ErrorRecord(error=str(e), error_type=type(e).__name__, details=details)
    click.echo(record.model_dump_json(), err=True)


def _print_record(console: Console, record: SimulationRecord, written: List[str]):
    table = Table(title=f"MERA run n={record.config.qubits} chi={record.config.chi} k={record.config.layers}")
    table.add_column("Quantity")
    table.add_column("Value", justify="right")
    table.add_row("status", record.status)
    table.add_row("gates applied G", str(record.gate_count))
    table.add_row("circuit fidelity F", f"{record.circuit_fidelity:.10f}")
    table.add_row("per-gate fidelity f", f"{record.average_gate_fidelity:.10f}")
    table.add_row("error rate eps", f"{record.error_rate:.3e}")
    if record.exact_fidelity is not None:
        table.add_row("exact fidelity", f"{record.exact_fidelity:.10f}")
        table.add_row("exact - F", f"{record.surrogate_gap:+.3e}")
    table.add_row("max constraint deviation", f"{record.max_constraint_deviation:.2e}")
    table.add_row("wall time [s]", f"{record.wall_time:.2f}")
    console.print(table)
    for path in written:
        console.print(f"Wrote {path}")


def _print_sweep(console: Console, result: SweepResult, written: List[str]):
    medians = result.median_fidelity()
    table = Table(title="Median circuit fidelity F")
    table.add_column("chi \\ k")
    for k in medians.columns:
        table.add_column(str(k), justify="right")
    for chi, row in medians.iterrows():
        table.add_row(str(chi), *(f"{value:.6f}" for value in row))
    console.print(table)
    for status in result.failed:
        console.print(f"[red]{status.cell_id} failed: {status.message}[/red]")
    for path in written:
        console.print(f"Wrote {path}")


@click.command()
@click.option("--qubits", type=int, default=None, help="Number of qubits, a power of 3")
@click.option("--chi", type=int, default=None, help="Bond dimension cap")
@click.option("--layers", type=int, default=None, help="Number of checkerboard layers k")
@click.option("--seed", type=int, default=0, show_default=True, help="Seed, or first seed of a sweep")
@click.option("--seeds", type=click.IntRange(min=1), default=1, show_default=True,
              help="Number of consecutive seeds starting at --seed")
@click.option("--iters", type=int, default=None, help="Iteration budget per gate")
@click.option("--lr", type=float, default=None, help="ADAM learning rate")
@click.option("--init", "init_mode", type=click.Choice(["analytic", "optimized"]), default=None,
              help="Initial state preparation")
@click.option("--oracle-check", is_flag=True, default=False, help="Compare against the dense simulator")
@click.option("--sweep-chi", callback=_int_list, default=None, help="Comma-separated bond dimensions")
@click.option("--sweep-layers", callback=_int_list, default=None, help="Comma-separated circuit depths")
@click.option("--out", "output_path", type=click.Path(dir_okay=False), default=None, help="Output base path")
@click.option("--format", "output_format", type=click.Choice(["json", "csv", "both"]), default="json",
              show_default=True, help="Output format")
@click.option("--deterministic/--no-deterministic", default=True, show_default=True,
              help="Single-threaded linear algebra in sweep workers")
@click.option("--update-mode", type=click.Choice(["adam", "linearized"]), default=None, help="Gate update algorithm")
@click.option("--trace", "trace_path", type=click.Path(dir_okay=False), default=None,
              help="File receiving per-iteration optimizer records")
@click.option("--save-network", "network_path", type=click.Path(dir_okay=False), default=None,
              help="File receiving the final network")
@click.option("--save-circuit", "circuit_path", type=click.Path(dir_okay=False), default=None,
              help="File receiving the generated circuit")
@click.option("--workers", type=click.IntRange(min=1), default=None, help="Sweep worker processes")
@click.option("--env-file", type=click.Path(dir_okay=False), default=None, help="Path to .env file")
def main(
    qubits, chi, layers, seed, seeds, iters, lr, init_mode, oracle_check, sweep_chi, sweep_layers,
    output_path, output_format, deterministic, update_mode, trace_path, network_path, circuit_path,
    workers, env_file
):
    """Simulate checkerboard circuits on a ternary MERA state."""
    console = Console()

    try:
        env_config = load_environment(env_file)
        overrides = dict(
            qubits=qubits, chi=chi, layers=layers, seed=seed, max_iterations=iters, init_mode=init_mode,
            oracle_check=oracle_check, deterministic=deterministic, update_mode=update_mode,
            output_path=output_path, output_format=output_format, trace_path=trace_path,
            network_path=network_path, circuit_path=circuit_path,
        )
        if lr is not None:
            optimizer = env_config.get_optimizer_config()
            overrides["optimizer"] = OptimizerConfig(
                learning_rate=lr, beta1=optimizer["beta1"], beta2=optimizer["beta2"], epsilon=optimizer["epsilon"]
            )
        cfg = RunConfig.from_env(env_config, **overrides)
    except (ValidationError, ConfigError) as e:
        logger.error(f"Invalid configuration: {e}")
        _emit_error(e)
        sys.exit(CONFIG_EXIT_CODE)

    sweeping = sweep_chi is not None or sweep_layers is not None or seeds > 1
    try:
        if sweeping:
            manager = SweepManager(env_config)
            result = manager.run_sweep(
                cfg,
                chis=sweep_chi or [cfg.chi],
                layers=sweep_layers or [cfg.layers],
                seeds=list(range(cfg.seed, cfg.seed + seeds)),
                workers=workers,
            )
            base = cfg.output_path or os.path.join(env_config.output_dir, f"sweep_n{cfg.qubits}")
            written = write_sweep(result, base, cfg.output_format)
            _print_sweep(console, result, written)
            if result.failed and not result.records:
                sys.exit(FAILURE_EXIT_CODE)
        else:
            record = run_simulation(cfg)
            base = cfg.output_path or os.path.join(
                env_config.output_dir, f"run_n{cfg.qubits}_chi{cfg.chi}_k{cfg.layers}_s{cfg.seed}"
            )
            written = write_record(record, base, cfg.output_format)
            _print_record(console, record, written)
            if record.status != "completed":
                _emit_error(MeraSimError(record.error), {"gates_applied": record.gate_count, "files": written})
                sys.exit(FAILURE_EXIT_CODE)
    except (ValidationError, ConfigError) as e:
        logger.error(f"Invalid configuration: {e}")
        _emit_error(e)
        sys.exit(CONFIG_EXIT_CODE)
    except Exception as e:
        logger.error(f"Simulation failed: {e}")
        _emit_error(e)
        sys.exit(FAILURE_EXIT_CODE)


if __name__ == "__main__":
    main()
