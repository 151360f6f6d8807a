"""
Command Line Interface for the Critical-Memory Toolkit

This module provides the ``critical-memory`` command: split analysis,
recall dynamics, classical packing and the worked six-neuron example. Every
subcommand builds a validated scenario and runs it through the same
dispatcher as ``run --scenario``.
"""

import sys
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional

import click
import numpy as np

from .config import ScenarioConfig, build_scenario, load_scenario, parse_overrides
from .core import CriticalMemoryToolkit
from .errors import CriticalMemoryError, ScenarioError
from .network import NetworkModel, load_model, model_from_dict, uniform_model
from .utils.serialization import dumps_csv, dumps_report


def _split_list(text: Optional[str], kind: type, option: str) -> Optional[list]:
    if text is None:
        return None
    try:
        return [kind(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise ScenarioError(
            f"{option} must be a comma-separated list of {kind.__name__} values, got '{text}'"
        ) from None


def _split_floats(text: Optional[str], option: str) -> Optional[List[float]]:
    return _split_list(text, float, option)


def _split_ints(text: Optional[str], option: str) -> Optional[List[int]]:
    return _split_list(text, int, option)


def _fail(code: int, kind: str, message: str):
    flat = " ".join(str(message).split())
    click.echo(f"error code={code} type={kind} message={flat}", err=True)
    sys.exit(code)


def _guarded(action: Callable[[], Any]):
    """Run ``action`` and map toolkit errors to their exit codes"""
    try:
        return action()
    except CriticalMemoryError as e:
        _fail(e.exit_code, type(e).__name__, e.message)
    except ValueError as e:
        _fail(2, type(e).__name__, str(e))


def _model_source(model_path: Optional[str], uniform: Optional[int], g: Optional[float]) -> Optional[Dict[str, Any]]:
    if model_path is not None:
        return {"path": model_path}
    if uniform is not None:
        return {"uniform": {"n": uniform, "g": g}}
    return None


def _resolve_model(scenario: ScenarioConfig) -> NetworkModel:
    source = scenario.model
    if source.path is not None:
        return load_model(source.path)
    if source.inline is not None:
        return model_from_dict(source.inline)
    return uniform_model(source.uniform.n, source.uniform.g)


class _Emitter:
    """Writes artifacts into the output directory, or the main one to stdout"""

    def __init__(self, output_dir: Optional[str], digits: int):
        self.output_dir = Path(output_dir) if output_dir else None
        self.digits = digits
        self.written: Dict[str, str] = {}
        if self.output_dir is not None:
            self.output_dir.mkdir(parents=True, exist_ok=True)

    def _write(self, name: str, text: str, main: bool):
        if self.output_dir is None:
            if main:
                click.echo(text, nl=False)
            return
        path = self.output_dir / name
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        self.written[name] = str(path)

    def report(self, name: str, report: Any, main: bool = True):
        self._write(name, dumps_report(report, self.digits), main)

    def table(self, name: str, frame, kind: str, main: bool = True, extra_header=None):
        self._write(name, dumps_csv(frame, kind, self.digits, extra_header), main)


def execute(scenario: ScenarioConfig, toolkit: CriticalMemoryToolkit) -> Dict[str, str]:
    """
    Run one scenario

    Returns:
        Artifact name -> path for files written (empty when emitting to stdout)
    """
    emit = _Emitter(scenario.output_dir, toolkit.config.float_digits)

    if scenario.task == "paper-example":
        emit.report("paper_example.json", toolkit.paper_example())

    elif scenario.task == "analyze":
        model = _resolve_model(scenario)
        report = toolkit.analyze(
            model, gapless_set=scenario.gapless, max_excited=scenario.max_excited,
            ds=scenario.ds, budgets=scenario.budgets,
        )
        emit.report("analysis.json", report)

    elif scenario.task == "evolve":
        model = _resolve_model(scenario)
        times = None
        if scenario.t_final is not None or scenario.points is not None:
            t_final = scenario.t_final if scenario.t_final is not None else np.pi / scenario.q
            points = scenario.points or toolkit.config.time_points
            times = np.linspace(0.0, t_final, points)
        run = toolkit.evolve(
            model, scenario.stimulus, scenario.q, initial=scenario.initial, engine=scenario.engine,
            excited_mode=scenario.excited_mode, times=times, cap=scenario.cap,
            number_input=scenario.number_input,
        )
        stimulus = run["stimulus"] if np.any(run["stimulus"] > 0) else None
        labels = ",".join(str(label) for label in run["result"].mode_labels)
        emit.table(
            "evolve.csv", run["result"].to_frame(stimulus), f"evolve-{scenario.engine}",
            extra_header=[f"initial={scenario.initial}", f"q={scenario.q}", f"mode_labels={labels}"],
        )
        emit.report("evolve_summary.json", run["summary"], main=False)

    elif scenario.task == "compare":
        model = _resolve_model(scenario)
        comparison = toolkit.compare(
            model, scenario.stimulus, scenario.q, excited_mode=scenario.excited_mode, cap=scenario.cap,
        )
        emit.table("compare_critical.csv", comparison["critical"].to_frame(comparison["critical_stimulus"]),
                   "compare-critical", main=False)
        emit.table("compare_ground.csv", comparison["ground"].to_frame(comparison["ground_stimulus"]),
                   "compare-ground", main=False)
        emit.report("compare_summary.json", comparison["summary"])

    elif scenario.task == "pack":
        packing = toolkit.pack(scenario.g, scenario.modes, scenario.budget, scenario.threshold, scenario.kappa)
        emit.report("pack.json", packing.to_dict())
        if scenario.sweep:
            frame = toolkit.pack_sweep(scenario.sweep, scenario.modes, scenario.budget,
                                       scenario.threshold, scenario.kappa)
            emit.table("pack_sweep.csv", frame, "pack-sweep", main=False)

    return emit.written


def _launch(config_path: Optional[str], build: Callable[[], Dict[str, Any]]):
    def action():
        data = build()
        scenario = build_scenario({k: v for k, v in data.items() if v is not None})
        toolkit = CriticalMemoryToolkit(config_path=config_path)
        written = execute(scenario, toolkit)
        for name, path in written.items():
            click.echo(f"Wrote {name}: {path}", err=True)

    _guarded(action)


def _model_options(func):
    func = click.option("--g", "g", type=float, help="Coupling of the uniform network")(func)
    func = click.option("--uniform", type=int, help="Use a uniform network with this many neurons")(func)
    func = click.option("--model", "-m", "model_path", help="Model file (JSON)")(func)
    return func


def _common_options(func):
    func = click.option("--output-dir", "-o", help="Directory for artifacts (stdout when omitted)")(func)
    func = click.option("--config", "-c", "config_path", help="Path to configuration file")(func)
    return func


@click.group()
@click.version_option(package_name="critical-memory")
def cli():
    """Critical-state memory toolkit CLI"""
    pass


@cli.command()
@_common_options
@_model_options
@click.option("--gapless", help="Comma-separated gapless modes (0-based); searched when omitted")
@click.option("--max-excited", default=1, show_default=True, help="Largest excited set tried by the search")
@click.option("--d", "ds", default="1,2,3", show_default=True, help="Comma-separated occupation caps")
@click.option("--budget", "budgets", default="1.0", show_default=True, help="Comma-separated gap budgets")
def analyze(config_path, output_dir, model_path, uniform, g, gapless, max_excited, ds, budgets):
    """Solve critical splits and count patterns"""
    _launch(config_path, lambda: {
        "task": "analyze",
        "model": _model_source(model_path, uniform, g),
        "gapless": _split_ints(gapless, "--gapless"),
        "max_excited": max_excited,
        "ds": _split_ints(ds, "--d"),
        "budgets": _split_floats(budgets, "--budget"),
        "output_dir": output_dir,
    })


@cli.command()
@_common_options
@_model_options
@click.option("--q", type=float, required=True, help="Input coupling")
@click.option("--stimulus", "-x", required=True, help="Comma-separated input occupations X_j")
@click.option("--initial", type=click.Choice(["critical", "ground"]), default="critical", show_default=True)
@click.option("--engine", type=click.Choice(["exact", "meanfield"]), default="exact", show_default=True)
@click.option("--excited-mode", default=0, show_default=True, help="Mode frozen in a critical run (0-based)")
@click.option("--t-final", type=float, help="Final time (default one Rabi period)")
@click.option("--points", type=int, help="Number of sample times")
@click.option("--cap", type=int, help="Occupation cap for stimulated channels")
@click.option("--number-input", is_flag=True, help="Use a number-state stimulus")
def evolve(config_path, output_dir, model_path, uniform, g, q, stimulus, initial, engine, excited_mode,
           t_final, points, cap, number_input):
    """Evolve the network under a stimulus and emit the time series"""
    _launch(config_path, lambda: {
        "task": "evolve",
        "model": _model_source(model_path, uniform, g),
        "q": q,
        "stimulus": _split_floats(stimulus, "--stimulus"),
        "initial": initial,
        "engine": engine,
        "excited_mode": excited_mode,
        "t_final": t_final,
        "points": points,
        "cap": cap,
        "number_input": number_input,
        "output_dir": output_dir,
    })


@cli.command()
@_common_options
@_model_options
@click.option("--q", type=float, required=True, help="Input coupling")
@click.option("--stimulus", "-x", required=True, help="Comma-separated input occupations X_j")
@click.option("--excited-mode", default=0, show_default=True, help="Mode frozen in the critical run (0-based)")
@click.option("--cap", type=int, help="Occupation cap for stimulated channels")
def compare(config_path, output_dir, model_path, uniform, g, q, stimulus, excited_mode, cap):
    """Compare critical and unexcited responses to the same stimulus"""
    _launch(config_path, lambda: {
        "task": "compare",
        "model": _model_source(model_path, uniform, g),
        "q": q,
        "stimulus": _split_floats(stimulus, "--stimulus"),
        "excited_mode": excited_mode,
        "cap": cap,
        "output_dir": output_dir,
    })


@cli.command()
@_common_options
@click.option("--g", "g", type=float, required=True, help="Uniform coupling")
@click.option("--modes", type=int, required=True, help="Gapless modes carrying the pattern")
@click.option("--budget", type=float, required=True, help="Gap budget")
@click.option("--threshold", type=float, help="Minimal squared distance between patterns")
@click.option("--kappa", type=float, help="Small-excursion factor")
@click.option("--sweep", help="Comma-separated couplings for a count-vs-g table")
def pack(config_path, output_dir, g, modes, budget, threshold, kappa, sweep):
    """Count distinguishable classical patterns within a gap budget"""
    _launch(config_path, lambda: {
        "task": "pack",
        "g": g,
        "modes": modes,
        "budget": budget,
        "threshold": threshold,
        "kappa": kappa,
        "sweep": _split_floats(sweep, "--sweep"),
        "output_dir": output_dir,
    })


@cli.command("paper-example")
@_common_options
def paper_example(config_path, output_dir):
    """Reproduce the worked six-neuron example"""
    _launch(config_path, lambda: {"task": "paper-example", "output_dir": output_dir})


@cli.command()
@click.option("--scenario", "-s", "scenario_path", required=True, help="Scenario file (JSON)")
@click.option("--config", "-c", "config_path", help="Path to configuration file")
@click.option("--set", "overrides", multiple=True, help="Override a scenario field, key=value")
def run(scenario_path, config_path, overrides):
    """Run a scenario file"""
    def action():
        scenario = load_scenario(scenario_path, parse_overrides(list(overrides)))
        toolkit = CriticalMemoryToolkit(config_path=config_path)
        written = execute(scenario, toolkit)
        for name, path in written.items():
            click.echo(f"Wrote {name}: {path}", err=True)

    _guarded(action)


def main():
    """Main CLI entry point"""
    cli()


if __name__ == "__main__":
    main()
