"""
Example Usage of the Critical Memory Toolkit

This script solves the six-neuron example, recalls a stimulus with both
engines and packs classical patterns, saving each result as JSON.
"""

import numpy as np

from critical_memory import CriticalMemoryToolkit
from critical_memory.network import bundled_model, uniform_model
from critical_memory.utils import write_csv, write_report


def main():
    """Example usage of the toolkit"""

    try:
        toolkit = CriticalMemoryToolkit(config_path="config.py")
    except Exception as e:
        print(f"Using default settings ({e})")
        toolkit = CriticalMemoryToolkit()

    # Example 1: critical split of the six-neuron network
    print("=== Example 1: Six-neuron critical state ===")
    try:
        report = toolkit.analyze(bundled_model("matrix_g"), gapless_set=[3, 4, 5], ds=(1, 2, 3))
        split = report["splits"][0]
        print(f"Excitation levels: {split['xi']}")
        print(f"Largest effective gap: {max(abs(v) for v in split['effective_gaps']):.3e}")
        write_report(report, "example_analysis.json")
        print("Analysis saved to example_analysis.json")
    except Exception as e:
        print(f"Error analyzing network: {e}")

    # Example 2: recall with both engines
    print("\n=== Example 2: Recall from the critical state ===")
    model = uniform_model(3, 1e-3)
    stimulus = [0.0, 0.5, 0.5]
    q = 0.05
    try:
        for engine in ("meanfield", "exact"):
            run = toolkit.evolve(model, stimulus, q, engine=engine)
            summary = run["summary"]
            print(f"{engine}: fidelity {summary['final_fidelity']:.6f} after {summary['steps']} steps")
            write_csv(run["result"].to_frame(run["stimulus"]), f"example_{engine}.csv", f"evolve-{engine}")
        print("Time series saved to example_meanfield.csv and example_exact.csv")
    except Exception as e:
        print(f"Error evolving network: {e}")

    # Example 3: critical versus unexcited response
    print("\n=== Example 3: Comparing responses ===")
    try:
        comparison = toolkit.compare(model, stimulus, q)
        summary = comparison["summary"]
        print(f"Unexcited peak ratio: {summary['peak_ratio']:.6g} (expected {summary['expected_peak_ratio']:.6g})")
        write_report(summary, "example_compare.json")
    except Exception as e:
        print(f"Error comparing responses: {e}")

    # Example 4: classical packing versus coupling
    print("\n=== Example 4: Packing classical patterns ===")
    try:
        frame = toolkit.pack_sweep(np.geomspace(0.02, 0.005, 5), modes=3, budget=0.1)
        for row in frame.itertuples():
            print(f"  g={row.g:.4g}: {row.count} patterns")
    except Exception as e:
        print(f"Error packing patterns: {e}")


if __name__ == "__main__":
    main()
