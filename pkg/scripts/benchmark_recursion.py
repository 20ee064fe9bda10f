"""
Benchmark the moduli recursion
Times moduli_betti from a cold memo table, e.g. for the rank-4 scale check

Usage:
    python scripts/benchmark_recursion.py --rank 4 --genus 2 --circles 1 --repeat 3
"""

import argparse
import sys
import time
from pathlib import Path
from typing import Dict

# Add project root to path
project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))

import numpy as np

from realbetti.config import initialize_directories, settings
from realbetti.engine.curves import validate_topology
from realbetti.engine.recursion import RecursionEngine
from realbetti.engine.series import is_palindromic
from realbetti.utils.logger import logger


def benchmark(rank: int, degree: int, genus: int, circles: int, repeat: int) -> Dict:
    """Run the recursion `repeat` times, each on a fresh engine without disk cache"""
    topo = validate_topology(genus, circles)
    times = []
    result = None
    for i in range(repeat):
        engine = RecursionEngine(settings, cache=None)
        start = time.perf_counter()
        result = engine.moduli_betti(rank, degree, topo, allow_a0=circles == 0)
        times.append(time.perf_counter() - start)
        logger.debug(f"Run {i + 1}/{repeat}: {times[-1]:.3f}s, memo size {engine.memo_size}")

    return {
        "result": result,
        "mean": float(np.mean(times)),
        "std": float(np.std(times)),
        "min": float(np.min(times)),
        "max": float(np.max(times)),
    }


def main():
    parser = argparse.ArgumentParser(description="Benchmark the moduli recursion")
    parser.add_argument("--rank", type=int, default=4, help="Rank r")
    parser.add_argument("--degree", type=int, default=1, help="Degree d, coprime to r")
    parser.add_argument("--genus", type=int, default=2, help="Genus g >= 2")
    parser.add_argument("--circles", type=int, default=1, help="Number of real circles a")
    parser.add_argument("--repeat", type=int, default=3, help="Number of cold runs")
    args = parser.parse_args()

    initialize_directories()
    logger.set_level("INFO")

    logger.info("=" * 60)
    logger.info(f"Recursion benchmark r={args.rank} d={args.degree} g={args.genus} a={args.circles}")
    logger.info("=" * 60)

    stats = benchmark(args.rank, args.degree, args.genus, args.circles, args.repeat)
    polynomial = stats["result"].polynomial

    logger.info(f"P(t) = {polynomial.as_text()}")
    logger.info(f"Degree {polynomial.degree}, palindromic: {is_palindromic(polynomial)}")
    logger.info(f"{'Mean (s)':<12} {'Std (s)':<12} {'Min (s)':<12} {'Max (s)':<12}")
    logger.info(f"{stats['mean']:<12.3f} {stats['std']:<12.3f} {stats['min']:<12.3f} {stats['max']:<12.3f}")


if __name__ == "__main__":
    main()
