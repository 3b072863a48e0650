"""
SexticLab – Beispiel-Runner
===========================
Prüft alle durchgerechneten Beispiele aus eval/examples.json und schreibt
die Ergebnisse nach eval/examples_results.json.

Nutzung:
    python -m eval.run_examples
    python -m eval.run_examples --only 5.1,5.3
"""

import argparse
import json
import logging
import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent.parent))

from dotenv import load_dotenv
load_dotenv()

from sextic import config
from sextic.examples import list_examples, load_fixtures, run_example

logging.basicConfig(level=getattr(logging, config.LOG_LEVEL, logging.INFO))
logger = logging.getLogger(__name__)


def run_evaluation(only: list[str] | None = None) -> bool:
    """Führt die Beispiele aus, gibt eine Zusammenfassung aus und speichert sie."""
    fixtures = load_fixtures()
    ids = [
        example_id for example_id, name, _ in list_examples(fixtures)
        if not only or example_id in only or name in only
    ]
    total = len(ids)

    print(f"\n{'='*60}")
    print(f"  SexticLab Beispiele – {total} Beispiele")
    print(f"{'='*60}\n")

    results = []
    passed_count = 0
    for i, example_id in enumerate(ids, 1):
        start = time.time()
        report = run_example(example_id, fixtures)
        elapsed = time.time() - start
        failed = [c for c in report.checks if not c.passed]
        if report.passed:
            passed_count += 1

        print(f"[{i}/{total}] {example_id} {report.title}")
        print(f"  Checks: {len(report.checks) - len(failed)}/{len(report.checks)} "
              f"{'✅' if report.passed else '❌'} ({elapsed:.1f}s)")
        for check in failed:
            print(f"  ❌ {check.name}: {check.detail}")
        print()

        results.append({
            "id": example_id,
            "title": report.title,
            "passed": report.passed,
            "checks": [c.model_dump() for c in report.checks],
            "time_seconds": round(elapsed, 1),
        })

    print(f"{'='*60}")
    print(f"  Bestanden: {passed_count}/{total}")
    print(f"{'='*60}")

    output_path = Path(__file__).parent / "examples_results.json"
    with open(output_path, "w", encoding="utf-8") as f:
        json.dump({
            "passed": passed_count,
            "total": total,
            "results": results,
        }, f, indent=2, ensure_ascii=False)
    print(f"\nErgebnisse gespeichert in: {output_path}")
    return passed_count == total


if __name__ == "__main__":
    parser = argparse.ArgumentParser(description="SexticLab Beispiel-Runner")
    parser.add_argument("--only", help="Komma-getrennte Beispiel-IDs, Nummer oder Kurzname, z.B. 5.1,5.3 oder elliptic,a3")
    args = parser.parse_args()
    ok = run_evaluation(only=args.only.split(",") if args.only else None)
    sys.exit(0 if ok else 1)
