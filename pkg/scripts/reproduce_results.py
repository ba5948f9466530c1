#!/usr/bin/env python3
"""
Script per riprodurre tutti i risultati in batch.

Esegue in ordine: parametri m = 0, 1; verifica dei codici seme, della
famiglia di Gottesman (r = 1, 2) e dei codici incollati m = 1; replay del
teorema e LP ristretto per n = 41, 42. Ogni report va in <output>/<nome>.json
con il relativo file di sessione accanto.
"""

import argparse
import sys
from pathlib import Path

from tqdm import tqdm

sys.path.insert(0, str(Path(__file__).parent.parent / "src"))

from cli.verifier_cli import run  # noqa: E402

RUNS = [
    ("params_m0_a0", ["params", "--m", "0", "--a", "0"]),
    ("params_m1_a0", ["params", "--m", "1", "--a", "0"]),
    ("params_m1_a1", ["params", "--m", "1", "--a", "1"]),
    ("verify_small9", ["verify", "small9"]),
    ("verify_small10", ["verify", "small10"]),
    ("verify_gottesman_r1", ["verify", "gottesman", "--r", "1"]),
    ("verify_gottesman_r2", ["verify", "gottesman", "--r", "2"]),
    ("verify_pasted_m1_a0", ["verify", "pasted", "--m", "1", "--a", "0"]),
    ("verify_pasted_m1_a1", ["verify", "pasted", "--m", "1", "--a", "1"]),
    ("lpbound_41_theorem", ["lpbound", "--n", "41", "--mode", "theorem"]),
    ("lpbound_42_theorem", ["lpbound", "--n", "42", "--mode", "theorem"]),
    ("lpbound_41_s7", ["lpbound", "--n", "41", "--mode", "lp", "--s", "7"]),
    ("lpbound_41_s8", ["lpbound", "--n", "41", "--mode", "lp", "--s", "8"]),
    ("lpbound_42_s7", ["lpbound", "--n", "42", "--mode", "lp", "--s", "7"]),
]


def main():
    parser = argparse.ArgumentParser(description="Riproduce tutti i risultati del verificatore")
    parser.add_argument("--output", "-o", default="results",
                        help="Directory dei report JSON")
    parser.add_argument("--threads", "-t", type=int, default=1,
                        help="Worker paralleli per le sweep")
    parser.add_argument("--data-dir", help="Cartella dei dati congelati")
    args = parser.parse_args()

    output = Path(args.output).resolve()
    output.mkdir(parents=True, exist_ok=True)
    failures = []

    for name, argv in tqdm(RUNS, desc="Esecuzioni", file=sys.stderr):
        extra = ["--threads", str(args.threads), "--no-progress",
                 "--json", str(output / f"{name}.json")]
        if args.data_dir:
            extra += ["--data-dir", args.data_dir]
        code = run(argv + extra)
        if code != 0:
            failures.append((name, code))

    print(f"\n📊 {len(RUNS) - len(failures)}/{len(RUNS)} esecuzioni riuscite", file=sys.stderr)
    for name, code in failures:
        print(f"❌ {name}: codice di uscita {code}", file=sys.stderr)
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
