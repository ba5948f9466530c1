#!/usr/bin/env python3
"""
Run Verifier - Script di avvio per il verificatore

Inoltra gli argomenti alla riga di comando nonadditive-verifier.
Esempio: python scripts/run_verifier.py verify small9
"""

import sys
from pathlib import Path

# src/ nel path quando il package non è installato
sys.path.insert(0, str(Path(__file__).parent.parent / "src"))

try:
    from cli.verifier_cli import run

    if __name__ == "__main__":
        sys.exit(run(sys.argv[1:]))

except ImportError as e:
    print(f"❌ Errore import: {e}", file=sys.stderr)
    print("Assicurati che il package sia installato in modalità editable:", file=sys.stderr)
    print("pip install -e .", file=sys.stderr)
    print("Oppure installa le dipendenze:", file=sys.stderr)
    print("pip install numpy tqdm", file=sys.stderr)
    sys.exit(2)
