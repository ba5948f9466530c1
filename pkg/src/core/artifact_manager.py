#!/usr/bin/env python3
"""
Artifact Manager - Gestione della cartella dati e dei file JSON

Tutti i file prodotti (grafo G_1 congelato, report, export) sono JSON
canonici: chiavi ordinate, indentazione 2, UTF-8, newline finale. Nessun
timestamp nel payload: data e durata vanno nel file di sessione accanto.
"""

import json
import sys
from pathlib import Path
from typing import Any, Dict, Optional, Union

SCHEMA = "nonadditive-verifier/1"
SIDECAR_SUFFIX = ".session.json"


class ArtifactManager:
    """Gestore degli artefatti del verificatore"""

    def __init__(self, data_dir: Optional[Union[str, Path]] = None):
        """
        Inizializza il gestore

        Args:
            data_dir: Cartella dei dati congelati (default: ./data nella radice del repository)
        """
        if data_dir is None:
            data_dir = Path(__file__).parent.parent.parent / "data"
        self.data_dir = Path(data_dir)

    def path(self, name: Union[str, Path]) -> Path:
        """Path assoluti restano invariati, i nomi sono relativi alla cartella dati"""
        name = Path(name)
        return name if name.is_absolute() else self.data_dir / name

    @staticmethod
    def canonical_dumps(payload: Any) -> str:
        return json.dumps(payload, sort_keys=True, indent=2, ensure_ascii=False) + "\n"

    @staticmethod
    def with_schema(kind: str, payload: Dict[str, Any]) -> Dict[str, Any]:
        """Aggiunge il tag di schema versionato"""
        return {"schema": SCHEMA, "kind": kind, **payload}

    def write_json(self, name: Union[str, Path], payload: Any) -> Path:
        target = self.path(name)
        target.parent.mkdir(parents=True, exist_ok=True)
        with open(target, "w", encoding="utf-8") as f:
            f.write(self.canonical_dumps(payload))
        return target

    def read_json(self, name: Union[str, Path]) -> Optional[Any]:
        """Contenuto del file, None se manca o non è leggibile"""
        source = self.path(name)
        if not source.exists():
            return None
        try:
            with open(source, "r", encoding="utf-8") as f:
                return json.load(f)
        except (OSError, json.JSONDecodeError) as e:
            print(f"Errore lettura {source}: {e}", file=sys.stderr)
            return None

    @staticmethod
    def sidecar_path(report_path: Union[str, Path]) -> Path:
        report_path = Path(report_path)
        return report_path.with_name(report_path.name + SIDECAR_SUFFIX)
