#!/usr/bin/env python3
"""
Session Logger - Logging delle esecuzioni del verificatore

Registra le attività di una esecuzione (comando, passi, errori) e le
salva in un file di sessione accanto al report JSON. Timestamp e durate
stanno solo qui, mai nel report canonico.
"""

import json
import sys
from datetime import datetime
from pathlib import Path
from typing import Any, Dict, Optional, Union

from core.artifact_manager import ArtifactManager


class SessionLogger:
    """Gestore logging delle esecuzioni"""

    def __init__(self, command: str, report_path: Optional[Union[str, Path]] = None):
        """
        Inizializza il logger della sessione

        Args:
            command: Sottocomando eseguito (es. 'verify', 'lpbound')
            report_path: Path del report JSON; il log va in <report>.session.json
        """
        self.command = command
        self.session_id = datetime.now().strftime("%Y%m%d_%H%M%S")
        self.session_start = datetime.now().isoformat()
        self.log_file_path: Optional[Path] = None

        self.session_data = {
            "session_info": {
                "session_id": self.session_id,
                "command": command,
                "start_time": self.session_start,
                "end_time": None,
                "report_path": None,
                "total_duration_seconds": 0,
            },
            "activities": [],
            "statistics": {
                "steps": 0,
                "errors_checked": 0,
                "violations": 0,
                "errors_logged": 0,
            },
        }

        if report_path:
            self.set_report_path(report_path)

    def set_report_path(self, report_path: Union[str, Path]):
        """Imposta il report e configura il file di sessione"""
        self.session_data["session_info"]["report_path"] = str(report_path)
        self.log_file_path = ArtifactManager.sidecar_path(report_path)
        self._save_log()

    def log_activity(self, activity_type: str, details: Dict[str, Any] = None):
        """
        Registra un'attività nella sessione

        Args:
            activity_type: Tipo di attività (es. 'run_start', 'step', 'error')
            details: Dettagli specifici dell'attività
        """
        if details is None:
            details = {}

        self.session_data["activities"].append({
            "timestamp": datetime.now().isoformat(),
            "type": activity_type,
            "details": details,
        })
        self._update_statistics(activity_type, details)

        if self.log_file_path:
            self._save_log()

    def _update_statistics(self, activity_type: str, details: Dict[str, Any]):
        stats = self.session_data["statistics"]
        if activity_type == "step":
            stats["steps"] += 1
            stats["errors_checked"] += details.get("errors_checked", 0)
            stats["violations"] += details.get("violations", 0)
        elif activity_type == "error":
            stats["errors_logged"] += 1

    def log_run_start(self, inputs: Dict[str, Any]):
        self.log_activity("run_start", {"command": self.command, "inputs": inputs})

    def log_step(self, name: str, errors_checked: int = 0, violations: int = 0,
                 elapsed_ms: Optional[int] = None):
        """Log di un passo di verifica (costruzione, sweep, LP...)"""
        details: Dict[str, Any] = {
            "name": name,
            "errors_checked": errors_checked,
            "violations": violations,
        }
        if elapsed_ms is not None:
            details["elapsed_ms"] = elapsed_ms
        self.log_activity("step", details)

    def log_error(self, error_type: str, error_message: str, context: Dict[str, Any] = None):
        """Log errori"""
        details = {
            "error_type": error_type,
            "error_message": error_message,
        }
        if context:
            details["context"] = context

        self.log_activity("error", details)

    def end_session(self, exit_code: int):
        """Termina la sessione e salva i dati finali"""
        end_dt = datetime.now()
        self.session_data["session_info"]["end_time"] = end_dt.isoformat()
        duration = (end_dt - datetime.fromisoformat(self.session_start)).total_seconds()
        self.session_data["session_info"]["total_duration_seconds"] = round(duration, 2)

        self.log_activity("run_end", {
            "exit_code": exit_code,
            "duration_seconds": round(duration, 2),
            "total_activities": len(self.session_data["activities"]),
        })

    def _save_log(self):
        """Salva il log su file"""
        if not self.log_file_path:
            return

        try:
            self.log_file_path.parent.mkdir(parents=True, exist_ok=True)
            with open(self.log_file_path, "w", encoding="utf-8") as f:
                json.dump(self.session_data, f, indent=2, ensure_ascii=False)
        except OSError as e:
            print(f"Errore salvataggio log sessione: {e}", file=sys.stderr)

    def get_session_summary(self) -> Dict[str, Any]:
        """Restituisce un riassunto della sessione corrente"""
        return {
            "session_id": self.session_id,
            "command": self.command,
            "start_time": self.session_start,
            "activities_count": len(self.session_data["activities"]),
            "statistics": dict(self.session_data["statistics"]),
            "log_file": str(self.log_file_path) if self.log_file_path else None,
        }
