"""
SexticLab – Database (Run-Report-Cache)
=======================================
Speichert abgeschlossene CLI-Läufe in einer SQLite-Datenbank, Schlüssel ist
(command, input_digest, seed). Ein gecachter Report wird unverändert
zurückgegeben, damit die Ausgabe deterministisch bleibt.

Die CLI liest und schreibt den Cache nur mit --cache.

Datenbank-Datei: SEXTIC_DB_PATH (Default: sextic_cache.db im Projektverzeichnis)
"""

import logging
import sqlite3
from datetime import datetime, timezone
from pathlib import Path
from typing import Optional

from sextic import config
from sextic.models import RunReport

logger = logging.getLogger(__name__)


def get_connection(db_path: Optional[Path] = None) -> sqlite3.Connection:
    """Erstellt eine SQLite-Verbindung mit WAL-Modus."""
    conn = sqlite3.connect(str(db_path or config.DB_PATH))
    conn.row_factory = sqlite3.Row
    conn.execute("PRAGMA journal_mode=WAL")
    return conn


def init_db(db_path: Optional[Path] = None):
    """Erstellt die Tabelle, falls sie nicht existiert."""
    conn = get_connection(db_path)
    try:
        conn.execute("""
            CREATE TABLE IF NOT EXISTS run_reports (
                id INTEGER PRIMARY KEY AUTOINCREMENT,
                command TEXT NOT NULL,
                input_digest TEXT NOT NULL,
                seed TEXT NOT NULL,
                exit_code INTEGER NOT NULL,
                report_json TEXT NOT NULL,
                created_at TEXT NOT NULL,
                UNIQUE (command, input_digest, seed)
            )
        """)
        conn.commit()
        logger.info(f"✅ Datenbank initialisiert: {db_path or config.DB_PATH}")
    finally:
        conn.close()


def store_report(report: RunReport, db_path: Optional[Path] = None) -> int:
    """
    Speichert einen Run-Report; ein vorhandener Eintrag mit gleichem
    Schlüssel wird ersetzt.

    Returns:
        Die ID des Eintrags
    """
    conn = get_connection(db_path)
    try:
        cursor = conn.execute("""
            INSERT OR REPLACE INTO run_reports
            (command, input_digest, seed, exit_code, report_json, created_at)
            VALUES (?, ?, ?, ?, ?, ?)
        """, (
            report.command,
            report.input_digest,
            str(report.seed),
            report.exit_code,
            report.model_dump_json(),
            datetime.now(timezone.utc).isoformat(),
        ))
        conn.commit()
        row_id = cursor.lastrowid
        logger.info(f"💾 Report gespeichert (ID: {row_id}, {report.command})")
        return row_id
    finally:
        conn.close()


def find_exact_report(
    command: str,
    input_digest: str,
    seed: int,
    db_path: Optional[Path] = None,
) -> Optional[RunReport]:
    """Gecachter Report für genau diesen Lauf oder None."""
    conn = get_connection(db_path)
    try:
        row = conn.execute("""
            SELECT report_json
            FROM run_reports
            WHERE command = ? AND input_digest = ? AND seed = ?
            LIMIT 1
        """, (command, input_digest, str(seed))).fetchone()
        if row is None:
            return None
        try:
            report = RunReport.model_validate_json(row["report_json"])
        except Exception as e:
            logger.warning(f"⚠️ Gecachter Report nicht lesbar: {e}")
            return None
        logger.info(f"💾 Report aus dem Cache ({command}, {input_digest[:12]}…)")
        return report
    finally:
        conn.close()


def get_recent_reports(limit: int = 10, db_path: Optional[Path] = None) -> list[dict]:
    """Gibt die letzten N Läufe zurück (ohne Payload)."""
    conn = get_connection(db_path)
    try:
        rows = conn.execute("""
            SELECT id, command, input_digest, seed, exit_code, created_at
            FROM run_reports
            ORDER BY id DESC
            LIMIT ?
        """, (limit,)).fetchall()
        return [dict(row) for row in rows]
    finally:
        conn.close()


def get_stats(db_path: Optional[Path] = None) -> dict:
    """Gibt Statistiken über den Cache zurück."""
    conn = get_connection(db_path)
    try:
        total = conn.execute("SELECT COUNT(*) FROM run_reports").fetchone()[0]
        by_command = conn.execute("""
            SELECT command, COUNT(*) as count
            FROM run_reports
            GROUP BY command
        """).fetchall()
        by_exit_code = conn.execute("""
            SELECT exit_code, COUNT(*) as count
            FROM run_reports
            GROUP BY exit_code
        """).fetchall()
        return {
            "total_reports": total,
            "by_command": {row["command"]: row["count"] for row in by_command},
            "by_exit_code": {row["exit_code"]: row["count"] for row in by_exit_code},
        }
    finally:
        conn.close()
