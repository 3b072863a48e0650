from __future__ import annotations

from sextic.database import find_exact_report, get_recent_reports, get_stats, init_db, store_report
from sextic.models import RunReport


def _report(command: str = "admissible", digest: str = "abc123", seed: int = 7, exit_code: int = 0) -> RunReport:
    return RunReport(
        command=command,
        input_digest=digest,
        seed=seed,
        exit_code=exit_code,
        summary="zulässig (triangle)",
        payload={"admissible": True},
    )


def test_store_and_find_report(db_path) -> None:
    init_db(db_path)
    store_report(_report(), db_path)
    found = find_exact_report("admissible", "abc123", 7, db_path)
    assert found == _report()


def test_cache_key_includes_seed(db_path) -> None:
    init_db(db_path)
    store_report(_report(), db_path)
    assert find_exact_report("admissible", "abc123", 8, db_path) is None
    assert find_exact_report("extreme", "abc123", 7, db_path) is None


def test_same_key_replaces_entry(db_path) -> None:
    init_db(db_path)
    store_report(_report(exit_code=0), db_path)
    store_report(_report(exit_code=1), db_path)
    assert find_exact_report("admissible", "abc123", 7, db_path).exit_code == 1
    assert get_stats(db_path)["total_reports"] == 1


def test_recent_reports_and_stats(db_path) -> None:
    init_db(db_path)
    store_report(_report(), db_path)
    store_report(_report(command="ten", digest="def456", exit_code=1), db_path)
    store_report(_report(command="ten", digest="0815", exit_code=2), db_path)

    recent = get_recent_reports(limit=2, db_path=db_path)
    assert [row["input_digest"] for row in recent] == ["0815", "def456"]
    assert "report_json" not in recent[0]

    stats = get_stats(db_path)
    assert stats["total_reports"] == 3
    assert stats["by_command"] == {"admissible": 1, "ten": 2}
    assert stats["by_exit_code"] == {0: 1, 1: 1, 2: 1}


def test_default_path_comes_from_config(db_path) -> None:
    # db_path-Fixture setzt config.DB_PATH
    init_db()
    store_report(_report())
    assert db_path.exists()
    assert find_exact_report("admissible", "abc123", 7) is not None
