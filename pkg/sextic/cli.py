"""
SexticLab – Kommandozeile
=========================
Das Frontend: Punktmengen und Formen als JSON (Pfad oder inline) bzw.
Text, Ausgabe als lesbarer Report oder mit --json als RunReport.

Befehle:
    admissible, extreme, coble, eight, ten, verify-psd, examples run|list,
    history, stats

Exit-Codes: 0 positive Antwort, 1 negative Antwort, 2 ungültige Eingabe
oder nicht unterstützter Fall.

Nutzung:
    python -m sextic admissible eval/points/triangle.json
    python -m sextic extreme '{"points": [["0","1","1"], ...]}' --json
    python -m sextic verify-psd "x^6 + y^6 + z^6 - x^4*y^2 - ..."
    python -m sextic examples run --only 5.3
"""

import argparse
import json
import logging
import sys
import time
from pathlib import Path
from typing import Any, Optional

from pydantic import ValidationError
from sympy import Symbol

from sextic import config
from sextic.coble import coble_nonic, verify_triple_points
from sextic.constructions import check_ten_point_set, psd_nonsos_through_eight
from sextic.database import find_exact_report, get_recent_reports, get_stats, init_db, store_report
from sextic.errors import InvalidInputError, NotAdmissibleError, SexticError, UnsupportedCaseError
from sextic.examples import list_examples, run_examples
from sextic.exact_arith import X, FieldElement, RealAlgebraicNumber, rational_str
from sextic.extreme_pencil import verify_psd
from sextic.graph import check_admissible, extreme_sextic
from sextic.models import DisplayValue, FormDocument, OutcomeKind, PointSetDocument, RunReport
from sextic.seeding import input_digest, make_rng, seed_for
from sextic.ternary_forms import ProjectivePoint, TernaryForm, parse_form

logger = logging.getLogger(__name__)

EXIT_POSITIVE = 0
EXIT_NEGATIVE = 1
EXIT_INVALID = 2


# ---------------------------------------------------------------------------
# Eingabe
# ---------------------------------------------------------------------------

def _read_source(value: str) -> str:
    """Dateiinhalt, falls value ein existierender Pfad ist, sonst value selbst."""
    path = Path(value)
    try:
        is_file = path.is_file()
    except OSError:
        # kein gültiger Pfadname (z.B. langes inline-JSON)
        return value
    if not is_file:
        return value
    try:
        return path.read_text(encoding="utf-8")
    except OSError as e:
        raise InvalidInputError(f"Datei nicht lesbar: {value} ({e})") from e


def load_points(value: str) -> list[ProjectivePoint]:
    """
    Liest ein PointSetDocument aus einer Datei oder aus inline-JSON.
    Eine nackte Liste von Tripeln wird ebenfalls akzeptiert.

    Raises:
        InvalidInputError: bei I/O-, JSON- oder Schemafehlern
    """
    text = _read_source(value)
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise InvalidInputError(f"Ungültiges JSON: {e}") from e
    if isinstance(data, list):
        data = {"points": data}
    try:
        document = PointSetDocument.model_validate(data)
    except ValidationError as e:
        raise InvalidInputError(f"Kein gültiges Punktdokument: {e.error_count()} Fehler") from e
    return document.to_points()


def load_form(value: str) -> TernaryForm:
    """Form aus Datei oder inline: JSON-Formdokument oder Textformat."""
    text = _read_source(value).strip()
    if text.startswith("{"):
        try:
            return FormDocument.model_validate_json(text).to_form()
        except ValidationError as e:
            raise InvalidInputError(f"Kein gültiges Formdokument: {e.error_count()} Fehler") from e
    return parse_form(text)


# ---------------------------------------------------------------------------
# Anzeige
# ---------------------------------------------------------------------------

def real_display(label: str, r: RealAlgebraicNumber, digits: int) -> DisplayValue:
    if r.is_rational:
        exact = rational_str(r.rational_value)
    else:
        exact = f"Wurzel von {r.defining.as_expr()} in [{r.lo}, {r.hi}]"
    return DisplayValue(label=label, exact=exact, approx=r.approx(digits), error_bound=r.error_bound(digits))


def field_display(label: str, x: FieldElement, digits: int) -> DisplayValue:
    """Element von Q(θ) als Ausdruck in θ, dazu θ selbst als isolierte Wurzel."""
    real = x.to_real()
    exact = x.expression("θ")
    theta = x.field.embedding
    if theta is not None and not x.field.is_rational:
        defining = theta.defining.as_expr().subs(X, Symbol("θ"))
        exact += f", θ = Wurzel von {defining} in [{theta.lo}, {theta.hi}]"
    return DisplayValue(label=label, exact=exact, approx=real.approx(digits), error_bound=real.error_bound(digits))


def point_display(label: str, p, digits: int) -> list[DisplayValue]:
    if isinstance(p, ProjectivePoint):
        return [DisplayValue(label=label, exact=str(p), approx=str(p), error_bound="0")]
    values = []
    for i, (c, r) in enumerate(zip(p.coords, p.real_coords())):
        exact = c.expression("θ") if not c.is_rational else rational_str(c.rational_value)
        values.append(
            DisplayValue(label=f"{label}[{i}]", exact=exact, approx=r.approx(digits), error_bound=r.error_bound(digits))
        )
    return values


def print_report(report: RunReport) -> None:
    icon = {EXIT_POSITIVE: "✅", EXIT_NEGATIVE: "⚠️"}.get(report.exit_code, "❌")
    print(f"\n{'='*60}")
    print(f"  SexticLab {report.command} – {icon} {report.summary}")
    print(f"{'='*60}")
    for value in report.display:
        bound = "" if value.error_bound == "0" else f" (± {value.error_bound})"
        print(f"  {value.label} = {value.exact}")
        if value.approx != value.exact:
            print(f"      ≈ {value.approx}{bound}")
    if report.seed_overridden:
        print(f"  ⚠️ Seed überschrieben: {report.seed}")
    if report.wall_time_seconds is not None:
        print(f"  Laufzeit: {report.wall_time_seconds:.1f}s")
    print()


# ---------------------------------------------------------------------------
# Befehle
# ---------------------------------------------------------------------------

def cmd_admissible(points, seed: int, digits: int) -> tuple[int, str, dict, list]:
    certificate = check_admissible(points, seed)
    payload = certificate.model_dump(mode="json")
    if certificate.admissible:
        return EXIT_POSITIVE, f"zulässig ({certificate.cubic.type_tag.value})", payload, []
    detail = f": {certificate.detail}" if certificate.detail else ""
    return EXIT_NEGATIVE, f"nicht zulässig – {certificate.reason.value}{detail}", payload, []


def cmd_extreme(
    points, seed: int, digits: int, generator: Optional[TernaryForm] = None
) -> tuple[int, str, dict, list]:
    try:
        result = extreme_sextic(points, seed, generator)
    except NotAdmissibleError as e:
        certificate = e.certificate
        payload = certificate.model_dump(mode="json") if certificate is not None else {}
        reason = certificate.reason.value if certificate is not None else str(e)
        return EXIT_NEGATIVE, f"nicht zulässig – {reason}", payload, []
    payload = result.model_dump(mode="json")
    payload["qS"] = result.q_s_json()
    if result.s_exact is not None and not result.s.is_rational:
        display = [field_display("s", result.s_exact, digits)]
    else:
        display = [real_display("s", result.s, digits)]
    if result.outcome is OutcomeKind.TENTH_ZERO:
        display += point_display("zehnte Nullstelle", result.tenth_zero, digits)
        summary = "q_S berechnet, zehnte reelle Nullstelle"
    else:
        display += point_display("A3-Punkt", result.a3_point, digits)
        summary = f"q_S berechnet, A3-Singularität an {result.a3_point}"
    return EXIT_POSITIVE, summary, payload, display


def cmd_coble(points, seed: int, digits: int) -> tuple[int, str, dict, list]:
    nonic = coble_nonic(points)
    triple = verify_triple_points(nonic)
    payload = nonic.model_dump(mode="json")
    payload["triple_points_verified"] = triple
    display = [DisplayValue(label="N_T", exact=nonic.form.to_text(), approx=nonic.form.to_text(), error_bound="0")]
    if triple:
        return EXIT_POSITIVE, "Coble-Nonik berechnet, Tripelpunkte bestätigt", payload, display
    return EXIT_NEGATIVE, "Tripelpunkte nicht bestätigt", payload, display


def cmd_eight(points, seed: int, digits: int) -> tuple[int, str, dict, list]:
    sextic = psd_nonsos_through_eight(points, seed)
    payload = sextic.model_dump(mode="json")
    display = [DisplayValue(label="g", exact=sextic.form.to_text(), approx=sextic.form.to_text(), error_bound="0")]
    return EXIT_POSITIVE, f"psd Sextik, nicht sos ({sextic.method.value})", payload, display


def cmd_ten(points, seed: int, digits: int) -> tuple[int, str, dict, list]:
    outcome = check_ten_point_set(points, seed)
    payload = outcome.model_dump(mode="json")
    if outcome.possible:
        form = outcome.form.to_text()
        display = [DisplayValue(label="q", exact=form, approx=form, error_bound="0")]
        return EXIT_POSITIVE, "psd Sextik mit zehn Nullstellen gefunden", payload, display
    return EXIT_NEGATIVE, f"unmöglich – {outcome.reason}", payload, []


def cmd_verify_psd(form: TernaryForm, seed: int, digits: int) -> tuple[int, str, dict, list]:
    verdict = verify_psd(form, rng=make_rng("verify-psd", form, seed=seed))
    payload = verdict.model_dump(mode="json")
    if verdict.psd:
        return EXIT_POSITIVE, "psd", payload, []
    display = []
    if verdict.witness is not None:
        display = point_display("Zeuge", verdict.witness, digits)
        display.append(DisplayValue(
            label="Wert",
            exact=rational_str(verdict.witness_value),
            approx=rational_str(verdict.witness_value),
            error_bound="0",
        ))
    return EXIT_NEGATIVE, "nicht psd", payload, display


POINT_COMMANDS = {
    "admissible": cmd_admissible,
    "extreme": cmd_extreme,
    "coble": cmd_coble,
    "eight": cmd_eight,
    "ten": cmd_ten,
}


def run_command(args: argparse.Namespace) -> RunReport:
    """
    Führt einen Rechenbefehl aus und baut den RunReport.
    Ungültige Eingaben, nicht unterstützte Fälle und interne Fehler ergeben
    Exit-Code 2.
    """
    digits = args.precision
    overridden = args.seed_override is not None or config.SEED_OVERRIDE is not None
    start = time.time()
    data: Any = None
    seed = 0
    digest = input_digest(args.command, args.input)
    try:
        data = load_form(args.input) if args.command == "verify-psd" else load_points(args.input)
        options = {}
        if getattr(args, "generator", None):
            options["generator"] = load_form(args.generator)
        digest = input_digest(args.command, data, *options.values())
        seed = seed_for(data, override=args.seed_override)
        if args.cache:
            init_db()
            cached = find_exact_report(args.command, digest, seed)
            if cached is not None:
                return cached
        handler = cmd_verify_psd if args.command == "verify-psd" else POINT_COMMANDS[args.command]
        exit_code, summary, payload, display = handler(data, seed, digits, **options)
    except (InvalidInputError, UnsupportedCaseError) as e:
        logger.error(f"❌ {type(e).__name__}: {e}")
        exit_code, summary, payload, display = EXIT_INVALID, str(e), {"error": type(e).__name__}, []
    except SexticError as e:
        logger.error(f"❌ Interner Fehler: {type(e).__name__}: {e}")
        exit_code, summary, payload, display = EXIT_INVALID, str(e), {"error": type(e).__name__}, []
    except Exception as e:
        logger.exception(f"❌ Unerwarteter Fehler: {type(e).__name__}: {e}")
        exit_code, summary, payload, display = EXIT_INVALID, f"Interner Fehler: {e}", {"error": type(e).__name__}, []

    report = RunReport(
        command=args.command,
        input_digest=digest,
        seed=seed,
        seed_overridden=overridden,
        exit_code=exit_code,
        summary=summary,
        payload=payload,
        display=display,
        wall_time_seconds=round(time.time() - start, 3) if args.timing else None,
    )
    if args.cache and data is not None and exit_code != EXIT_INVALID:
        store_report(report)
    return report


def cmd_examples(args: argparse.Namespace) -> int:
    if args.action == "list":
        for example_id, name, title in list_examples():
            print(f"{example_id}  {name:<10} {title}")
        return EXIT_POSITIVE
    only = [key.strip() for key in args.only.split(",")] if args.only else None
    try:
        result = run_examples(only=only)
    except KeyError as e:
        logger.error(f"❌ {e}")
        return EXIT_INVALID
    if args.json:
        print(result.model_dump_json(indent=2))
    else:
        print(f"\n{'='*60}")
        print(f"  SexticLab Beispiele – {len(result.examples)} Beispiele")
        print(f"{'='*60}\n")
        for example in result.examples:
            print(f"[{example.example_id}] {example.title} {'✅' if example.passed else '❌'}")
            for check in example.checks:
                detail = f" ({check.detail})" if check.detail else ""
                print(f"  {'✅' if check.passed else '❌'} {check.name}{detail}")
            print()
    return EXIT_POSITIVE if result.passed else EXIT_NEGATIVE


def cmd_history(args: argparse.Namespace) -> int:
    init_db()
    if args.command == "stats":
        stats = get_stats()
        print(json.dumps(stats, indent=2) if args.json else f"📊 {stats['total_reports']} Läufe im Cache")
        if not args.json:
            for command, count in stats["by_command"].items():
                print(f"  - {command}: {count}")
        return EXIT_POSITIVE
    recent = get_recent_reports(limit=args.limit)
    if args.json:
        print(json.dumps(recent, indent=2))
        return EXIT_POSITIVE
    if not recent:
        print("📋 Noch keine Läufe im Cache.")
    for row in recent:
        print(f"- {row['created_at'][:19]} {row['command']} {row['input_digest'][:12]} → {row['exit_code']}")
    return EXIT_POSITIVE


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="Maschinenlesbare Ausgabe (RunReport als JSON)")
    common.add_argument("--precision", type=int, default=config.DISPLAY_PRECISION, help="Nachkommastellen der Anzeige")
    common.add_argument("--seed-override", type=int, default=None, help="Seed erzwingen (nur zum Debuggen)")
    common.add_argument("--cache", action="store_true", help="Reports im SQLite-Cache lesen/schreiben")
    common.add_argument("--timing", action="store_true", help="Laufzeit in den Report aufnehmen")

    parser = argparse.ArgumentParser(prog="sextic", description="SexticLab – extreme psd Sextiken zu neun Punkten")
    commands = parser.add_subparsers(dest="command", required=True)
    for name, help_text in (
        ("admissible", "Zulässigkeit von neun Punkten"),
        ("extreme", "Extreme Sextik q_S einer zulässigen Menge"),
        ("coble", "Coble-Nonik zu acht Punkten"),
        ("eight", "psd, nicht-sos Sextik durch acht Punkte"),
        ("ten", "psd Sextik mit zehn vorgegebenen Nullstellen?"),
        ("verify-psd", "Exakter psd-Test einer Form (Text oder JSON)"),
    ):
        sub = commands.add_parser(name, parents=[common], help=help_text)
        sub.add_argument("input", help="Pfad oder inline-JSON (verify-psd auch Textformat)")
        if name == "extreme":
            sub.add_argument(
                "--generator",
                default=None,
                help="Erzeuger q aus span(f², q), auf den sich s bezieht (Text, JSON oder Pfad)",
            )

    examples = commands.add_parser("examples", parents=[common], help="Durchgerechnete Beispiele")
    examples.add_argument("action", choices=["run", "list"])
    examples.add_argument("--only", default=None, help="Komma-getrennte Nummern oder Kurznamen, z.B. 5.1,5.3")

    history = commands.add_parser("history", parents=[common], help="Letzte Läufe im Cache")
    history.add_argument("--limit", type=int, default=10)
    commands.add_parser("stats", parents=[common], help="Statistik des Caches")
    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=getattr(logging, config.LOG_LEVEL, logging.INFO))

    if args.command == "examples":
        return cmd_examples(args)
    if args.command in ("history", "stats"):
        return cmd_history(args)

    report = run_command(args)
    if args.json:
        print(report.model_dump_json(indent=2))
    else:
        print_report(report)
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
