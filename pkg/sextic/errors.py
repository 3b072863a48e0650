"""
SexticLab – Fehlerklassen
=========================
Gemeinsame Exceptions aller Module. Pipelines fangen sie in den
Graph-Nodes ab, legen sie im State unter "error" ab und lassen sie
von der öffentlichen Funktion erneut auslösen.
"""

from __future__ import annotations

from typing import Any


class SexticError(Exception):
    """Basisklasse aller SexticLab-Fehler."""


class InvalidInputError(SexticError, ValueError):
    """Eingabe verletzt eine Vorbedingung (Grad, Duplikate, Parserfehler, ...)."""


class NotAdmissibleError(SexticError):
    """Die Punktmenge ist nicht zulässig; das Zertifikat hängt am Fehler."""

    def __init__(self, message: str, certificate: Any = None):
        super().__init__(message)
        self.certificate = certificate


class UnsupportedCaseError(SexticError):
    """Fall liegt ausserhalb des implementierten Umfangs."""


class InconsistencyError(SexticError):
    """Interne Invariante verletzt (z.B. c <= 0 in der lokalen Schwelle)."""


class RetryExhaustedError(SexticError):
    """Keine generische Projektivität innerhalb des Retry-Budgets gefunden."""
