"""
Erreurs de la bibliothèque heavycycle.

Toutes les erreurs portent un `detail` lisible, renvoyé tel quel par l'API
(voir app.middleware) et affiché par la CLI.
"""
from typing import Optional, Tuple


class HeavyCycleError(Exception):
    """Erreur de base"""

    def __init__(self, detail: str):
        super().__init__(detail)
        self.detail = detail


class GraphError(HeavyCycleError, ValueError):
    """Entrée invalide: sommet hors limites, boucle, paire dégénérée..."""


class GraphFormatError(GraphError):
    """Enregistrement graph6 mal formé"""

    def __init__(self, detail: str, offset: Optional[int] = None):
        if offset is not None:
            detail = f"{detail} (byte offset {offset})"
        super().__init__(detail)
        self.offset = offset


class InvalidSequenceError(GraphError):
    """Cycle, o-cycle ou o-chemin invalide; `pair` est la première paire fautive"""

    def __init__(self, detail: str, pair: Optional[Tuple[int, int]] = None):
        super().__init__(detail)
        self.pair = pair


class GuardError(GraphError):
    """Garde de complexité dépassée"""


class ExtremalParamsError(GraphError):
    """Paramètres hors des contraintes de construction"""


class InvariantViolation(HeavyCycleError, RuntimeError):
    """Un invariant garanti par la théorie a échoué: à traiter comme un bug"""
