"""
Codec graph6 (format court uniquement, n <= 62).

L'encodage et le décodage passent par networkx. Avant le décodage, une passe de
validation localise l'octet fautif: caractère hors 63..126, préfixe long,
longueur incorrecte ou bits de remplissage non nuls.
"""
import networkx as nx

from app.exceptions import GraphFormatError, GuardError
from app.graph import Graph

HEADER = ">>graph6<<"
MAX_N = 62


def to_graph6(g: Graph) -> str:
    """Encodage sous l'étiquetage courant (pas de canonisation)"""
    if g.n < 1:
        raise GuardError("graph6 needs at least one vertex")
    if g.n > MAX_N:
        raise GuardError(f"graph6 long form is not supported (n={g.n} > {MAX_N})")
    return nx.to_graph6_bytes(g.to_networkx(), header=False).decode("ascii").strip()


def _validate(record: str, base: int) -> None:
    if not record:
        raise GraphFormatError("empty graph6 record", offset=base)

    values = []
    for i, ch in enumerate(record):
        code = ord(ch)
        if code < 63 or code > 126:
            raise GraphFormatError(f"character {ch!r} outside 63..126", offset=base + i)
        values.append(code - 63)

    n = values[0]
    if n == 63:
        raise GraphFormatError("long-form size prefix is not supported", offset=base)
    pairs = n * (n - 1) // 2
    expected = (pairs + 5) // 6
    body = values[1:]
    if len(body) != expected:
        raise GraphFormatError(
            f"expected {expected} data bytes for n={n}, got {len(body)}",
            offset=base + 1 + min(len(body), expected),
        )
    padding = expected * 6 - pairs
    if expected and body[-1] & ((1 << padding) - 1):
        raise GraphFormatError("nonzero padding bits", offset=base + expected)


def from_graph6(text: str) -> Graph:
    record = text.strip()
    base = 0
    if record.startswith(HEADER):
        record = record[len(HEADER):]
        base = len(HEADER)
    _validate(record, base)
    return Graph.from_networkx(nx.from_graph6_bytes(record.encode("ascii")))
