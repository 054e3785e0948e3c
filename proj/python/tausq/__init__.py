"""Targeted high average utility sequential pattern mining.

Patterns and targets use the text syntax of the command-line tool: item
labels separated by spaces, itemsets separated by ``-1`` (``"3 4 -1 5"``).
Average utilities come back as :class:`fractions.Fraction`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Union

from . import _tausq
from ._tausq import Database, OracleBudgetExceeded, ParseError, database_from_text, generate, load_database

__all__ = [
    "Database",
    "Discrepancy",
    "MinedPattern",
    "OracleBudgetExceeded",
    "ParseError",
    "database_from_text",
    "generate",
    "load_database",
    "mine",
    "run_cli",
    "verify",
]

XiLike = Union[str, int, float, Fraction]


@dataclass(frozen=True)
class MinedPattern:
    pattern: str
    utility: int
    au: Fraction


@dataclass(frozen=True)
class Discrepancy:
    kind: str
    pattern: str
    miner_au: Optional[Fraction]
    oracle_au: Optional[Fraction]


def _xi_text(xi: XiLike) -> str:
    # floats go through their shortest repr so 0.1 stays 1/10
    if isinstance(xi, Fraction):
        return f"{xi.numerator}/{xi.denominator}"
    return str(xi)


def _frac(t):
    return None if t is None else Fraction(t[0], t[1])


def mine(
    db: Database,
    target: str,
    xi: XiLike,
    *,
    bound: str = "srau",
    length_mode: str = "both",
    mode: str = "targeted",
    disabled_strategies: Iterable[int] = (),
    max_len: Optional[int] = None,
):
    """Returns ``(patterns, stats)``; patterns are sorted, stats is a dict."""
    res = _tausq.mine(db, target, _xi_text(xi), bound, length_mode, mode, list(disabled_strategies), max_len)
    pats = [MinedPattern(p, u, _frac(au)) for p, u, au in res["patterns"]]
    return pats, res["stats"]


def verify(db: Database, target: str, xi: XiLike, *, max_len: int = 8, bound: str = "srau"):
    """Compares the miner with the brute-force oracle. Empty list means agreement."""
    return [
        Discrepancy(k, p, _frac(m), _frac(o)) for k, p, m, o in _tausq.verify(db, target, _xi_text(xi), max_len, bound)
    ]


def run_cli(args: Iterable[str]):
    """Runs the command-line driver in-process; returns ``(exit_code, stdout, stderr)``."""
    return _tausq.run_cli([str(a) for a in args])
