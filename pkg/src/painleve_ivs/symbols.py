"""Symbol universe shared by every exact expression in the package.

All polynomials and rational functions refer to symbols by integer index
into a single process-wide, append-only registry.  Indices therefore give
a stable total order on symbols:

    dynamical variables  <  time  <  parameters  <  auxiliary symbols

The dynamical block (q1, q2, p1, p2), the time t and the parameter block
(a0..a5, eta) are registered up front in that order.  Everything else
(chart coordinates, base-point markers, series constants) is appended on
first use and keeps its index for the lifetime of the process.

``a0..a5`` are the root parameters (printed as alpha_i in LaTeX) and
``eta`` the weight parameter; the normalization a0+...+a5 = 1 is *not*
built into the arithmetic — it is imposed only by the dedicated
``*_mod_relation`` equality helpers.
"""

from __future__ import annotations

import threading
from fractions import Fraction

__all__ = [
    "SymbolUniverse",
    "UNIVERSE",
    "sym",
    "name_of",
    "latex_of",
    "Q1",
    "Q2",
    "P1",
    "P2",
    "T",
    "ALPHA",
    "ETA",
    "DYNAMICAL",
    "PARAMETERS",
]


class SymbolUniverse:
    """Append-only registry mapping symbol names to integer indices."""

    def __init__(self) -> None:
        self._names: list[str] = []
        self._latex: list[str] = []
        self._index: dict[str, int] = {}
        self._lock = threading.Lock()

    def register(self, name: str, latex: str | None = None) -> int:
        """Return the index of ``name``, registering it if new.

        Re-registering an existing name returns the original index (the
        LaTeX form of an existing symbol is never changed).
        """
        with self._lock:
            idx = self._index.get(name)
            if idx is not None:
                return idx
            idx = len(self._names)
            self._names.append(name)
            self._latex.append(latex if latex is not None else name)
            self._index[name] = idx
            return idx

    def index(self, name: str) -> int:
        """Index of an already-registered symbol (KeyError if unknown)."""
        return self._index[name]

    def __contains__(self, name: str) -> bool:
        return name in self._index

    def name(self, idx: int) -> str:
        return self._names[idx]

    def latex(self, idx: int) -> str:
        return self._latex[idx]

    def __len__(self) -> int:
        return len(self._names)


#: The process-wide universe.  All expressions share it.
UNIVERSE = SymbolUniverse()


def sym(name: str, latex: str | None = None) -> int:
    """Shorthand for ``UNIVERSE.register``."""
    return UNIVERSE.register(name, latex)


def name_of(idx: int) -> str:
    return UNIVERSE.name(idx)


def latex_of(idx: int) -> str:
    return UNIVERSE.latex(idx)


# Core blocks, registered in the canonical order.
Q1 = sym("q1", "q_1")
Q2 = sym("q2", "q_2")
P1 = sym("p1", "p_1")
P2 = sym("p2", "p_2")
T = sym("t", "t")
ALPHA = tuple(sym(f"a{i}", f"\\alpha_{i}") for i in range(6))
ETA = sym("eta", "\\eta")

#: Auxiliary block: series base point and base-coordinate markers.
T0 = sym("t0", "t_0")
B0 = sym("b0", "b_0")
D0 = sym("d0", "d_0")

DYNAMICAL = (Q1, Q2, P1, P2)
PARAMETERS = ALPHA + (ETA,)

#: Convenient exact constants.
ZERO = Fraction(0)
ONE = Fraction(1)
