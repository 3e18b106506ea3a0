"""Published reference values that the library is compared against.

Kept as plain data so that comparisons never feed back into computation.
"""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class GenusTableRow:
    n: int
    q: int
    N: int
    genera: dict[int, int]  # i -> g_i as printed
    oesterle: int
    subcover: bool = False

    @property
    def key(self) -> str:
        return f"n={self.n},q={self.q}" + (",subcover" if self.subcover else "")


GENUS_TABLE: tuple[GenusTableRow, ...] = (
    GenusTableRow(3, 2, 17, {2: 2}, 2, subcover=True),
    GenusTableRow(3, 2, 33, {3: 9, 2: 6}, 6),
    GenusTableRow(3, 4, 1025, {3: 150, 2: 120}, 74),
    GenusTableRow(3, 8, 32769, {3: 2268, 2: 2016}, 903),
    GenusTableRow(3, 3, 244, {3: 48, 2: 36}, 26),
    GenusTableRow(3, 9, 59050, {3: 3600, 2: 3240}, 1374),
    GenusTableRow(3, 5, 3126, {3: 360, 2: 300}, 167),
    GenusTableRow(3, 7, 16808, {3: 1344, 2: 1176}, 560),
    GenusTableRow(3, 11, 161052, {3: 7920, 2: 7620}, 2808),
    GenusTableRow(4, 2, 129, {4: 49, 3: 42, 2: 28}, 18),
    GenusTableRow(4, 4, 16385, {4: 2646, 3: 2560, 2: 2016}, 667),
    GenusTableRow(4, 3, 2188, {4: 507, 3: 468, 2: 351}, 152),
    GenusTableRow(4, 5, 78126, {4: 9610, 3: 9300, 2: 7750}, 2071),
    GenusTableRow(5, 2, 513, {5: 225, 4: 210, 3: 180, 2: 120}, 57),
)

# Cells whose printed value disagrees with the closed form it is derived from.
GENUS_TABLE_MISPRINTS: frozenset[tuple[int, int, int]] = frozenset({(3, 11, 2), (4, 4, 3)})
GENUS_TABLE_OESTERLE_MISPRINTS: frozenset[tuple[int, int]] = frozenset({(4, 3)})


@dataclass(frozen=True)
class PrintedValue:
    value: float
    tol: float


@dataclass(frozen=True)
class OesterleExample:
    name: str
    q: int
    N: int
    m: int
    u: PrintedValue
    theta0: PrintedValue
    g_min: PrintedValue
    g_ceiling: int


OESTERLE_EXAMPLES: tuple[OesterleExample, ...] = (
    OesterleExample("q=8,N=17", 8, 17, 2, PrintedValue(0.1779, 5e-5), PrintedValue(1.1472, 5e-5), PrintedValue(1.414, 5e-3), 2),
    OesterleExample("q=8,N=33", 8, 33, 3, PrintedValue(0.47, 5e-3), PrintedValue(0.88735, 5e-5), PrintedValue(5.779, 5e-3), 6),
    OesterleExample("q=16,N=129", 16, 129, 3, PrintedValue(0.2857, 5e-5), PrintedValue(0.87752, 5e-5), PrintedValue(17.88, 5e-2), 18),
    OesterleExample("q=27,N=244", 27, 244, 3, PrintedValue(0.433, 5e-4), PrintedValue(0.90754, 5e-5), PrintedValue(25.16, 5e-2), 26),
)

# (example, quantity) pairs whose printed value does not solve the stated equations
OESTERLE_MISPRINTS: frozenset[tuple[str, str]] = frozenset(
    {
        ("q=8,N=33", "theta0"),
        ("q=8,N=33", "g_min"),
        ("q=16,N=129", "theta0"),
        ("q=27,N=244", "theta0"),
        ("q=27,N=244", "g_min"),
    }
)

# N/g of the two curves compared in the fixed-jump example: (d, k, q, N, g, printed N/g, tol)
FIXED_JUMP_EXAMPLES = (
    (4, 5, 8, 33, 6, 5.5, 5e-2),
    (8, 5, 8, 65, 14, 4.64, 5e-3),
)
