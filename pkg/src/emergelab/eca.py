"""Elementary (two-colour, nearest-neighbour) cellular automata.

Rules follow the standard 0..255 numbering: the neighbourhood (l, c, r) is
read as the 3-bit number 4l + 2c + r and looked up in the rule's output
table.  Rows live on an unbounded white background and are evolved exactly;
a fixed-width cyclic mode is available for rules whose background does not
stay white.

The row kernel packs cells into an arbitrary-precision integer and computes
a whole generation with shifts and bitwise ops.  A deliberately naive
per-cell kernel (`step_row_reference`, `step_cycle_reference`) is kept as an
independent cross-check.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .errors import EmergeLabError


class InvalidRule(EmergeLabError):
    """Rule number outside 0..255."""


class UnsupportedBackground(EmergeLabError):
    """The rule maps the all-white neighbourhood to black, so the infinite
    white background is not a fixed point and unbounded evolution is
    undefined.  Use the cyclic mode for these rules."""


class RowLimitExceeded(EmergeLabError):
    """Requested history is larger than the configured row cap."""


@dataclass(frozen=True)
class RuleTable:
    """A rule's number together with its 8-entry output table.

    outputs[v] is the next centre cell (0 or 1) for the neighbourhood whose
    3-bit value is v; outputs[v] equals bit v of `number`.
    """

    number: int
    outputs: tuple[int, int, int, int, int, int, int, int]

    @property
    def quiescent(self) -> bool:
        """True when the all-white background stays white."""
        return self.outputs[0] == 0


def parse_rule(number: int) -> RuleTable:
    """Expand a rule number 0..255 into its output table."""
    if not isinstance(number, int) or not 0 <= number <= 255:
        raise InvalidRule(f"rule number must be an integer in 0..255, got {number!r}")
    return RuleTable(number, tuple((number >> v) & 1 for v in range(8)))


def rule_number(outputs: Sequence[int]) -> int:
    """Inverse of parse_rule: rebuild the number from an output table."""
    if len(outputs) != 8:
        raise InvalidRule(f"output table must have 8 entries, got {len(outputs)}")
    return sum((1 << v) for v, out in enumerate(outputs) if out)


@dataclass(frozen=True)
class BitRow:
    """One generation of cells on an unbounded white background.

    Bit i of `bits` is the cell at coordinate `offset + i`; everything
    outside the stored span is white.  Canonical form: `bits` is odd (the
    first stored cell is black) and its top bit is black by construction,
    or the row is the canonical empty row (0, 0).
    """

    offset: int = 0
    bits: int = 0

    def __post_init__(self):
        if self.bits < 0:
            raise ValueError("bits must be non-negative")
        if self.bits == 0:
            if self.offset != 0:
                raise ValueError("canonical empty row has offset 0")
        elif self.bits & 1 == 0:
            raise ValueError("not canonical: first stored cell is white (use BitRow.make)")

    @classmethod
    def make(cls, offset: int, bits: int) -> "BitRow":
        """Build a row from any (offset, bits) pair, trimming white margins."""
        if bits < 0:
            raise ValueError("bits must be non-negative")
        if bits == 0:
            return cls()
        trailing = (bits & -bits).bit_length() - 1
        return cls(offset + trailing, bits >> trailing)

    @classmethod
    def single(cls, pos: int = 0) -> "BitRow":
        """A lone black cell."""
        return cls(pos, 1)

    @classmethod
    def from_cells(cls, cells: Iterable[int]) -> "BitRow":
        positions = set(cells)
        if not positions:
            return cls()
        lo = min(positions)
        bits = 0
        for p in positions:
            bits |= 1 << (p - lo)
        return cls(lo, bits)

    @classmethod
    def from_string(cls, text: str, offset: int = 0) -> "BitRow":
        """Parse a row from characters: '#' or '1' black, '.' or '0' white."""
        bits = 0
        for i, ch in enumerate(text):
            if ch in "#1":
                bits |= 1 << i
            elif ch not in ".0":
                raise ValueError(f"unexpected row character {ch!r}")
        return cls.make(offset, bits)

    @property
    def width(self) -> int:
        return self.bits.bit_length()

    @property
    def support(self) -> tuple[int, int]:
        """(lo, hi) coordinates of the stored span; (0, -1) for the empty row."""
        return self.offset, self.offset + self.width - 1

    def population(self) -> int:
        return self.bits.bit_count()

    def __getitem__(self, pos: int) -> int:
        rel = pos - self.offset
        if 0 <= rel < self.width:
            return (self.bits >> rel) & 1
        return 0

    def cells(self) -> Iterator[int]:
        """Coordinates of the black cells, left to right."""
        bits, base = self.bits, self.offset
        while bits:
            low = bits & -bits
            yield base + low.bit_length() - 1
            bits ^= low

    def to_string(self, lo: int | None = None, hi: int | None = None,
                  black: str = "#", white: str = ".") -> str:
        """Render the window [lo, hi] as text (defaults to the stored span)."""
        if lo is None:
            lo = self.offset
        if hi is None:
            hi = self.offset + max(self.width, 1) - 1
        return "".join(black if self[p] else white for p in range(lo, hi + 1))


def step_row(rule: RuleTable, row: BitRow) -> BitRow:
    """Advance one generation on the unbounded background (packed kernel).

    The next row covers one extra cell on each side; the result is trimmed
    back to canonical form.
    """
    if not rule.quiescent:
        raise UnsupportedBackground(
            f"rule {rule.number} flips the white background; use the cyclic mode")
    m = row.bits
    if m == 0:
        return row
    width = row.width + 2
    mask = (1 << width) - 1
    # Aligned neighbour planes for output cell at (row.offset - 1) + j:
    # left neighbour, centre, right neighbour.
    lplane = m << 2
    cplane = m << 1
    rplane = m
    out = 0
    for v in range(1, 8):
        if rule.outputs[v]:
            term = mask
            term &= lplane if v & 4 else ~lplane
            term &= cplane if v & 2 else ~cplane
            term &= rplane if v & 1 else ~rplane
            out |= term
    return BitRow.make(row.offset - 1, out & mask)


def step_row_reference(rule: RuleTable, row: BitRow) -> BitRow:
    """Naive per-cell kernel, kept deliberately simple as an oracle."""
    if not rule.quiescent:
        raise UnsupportedBackground(
            f"rule {rule.number} flips the white background; use the cyclic mode")
    if row.bits == 0:
        return row
    lo, hi = row.support
    cells = []
    for p in range(lo - 1, hi + 2):
        v = 4 * row[p - 1] + 2 * row[p] + row[p + 1]
        if rule.outputs[v]:
            cells.append(p)
    return BitRow.from_cells(cells)


@dataclass(frozen=True)
class EcaHistory:
    """A rule plus the stacked generations rows[0..t] it produced."""

    rule: RuleTable
    rows: tuple[BitRow, ...]

    def __len__(self) -> int:
        return len(self.rows)

    def bounds(self) -> tuple[int, int]:
        """Tightest (lo, hi) window covering every row's support."""
        spans = [r.support for r in self.rows if r.bits]
        if not spans:
            return 0, 0
        return min(s[0] for s in spans), max(s[1] for s in spans)

    def to_text(self, lo: int | None = None, hi: int | None = None) -> list[str]:
        """One '.'/'#' line per generation over a common window."""
        if lo is None or hi is None:
            blo, bhi = self.bounds()
            lo = blo if lo is None else lo
            hi = bhi if hi is None else hi
        return [row.to_string(lo, hi) for row in self.rows]


def evolve(rule: RuleTable, seed: BitRow, steps: int, max_rows: int = 10_000) -> EcaHistory:
    """Evolve `seed` for `steps` generations, keeping every row."""
    if steps < 0:
        raise ValueError(f"steps must be >= 0, got {steps}")
    if steps + 1 > max_rows:
        raise RowLimitExceeded(
            f"{steps + 1} rows exceed the cap of {max_rows}; raise max_rows to allow this")
    rows = [seed]
    row = seed
    for _ in range(steps):
        row = step_row(rule, row)
        rows.append(row)
    return EcaHistory(rule, tuple(rows))


def center_column(rule: RuleTable, steps: int, seed: BitRow | None = None) -> list[int]:
    """Cell 0 of generations 0..steps (seed defaults to a single black cell).

    Iterates without keeping history, so long columns stay cheap.
    """
    if steps < 0:
        raise ValueError(f"steps must be >= 0, got {steps}")
    row = BitRow.single(0) if seed is None else seed
    column = [row[0]]
    for _ in range(steps):
        row = step_row(rule, row)
        column.append(row[0])
    return column


def step_cycle(rule: RuleTable, bits: int, width: int) -> int:
    """One generation on a ring of `width` cells (packed kernel).

    Bit i of `bits` is cell i; neighbours wrap around, so all 256 rules are
    supported regardless of what they do to a white background.
    """
    if width < 1:
        raise ValueError(f"ring width must be >= 1, got {width}")
    mask = (1 << width) - 1
    bits &= mask
    lplane = ((bits << 1) | (bits >> (width - 1))) & mask
    rplane = ((bits >> 1) | ((bits & 1) << (width - 1))) & mask
    cplane = bits
    out = 0
    for v in range(8):
        if rule.outputs[v]:
            term = mask
            term &= lplane if v & 4 else ~lplane
            term &= cplane if v & 2 else ~cplane
            term &= rplane if v & 1 else ~rplane
            out |= term
    return out & mask


def step_cycle_reference(rule: RuleTable, bits: int, width: int) -> int:
    """Naive per-cell ring kernel (oracle for step_cycle)."""
    if width < 1:
        raise ValueError(f"ring width must be >= 1, got {width}")
    cell = [(bits >> i) & 1 for i in range(width)]
    out = 0
    for i in range(width):
        v = 4 * cell[(i - 1) % width] + 2 * cell[i] + cell[(i + 1) % width]
        if rule.outputs[v]:
            out |= 1 << i
    return out


def evolve_cycle(rule: RuleTable, bits: int, width: int, steps: int) -> list[int]:
    """Ring evolution keeping every generation (generation 0 included)."""
    if steps < 0:
        raise ValueError(f"steps must be >= 0, got {steps}")
    states = [bits & ((1 << width) - 1)]
    for _ in range(steps):
        states.append(step_cycle(rule, states[-1], width))
    return states
